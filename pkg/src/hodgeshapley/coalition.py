"""Coalitions as bitmask integers over a fixed player set.

A coalition over ``n`` players is an ``int`` in ``[0, 2**n)`` whose set
bits are the 0-indexed members.  The bitset value doubles as the canonical
vertex index of the coalition hypercube, so enumeration order, file
formats, and solver orderings all agree.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import CapacityError, SpecFileError

# Hard cap on the player count: 2**24 vertices / 24 * 2**23 edges keeps
# float iterative solves feasible on a desktop.  Exact-rational backends
# hit practical limits far earlier (around n = 12); that is documented,
# not enforced.
PLAYER_CAP = 24

Coalition = int


def check_player_count(n: int) -> None:
    if not 0 <= n <= PLAYER_CAP:
        raise CapacityError(f"player count {n} outside supported range [0, {PLAYER_CAP}]")


def enumerate_coalitions(n: int) -> range:
    """All 2**n coalitions in ascending bitset order."""
    check_player_count(n)
    return range(1 << n)


def size(S: Coalition) -> int:
    """Number of members |S|."""
    return S.bit_count()


def members(S: Coalition) -> tuple[int, ...]:
    """Sorted member indices of S."""
    out = []
    while S:
        low = S & -S
        out.append(low.bit_length() - 1)
        S ^= low
    return tuple(out)


def from_members(players: Iterable[int], n: int | None = None) -> Coalition:
    """Coalition containing the given 0-indexed players."""
    S = 0
    for p in players:
        if p < 0 or (n is not None and p >= n):
            raise ValueError(f"player index {p} outside [0, {n})")
        S |= 1 << p
    return S


def grand_coalition(n: int) -> Coalition:
    return (1 << n) - 1


def distance(S: Coalition, T: Coalition) -> int:
    """Hamming distance |S symmetric-difference T|."""
    return (S ^ T).bit_count()


def check_permutation(sigma: Sequence[int]) -> None:
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"{sigma!r} is not a permutation of 0..{n - 1}")


def apply_permutation(sigma: Sequence[int], S: Coalition) -> Coalition:
    """Image sigma(S) = {sigma[j] : j in S}."""
    check_permutation(sigma)
    out = 0
    for j in members(S):
        out |= 1 << sigma[j]
    return out


def parse_coalition(text: str, n: int | None = None) -> Coalition:
    """Parse a serialized member list such as "[0,2]" (0-indexed)."""
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise SpecFileError(f"coalition literal must look like '[0,2]', got {text!r}")
    body = t[1:-1].strip()
    if not body:
        return 0
    try:
        players = [int(tok) for tok in body.split(",")]
    except ValueError:
        raise SpecFileError(f"non-integer player index in coalition {text!r}") from None
    S = from_members(players, n)
    if len(players) != size(S):
        raise SpecFileError(f"repeated player index in coalition {text!r}")
    return S


def coalition_key(S: Coalition) -> str:
    """Canonical serialized form: sorted 0-indexed member list, no spaces."""
    return "[" + ",".join(str(p) for p in members(S)) + "]"


def coalition_label(S: Coalition, names: Sequence[str] | None = None) -> str:
    """Human-readable label: member names, or 1-indexed numbers like {1,3}."""
    if S == 0:
        return "{}"
    if names is not None:
        parts = [names[p] for p in members(S)]
    else:
        parts = [str(p + 1) for p in members(S)]
    return "{" + ",".join(parts) + "}"

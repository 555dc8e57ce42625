"""Exact rational solvers for the pinned Laplacian systems.

Two kernels sit behind the dense rational backend:

* ``FractionLU`` -- textbook LU over ``fractions.Fraction``.  Factor once,
  solve many right-hand sides.  Practical up to a few hundred unknowns.

* ``DixonSolver`` -- p-adic lifting for integer systems.  One modular
  matrix inverse (numpy, word-sized arithmetic), then each solve lifts a
  p-adic digit expansion of the solution and recovers exact fractions by
  rational reconstruction.  Every returned solution is verified against
  the exact integer matrix, so heuristic digit-count bounds cannot give
  silently wrong answers; on a shortfall the digit count is doubled and
  the lift rerun.

Keeping the matrix integral is the caller's job (scale each row by its
denominator lcm; row scaling leaves the solution unchanged).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

# Primes just above 2**25: small enough that Gauss-Jordan stays in int64
# and the split matvec stays exact in float64, large enough that lifting
# needs few digits.
_PRIMES = (33554467, 33554473, 33554501, 33554509, 33554519)
_SPLIT = 1 << 13
_MAX_UNKNOWNS = 1 << 12  # dense modular inverse beyond this is impractical


class SingularMatrixError(ValueError):
    pass


class FractionLU:
    """LU factorization (row-pivoted, exact) of a square rational matrix."""

    def __init__(self, rows: list[list[Fraction]]):
        m = len(rows)
        A = [list(map(Fraction, row)) for row in rows]
        perm = list(range(m))
        for k in range(m):
            piv = next((r for r in range(k, m) if A[r][k] != 0), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            if piv != k:
                A[k], A[piv] = A[piv], A[k]
                perm[k], perm[piv] = perm[piv], perm[k]
            inv_piv = 1 / A[k][k]
            for r in range(k + 1, m):
                if A[r][k] == 0:
                    continue
                f = A[r][k] * inv_piv
                A[r][k] = f  # store the multiplier in the eliminated slot
                Ar, Ak = A[r], A[k]
                for c in range(k + 1, m):
                    if Ak[c]:
                        Ar[c] -= f * Ak[c]
        self._lu = A
        self._perm = perm
        self._m = m

    def solve(self, b: list[Fraction]) -> list[Fraction]:
        m = self._m
        A = self._lu
        y = [b[self._perm[r]] for r in range(m)]
        for r in range(m):
            Ar = A[r]
            acc = y[r]
            for c in range(r):
                if Ar[c] and y[c]:
                    acc -= Ar[c] * y[c]
            y[r] = acc
        for r in range(m - 1, -1, -1):
            Ar = A[r]
            acc = y[r]
            for c in range(r + 1, m):
                if Ar[c] and y[c]:
                    acc -= Ar[c] * y[c]
            y[r] = acc / Ar[r]
        return y


def _modular_inverse_matrix(A_mod: np.ndarray, p: int) -> np.ndarray | None:
    """Inverse of A mod p by Gauss-Jordan; None when singular mod p."""
    m = A_mod.shape[0]
    M = np.concatenate([A_mod % p, np.eye(m, dtype=np.int64)], axis=1)
    for k in range(m):
        nz = np.nonzero(M[k:, k])[0]
        if len(nz) == 0:
            return None
        piv = k + int(nz[0])
        if piv != k:
            M[[k, piv]] = M[[piv, k]]
        M[k] = (M[k] * pow(int(M[k, k]), -1, p)) % p
        col = M[:, k].copy()
        col[k] = 0
        M -= np.outer(col, M[k])
        M %= p
    return M[:, m:]


class DixonSolver:
    """Exact rational solves of an integer system via p-adic lifting."""

    def __init__(self, A_int: np.ndarray):
        A_int = np.asarray(A_int, dtype=np.int64)
        m = A_int.shape[0]
        if m > _MAX_UNKNOWNS:
            raise ValueError(f"system too large for the lifting solver ({m} unknowns)")
        max_abs = int(np.max(np.abs(A_int))) if m else 0
        row_nnz = int(np.max(np.count_nonzero(A_int, axis=1))) if m else 0
        self._m = m
        # int64 safety of the residual update A @ x with x < p
        limit = (1 << 62) // max(1, max_abs * max(1, row_nnz))
        usable = [p for p in _PRIMES if p <= limit]
        if not usable:
            raise ValueError("matrix entries too large for word-sized lifting")
        C = None
        for p in usable:
            C = _modular_inverse_matrix(A_int, p)
            if C is not None:
                self.p = p
                break
        if C is None:
            raise SingularMatrixError("matrix is singular (or singular modulo all probe primes)")
        self._C_hi = (C // _SPLIT).astype(np.float64)
        self._C_lo = (C % _SPLIT).astype(np.float64)
        from scipy.sparse import csr_matrix
        self._A_sparse = csr_matrix(A_int)
        # Hadamard bound: log2 |det A| <= sum of row-norm logs
        if max_abs and max_abs * max_abs * m < (1 << 62):
            sq = (A_int * A_int).sum(axis=1)
        else:
            sq = (A_int.astype(object) ** 2).sum(axis=1)
        self._log2_det = sum(0.5 * int(x).bit_length() for x in sq)

    def _matvec_mod(self, r_mod: np.ndarray) -> np.ndarray:
        p = self.p
        hi = self._C_hi @ r_mod
        lo = self._C_lo @ r_mod
        return (hi.astype(np.int64) % p * _SPLIT + lo.astype(np.int64)) % p

    def _lift(self, b: list[int], steps: int) -> list[Fraction] | None:
        p, m = self.p, self._m
        r = list(b)
        digits = []
        for _ in range(steps):
            r_mod = np.array([x % p for x in r], dtype=np.float64)
            x = self._matvec_mod(r_mod)
            digits.append(x)
            Ax = self._A_sparse @ x
            r = [(ri - int(axi)) // p for ri, axi in zip(r, Ax)]
        M = p ** steps
        bound = isqrt(M // 2)
        # combine digits per entry (Horner from the top digit down)
        sol = []
        den = 1
        for j in range(m):
            acc = 0
            for i in range(steps - 1, -1, -1):
                acc = acc * p + int(digits[i][j])
            acc %= M
            # try the running common denominator first, else reconstruct
            y = acc * den % M
            if y > M - bound:
                y -= M
            if abs(y) <= bound:
                sol.append(Fraction(y, den))
                continue
            nd = _rational_reconstruct(acc, M, bound)
            if nd is None:
                return None
            num, d = nd
            den = den * d // gcd(den, d)
            sol.append(Fraction(num, d))
        return sol

    def solve(self, b: list[int]) -> list[Fraction]:
        max_b = max((abs(x) for x in b), default=1)
        log2_needed = 2 * self._log2_det + max(1, max_b).bit_length() + self._m.bit_length() + 30
        steps = int(log2_needed / np.log2(self.p)) + 2
        for _ in range(6):
            sol = self._lift(b, steps)
            if sol is not None and self._check(sol, b):
                return sol
            steps *= 2
        raise ArithmeticError("p-adic lifting failed to produce a verified solution")

    def _check(self, x: list[Fraction], b: list[int]) -> bool:
        A = self._A_sparse
        indptr, indices, data = A.indptr, A.indices, A.data
        for r in range(self._m):
            acc = Fraction(0)
            for k in range(indptr[r], indptr[r + 1]):
                acc += int(data[k]) * x[indices[k]]
            if acc != b[r]:
                return False
        return True


def _rational_reconstruct(x: int, M: int, bound: int):
    """n/d with n = x*d mod M, |n| <= bound, 0 < d <= bound; None if impossible."""
    r0, r1 = M, x % M
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0:
        return None
    n, d = (r1, s1) if s1 > 0 else (-r1, -s1)
    if d > bound or gcd(n if n >= 0 else -n, d) != 1:
        return None
    return n, d

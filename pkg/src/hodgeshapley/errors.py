"""Exception types shared across the package."""


class HodgeShapleyError(Exception):
    """Base class for all package-specific errors."""


class CapacityError(HodgeShapleyError, ValueError):
    """A player count or enumeration size exceeds a supported bound."""


class InfeasibilityError(HodgeShapleyError, ValueError):
    """A coalition graph violates connectivity or reachability requirements.

    ``coalition`` carries the offending vertex bitset when one is known.
    """

    def __init__(self, message, coalition=None):
        super().__init__(message)
        self.coalition = coalition


class DomainError(HodgeShapleyError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ConfigError(HodgeShapleyError, ValueError):
    """A solver configuration is inconsistent with its inputs."""


class ConvergenceError(HodgeShapleyError, RuntimeError):
    """An iterative solve failed to reach its tolerance.

    ``residual_history`` holds the relative residual after each iteration.
    """

    def __init__(self, message, residual_history=()):
        super().__init__(message)
        self.residual_history = list(residual_history)


class SpecFileError(HodgeShapleyError, ValueError):
    """A game/constraint/weight spec file failed to parse or validate.

    ``location`` describes where in the file the problem sits (a JSON key,
    coalition literal, or similar).
    """

    def __init__(self, message, location=None):
        super().__init__(message if location is None else f"{location}: {message}")
        self.location = location

"""Exception types shared across the package."""


class MissingPolicyError(KeyError):
    """A behavior policy has no usable entry for a required information set."""


class GameValidationError(ValueError):
    """A game implementation violates the state-walker contract."""


class LPSolverError(RuntimeError):
    """The zero-sum linear program could not be solved reliably."""

"""Exception types shared across the package."""


class LengthMismatchError(ValueError):
    """An input bit string does not match the expected arity."""


class ModulusMismatchError(ValueError):
    """Two objects that must share a modulus do not."""


class ZeroResidueError(ValueError):
    """Goodness is queried for b == 0 (mod m), where it is undefined."""


class TooLargeError(ValueError):
    """An exhaustive operation was requested beyond its tractability guard."""


class NonPowerOfTwoError(ValueError):
    """A branch-register size that must be a power of two is not."""


class NotNormalError(ValueError):
    """A subgroup fails closure, inverse, or normality checks."""


class PromiseViolation(ValueError):
    """An encoded input falls outside the promised value range."""


class InvalidErrorRateError(ValueError):
    """An error rate outside the open interval (0, 1)."""

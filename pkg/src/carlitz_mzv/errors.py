"""Exception types shared across the package."""


class CarlitzError(Exception):
    """Base class for all errors raised by this package."""


class InsufficientPrecisionError(CarlitzError):
    """A series operation needed more known coefficients than available."""


class LatticeCapError(CarlitzError):
    """A negative twist would push the exponent lattice past the configured cap."""


class NonconvergentEvaluationError(CarlitzError):
    """eval at T=t could not certify that the omitted tail is below precision."""


class BudgetExceededError(CarlitzError):
    """A brute-force enumeration would exceed its configured budget."""


class SideConditionError(CarlitzError):
    """Parameters violate the side conditions of an identity."""

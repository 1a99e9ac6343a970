"""Exception types shared across the package."""


class DeconvError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(DeconvError, ValueError):
    """Malformed data: non-finite values, length mismatches, bad indices."""


class ConfigError(DeconvError, ValueError):
    """A run configuration that cannot be executed as given."""


class InfeasibleAdjustmentError(DeconvError, RuntimeError):
    """A boundary policy that needs in-support values found none."""


class DegenerateReferenceError(DeconvError, ValueError):
    """Normal reference line requested but var(z) <= var(x)."""


class CutLineError(DeconvError, ValueError):
    """Exact three-point analysis hit a tie, i.e. the point lies on a cut line."""

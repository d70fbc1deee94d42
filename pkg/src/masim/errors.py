"""Exception types shared across the package."""


class MasimError(Exception):
    """Base class for all package errors."""


class ConfigError(MasimError):
    """Invalid or inconsistent experiment configuration."""


class NonIntegerIndexSpacing(MasimError):
    """min_spacing * num_points / region_length is not an integer."""


class InvalidGeometry(MasimError):
    """Impossible grid geometry, e.g. min_spacing >= region_length."""


class IndexOutOfRange(MasimError):
    """Sampling index outside the valid 1..num_points range."""


class SingularSystem(MasimError):
    """Regularized Gram matrix is numerically singular."""


class BracketFailure(MasimError):
    """No bracketing interval for the power bisection (degenerate channel)."""


class ZeroChannel(MasimError):
    """Channel vector has zero norm; beamformer direction undefined."""


class InfeasibleGeometry(MasimError):
    """No index vector can satisfy the spacing constraint."""


class InfeasibleInitial(MasimError):
    """Starting index vector violates the spacing constraint."""


class LayoutDoesNotFit(MasimError):
    """Centered fixed-position layout cannot be placed on the grid."""


class SearchSpaceTooLarge(MasimError):
    """Exhaustive enumeration guard tripped."""


class UnknownPreset(MasimError):
    """No experiment preset registered under that name."""

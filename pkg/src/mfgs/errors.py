"""Exception hierarchy shared by all modules."""


class MfgsError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(MfgsError, ValueError):
    """Invalid scan configuration or command-line input."""


class PoleError(MfgsError, ValueError):
    """Argument within tolerance of a pole of a special function."""


class SingularityError(MfgsError, ValueError):
    """Argument at a genuine singularity (e.g. coth at 0)."""


class QuadratureError(MfgsError, ArithmeticError):
    """Adaptive quadrature failed to reach the requested accuracy."""


class ResidueError(MfgsError, ArithmeticError):
    """A quantity that must be real carries a significant imaginary part."""


class ResonanceError(MfgsError, ValueError):
    """Frequency coincides with the single-mode resonance."""


class CommutingCouplingError(MfgsError, ValueError):
    """Coupling operator commutes with the system Hamiltonian (|r| = 0)."""


class SingularDenominatorError(MfgsError, ArithmeticError):
    """Steady-state normalisation vanishes."""


class ConvergenceError(MfgsError, ArithmeticError):
    """Iterative eigensolver exhausted its iteration budget."""


class TruncationError(MfgsError, ArithmeticError):
    """Fock cutoff could not be converged below the maximum size."""

"""Exception types shared across the package."""


class SpectralZetaError(Exception):
    """Base class for all package-specific failures."""


class DomainError(SpectralZetaError, ValueError):
    """Input outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Gamma function evaluated at a non-positive integer."""


class ExcludedLambda(DomainError):
    """Angular parameter sits on the excluded set (zero mode or degeneracy)."""


class DivergentSeries(SpectralZetaError, ValueError):
    """Series is non-terminating with non-positive convergence margin."""


class NoConvergence(SpectralZetaError, RuntimeError):
    """Requested tolerance not reached within the configured budget."""


class SingularCoefficient(SpectralZetaError, ZeroDivisionError):
    """Trigonometric coefficient ratio has a vanishing denominator."""


class IntegrationFailure(SpectralZetaError, RuntimeError):
    """ODE integrator failed to meet its local tolerance."""


class StiffnessError(IntegrationFailure):
    """ODE integration abandoned because of step-size collapse."""


class BracketingFailure(SpectralZetaError, RuntimeError):
    """Eigenvalue search could not bracket a sign change."""


class DiscretizationError(SpectralZetaError, RuntimeError):
    """Collocation matrix produced an unusable spectrum."""


class InsufficientLevels(SpectralZetaError, ValueError):
    """Not enough spectrum levels for the requested operation."""


class PoorFit(SpectralZetaError, RuntimeError):
    """Tail-model fit residual above the acceptance threshold."""


class ZeroEnergy(SpectralZetaError, ValueError):
    """Spectrum contains a (near) zero energy; inverse powers undefined."""


class TruncationDominated(SpectralZetaError, ValueError):
    """Expansion point too large for the truncated series order."""


class UnsupportedParity(SpectralZetaError, ValueError):
    """Fused rule with nonzero linear coupling requires odd sector index."""


class QuadratureFailure(SpectralZetaError, RuntimeError):
    """Singular quadrature did not reach the requested accuracy."""

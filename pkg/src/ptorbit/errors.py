"""Exception hierarchy shared by every ptorbit module."""


class PtorbitError(Exception):
    """Base class for numerical failures raised by the library."""


class InvalidArgument(PtorbitError, ValueError):
    pass


class PoleProximityError(PtorbitError):
    """Evaluation point too close to a pole of the potential."""


class BranchStepError(PtorbitError):
    """Branch tracking cannot decide between candidates; refine the grid."""


class DegenerateError(PtorbitError):
    """Degenerate energy (E = 0, c(E) = 0, or a double root)."""


class OffShellError(PtorbitError):
    """Phase point does not lie on the requested energy shell."""

    def __init__(self, residual, message=None):
        self.residual = residual
        super().__init__(message or f"state is off-shell: |H - E| = {residual:.3e}")


class UnsupportedCase(PtorbitError):
    pass


class InsufficientData(PtorbitError):
    pass


class IntegrationHalt(PtorbitError):
    """Integrator stopped early; ``partial`` holds the samples computed so far."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DivergenceError(PtorbitError):
    pass

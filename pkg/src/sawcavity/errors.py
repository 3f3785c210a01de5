"""Exception hierarchy shared across the toolkit.

Two failure families matter to callers and to the command line front
end: bad inputs (rejected before any real work happens) and
computations that fail on valid-looking inputs. The CLI maps them to
exit codes 1 and 2 respectively.
"""


class SawCavityError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(SawCavityError, ValueError):
    """Input rejected: out of domain, inconsistent, or malformed."""


class ConfigError(ValidationError):
    """Configuration file rejected; carries per-field messages."""

    def __init__(self, field_errors):
        self.field_errors = list(field_errors)
        super().__init__("; ".join(self.field_errors))


class ComputationError(SawCavityError, RuntimeError):
    """A computation failed on inputs that passed validation."""


class FitError(ComputationError):
    """Least-squares fit did not converge; carries the residual report."""

    def __init__(self, message, residual_rms=None):
        self.residual_rms = residual_rms
        if residual_rms is not None:
            message = f"{message} (residual rms {residual_rms:.6g})"
        super().__init__(message)

"""Exception hierarchy shared across the package."""


class FlexiFlowError(Exception):
    """Base class for all package-specific errors."""


class LoadError(FlexiFlowError):
    """Program image or manifest cannot be placed into machine memory."""


class AlignmentError(FlexiFlowError):
    """An address that must be 4-byte aligned is not."""


class ConfigError(FlexiFlowError):
    """Invalid model parameters or malformed configuration input."""


class InfeasibleScenarioError(FlexiFlowError):
    """Deployment scenario violates the duty-cycle constraint (runtime * frequency > 1)."""


class UndefinedRatioError(FlexiFlowError):
    """A ratio was requested whose denominator evaluates to zero."""

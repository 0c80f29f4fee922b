"""Exception hierarchy shared by every NOONFLOW module.

Kernels raise these; only the CLI turns them into exit codes.
"""


class NoonflowError(Exception):
    """Base class for all library errors"""


class DomainError(NoonflowError, ValueError):
    """Argument outside the operation's mathematical domain"""


class CapacityError(NoonflowError):
    """Dense representation would exceed the memory guard"""


class DegenerateStateError(NoonflowError):
    """Coherence block carries no weight, the SLD is undefined"""


class UnsupportedDecompositionError(NoonflowError):
    """Channel family has no shipped Lindblad realization"""


class PoleError(NoonflowError):
    """Time-dependent rate evaluated inside a flagged pole"""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class IntegrationError(NoonflowError):
    """Master-equation integration lost trace beyond tolerance"""

    def __init__(self, message, step=None, t=None):
        super().__init__(message)
        self.step = step
        self.t = t


class ConfigError(NoonflowError):
    """Scenario file could not be parsed or validated"""

    def __init__(self, message, line=None):
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)
        self.line = line


class PhysicalityError(NoonflowError):
    """Channel snapshot failed the complete-positivity test in strict mode"""

    def __init__(self, message, t=None, min_eigenvalue=None):
        super().__init__(message)
        self.t = t
        self.min_eigenvalue = min_eigenvalue

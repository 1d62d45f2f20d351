"""Exception types raised across the package."""


class WristError(Exception):
    """Base class for all package errors."""


class DomainError(WristError, ValueError):
    pass


class ConfigError(WristError, ValueError):
    pass


class SimulationError(WristError, RuntimeError):
    """A closed-loop run produced a non-finite state."""


class IntegrationError(SimulationError):
    pass


class StabilityError(SimulationError):
    """Explicit time step exceeds the stability bound of the grid."""


class SingularDynamics(WristError, ZeroDivisionError):
    pass


class EmptyLog(WristError, ValueError):
    pass


class NotAStep(WristError, ValueError):
    pass


class MismatchedScenarios(ConfigError):
    pass


class UnknownParameter(ConfigError, KeyError):
    pass

"""Exception hierarchy shared by every module in the package."""


class AdhmKitError(Exception):
    """Base class for all errors raised by adhmkit."""


class ShapeMismatch(AdhmKitError, ValueError):
    pass


class AmbientMismatch(ShapeMismatch):
    pass


class NotInvertible(AdhmKitError, ValueError):
    pass


class Unsatisfiable(AdhmKitError, RuntimeError):
    pass


class WrongDegree(AdhmKitError, ValueError):
    pass


class OutOfChart(AdhmKitError, ValueError):
    pass


class DenominatorVanishes(AdhmKitError, ZeroDivisionError):
    pass


class FlavorDomain(AdhmKitError, ValueError):
    pass


class SizeGuard(AdhmKitError, ValueError):
    pass


class ConfigInvalid(AdhmKitError, ValueError):
    pass

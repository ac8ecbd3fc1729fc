"""Exception types raised by inertia_lab."""


class InertiaLabError(ValueError):
    """Base class for all library errors."""


# graph construction / analysis
class InvalidSpec(InertiaLabError):
    pass


class OutOfRange(InertiaLabError):
    pass


class Disconnected(InertiaLabError):
    pass


class UnsupportedGraph(InertiaLabError):
    pass


class SizeLimit(InertiaLabError):
    pass


# exact linear algebra
class NotSymmetric(InertiaLabError):
    pass


class SingularS(InertiaLabError):
    pass


class SingularLeadingBlock(InertiaLabError):
    pass


class BadOrdering(InertiaLabError):
    pass


class OddLength(InertiaLabError):
    pass


# numeric spectra
class NoConvergence(InertiaLabError):
    pass


class NonRealSpectrum(InertiaLabError):
    pass


class IndexOutOfRange(InertiaLabError):
    pass


# predictors / witnesses
class NotDeg2Cut(InertiaLabError):
    pass


class PreconditionViolated(InertiaLabError):
    pass


class BadK(InertiaLabError):
    pass


class NotUnicyclic(InertiaLabError):
    pass

"""Exception hierarchy shared by every module of the package."""


class GeometryError(Exception):
    """Base class for all errors raised by lensconvex."""


class EmptyPointSet(GeometryError):
    pass


class NoBracket(GeometryError):
    """Root-finder endpoints do not straddle a sign change."""


class InvalidGeometry(GeometryError):
    pass


class InvalidParameter(GeometryError):
    pass


class EmptyOrDegenerateBody(GeometryError):
    """The disks have no common interior (MEC radius of centers >= R)."""


class ErosionEmpty(GeometryError):
    pass


class ArcChainError(GeometryError):
    """Consecutive boundary arcs failed to meet at a shared vertex."""


class NotTouchingForm(GeometryError):
    pass


class NoVertices(GeometryError):
    pass


class OutOfDomain(GeometryError):
    pass


class ScaleMismatch(GeometryError):
    pass


class FamilyTuningFailed(GeometryError):
    pass

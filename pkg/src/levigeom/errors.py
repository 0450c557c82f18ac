"""Exception hierarchy. Geometry errors are raised, never returned."""


class LeviGeomError(Exception):
    """Base class for every error raised by this package."""


class SurfaceSyntaxError(LeviGeomError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SurfaceDefinitionError(LeviGeomError):
    """Well-formed text that does not describe a valid surface."""


class GeometryError(LeviGeomError):
    pass


class NotOnSurface(GeometryError):
    pass


class DegeneratePoint(GeometryError):
    pass


class MetricNotPositiveDefinite(GeometryError):
    pass


class ImaginaryResidue(GeometryError):
    """A quantity that must be real came out with a non-negligible imaginary part."""


class SamplingError(LeviGeomError):
    pass


class NoConvergence(SamplingError):
    pass


class TooManyRejections(SamplingError):
    pass

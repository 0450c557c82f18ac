"""Complex differential geometry of real hypersurfaces {F = 0} in C^(n+1)."""
from .classify import (
    ClassificationVerdict, check_theorem_consequences, classify, curvature_constancy,
    umbilicality_deviation,
)
from .connection import (
    CodazziReport, ConnectionCoeffs, CovariantGradient, christoffel, codazzi_residuals,
    connection_metric_residual, covariant_gradient, torsion_residuals,
)
from .dsl import (
    JetF, SurfaceDef, check_real_valued, evaluate, jet, parse_expr, parse_surface,
    wirtinger_derive,
)
from .errors import (
    DegeneratePoint, GeometryError, LeviGeomError, NoConvergence, NotOnSurface,
    SamplingError, SurfaceDefinitionError, SurfaceSyntaxError, TooManyRejections,
)
from .frame import FramePack, SurfacePoint, build_frame, locate, pair
from .sampling import SampleSet, horizontal_step, project, sample_patch, sample_surface
from .shape import SecondForm, levi_curvature, levi_spectrum, second_form, shape_spectrum

__version__ = "0.1.0"

__all__ = [
    "ClassificationVerdict", "check_theorem_consequences", "classify", "curvature_constancy",
    "umbilicality_deviation", "CodazziReport", "ConnectionCoeffs", "CovariantGradient",
    "christoffel", "codazzi_residuals", "connection_metric_residual", "covariant_gradient",
    "torsion_residuals", "JetF", "SurfaceDef", "check_real_valued", "evaluate", "jet",
    "parse_expr", "parse_surface", "wirtinger_derive", "DegeneratePoint", "GeometryError",
    "LeviGeomError", "NoConvergence", "NotOnSurface", "SamplingError",
    "SurfaceDefinitionError", "SurfaceSyntaxError", "TooManyRejections", "FramePack",
    "SurfacePoint", "build_frame", "locate", "pair", "SampleSet", "horizontal_step",
    "project", "sample_patch", "sample_surface", "SecondForm", "levi_curvature",
    "levi_spectrum", "second_form", "shape_spectrum",
]

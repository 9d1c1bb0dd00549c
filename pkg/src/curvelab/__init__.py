"""curvelab: build plane algebraic curves by imploding and exploding points.

Exact integer/rational arithmetic throughout the algebra; floating point
only at the rasterization edge.  Start from :func:`list_catalog` or
:func:`poly_from_text`, chain :func:`blow_down` / :func:`blow_up`, inspect
points with :func:`is_singular` / :func:`tangent_cone`, and render with
:func:`render_svg`.
"""

from .catalog import CatalogEntry, get_entry, list_catalog
from .errors import (CurveLabError, DegenerateTransform, DegreeLimitExceeded,
                     DegreeOfZero, InvalidViewport, NotFound, NotOnCurve,
                     ParseError, VariableMismatch)
from .expr import (ExprNode, expand, format_poly, parse, poly_from_text,
                   variables_in)
from .pipeline import (Pipeline, PipelineStep, StepFailure, load_pipeline,
                       pipeline_from_dict, pipeline_to_dict, run_pipeline,
                       save_pipeline)
from .poly import (MAX_TOTAL_DEGREE, BivarPoly, Monomial, as_fraction,
                   as_point, set_max_total_degree, translate,
                   translate_scaled)
from .raster import (ContourSet, Viewport, emit_svg, marching_squares,
                     render_svg, sample_grid)
from .transforms import (BlowUpResult, PointClass, TangentCone, TransformStep,
                         apply_step, blow_down, blow_up, is_singular,
                         partial_derivative, step_from_dict, step_to_dict,
                         tangent_cone)

__version__ = "0.1.0"

__all__ = [
    "BivarPoly",
    "BlowUpResult",
    "CatalogEntry",
    "ContourSet",
    "CurveLabError",
    "DegenerateTransform",
    "DegreeLimitExceeded",
    "DegreeOfZero",
    "ExprNode",
    "InvalidViewport",
    "MAX_TOTAL_DEGREE",
    "Monomial",
    "NotFound",
    "NotOnCurve",
    "ParseError",
    "Pipeline",
    "PipelineStep",
    "PointClass",
    "StepFailure",
    "TangentCone",
    "TransformStep",
    "VariableMismatch",
    "Viewport",
    "apply_step",
    "as_fraction",
    "as_point",
    "blow_down",
    "blow_up",
    "emit_svg",
    "expand",
    "format_poly",
    "get_entry",
    "is_singular",
    "list_catalog",
    "load_pipeline",
    "marching_squares",
    "parse",
    "partial_derivative",
    "pipeline_from_dict",
    "pipeline_to_dict",
    "poly_from_text",
    "render_svg",
    "run_pipeline",
    "sample_grid",
    "save_pipeline",
    "set_max_total_degree",
    "step_from_dict",
    "step_to_dict",
    "tangent_cone",
    "translate",
    "translate_scaled",
    "variables_in",
]

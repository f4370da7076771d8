"""Point-set constructions, tangency certificates and bubble-set solvers."""

from __future__ import annotations

__version__ = "0.1.0"

from .bubbles import (
    BubbleSet,
    LowerBound,
    PencilInterval,
    SolveResult,
    ValidationReport,
    bound_constants,
    bubble_from_matching,
    certified_lower,
    disjoint_bubbles,
    pencil_interval,
    validate,
)
from .circular import CaseReport, case_report_disk, case_report_line, margin_scan, realize_case, solve_tangent_pair
from .constructions import (
    ChainSpec,
    GadgetSpec,
    LinearSpec,
    alternating_chain,
    baseline_collinear,
    gadget,
    linear_grid,
    padded_to,
)
from .counting import counting_bounds
from .delaunay import Triangulation, delaunay
from .geometry import (
    DEFAULT_TOL,
    Disk,
    DiskRelation,
    Point,
    PointClass,
    PointSet,
    Tolerance,
    circumcircle,
    classify_point,
    disks_disjoint,
    is_empty,
    xi,
)
from .matching import Matching, maximum_matching

__all__ = [
    "BubbleSet",
    "CaseReport",
    "ChainSpec",
    "DEFAULT_TOL",
    "Disk",
    "DiskRelation",
    "GadgetSpec",
    "LinearSpec",
    "LowerBound",
    "Matching",
    "PencilInterval",
    "Point",
    "PointClass",
    "PointSet",
    "SolveResult",
    "Tolerance",
    "Triangulation",
    "ValidationReport",
    "__version__",
    "alternating_chain",
    "baseline_collinear",
    "bound_constants",
    "bubble_from_matching",
    "case_report_disk",
    "case_report_line",
    "certified_lower",
    "circumcircle",
    "classify_point",
    "counting_bounds",
    "delaunay",
    "disjoint_bubbles",
    "disks_disjoint",
    "gadget",
    "is_empty",
    "linear_grid",
    "margin_scan",
    "maximum_matching",
    "padded_to",
    "pencil_interval",
    "realize_case",
    "solve_tangent_pair",
    "validate",
    "xi",
]

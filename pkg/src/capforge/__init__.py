"""Polygon cap construction with prescribed angular defects.

Build cap curves for planar polygons, test and enforce the closure
condition, solve for closing vertices, classify the small cases, and study
how the closure gap behaves under boundary refinement.
"""

from .geom import (
    GEOM_TOL,
    Polygon,
    PolygonError,
    SimplicityReport,
    Vertex,
    edges,
    internal_angles,
    is_simple,
    signed_area,
    similarity_apply,
    turning_angles,
)
from .capcore import (
    ANGLE_EPS,
    CLOSURE_TOL,
    DEFECT_SUM_TOL,
    TOTAL_DEFECT,
    CapConstructionError,
    CapCurve,
    CapReport,
    DefectProfile,
    cap_report,
    construct_cap,
    edge_rotation,
    gap_closed_form,
    gap_general,
    omega,
    omega_power,
    satisfies_closed_cap,
)
from .solve import (
    AffineCoeffs,
    ClassificationVerdict,
    TauParameter,
    affine_coeffs,
    caps_similar,
    classify_quadrilateral,
    classify_triangle,
    modular_transform,
    project_to_closed,
    q_tau,
    solve_free_vertex,
)
from .shapes import (
    BoundaryShape,
    Circle,
    Ellipse,
    PolygonResample,
    SweepRow,
    SweepSeries,
    gap_sweep,
    midpoint_refine,
    sample_boundary,
)

__version__ = "0.1.0"

__all__ = [
    "ANGLE_EPS",
    "AffineCoeffs",
    "BoundaryShape",
    "CLOSURE_TOL",
    "CapConstructionError",
    "CapCurve",
    "CapReport",
    "Circle",
    "ClassificationVerdict",
    "DEFECT_SUM_TOL",
    "DefectProfile",
    "Ellipse",
    "GEOM_TOL",
    "Polygon",
    "PolygonError",
    "PolygonResample",
    "SimplicityReport",
    "SweepRow",
    "SweepSeries",
    "TOTAL_DEFECT",
    "TauParameter",
    "Vertex",
    "affine_coeffs",
    "cap_report",
    "caps_similar",
    "classify_quadrilateral",
    "classify_triangle",
    "construct_cap",
    "edge_rotation",
    "edges",
    "gap_closed_form",
    "gap_general",
    "gap_sweep",
    "internal_angles",
    "is_simple",
    "midpoint_refine",
    "modular_transform",
    "omega",
    "omega_power",
    "project_to_closed",
    "q_tau",
    "sample_boundary",
    "satisfies_closed_cap",
    "signed_area",
    "similarity_apply",
    "solve_free_vertex",
    "turning_angles",
]

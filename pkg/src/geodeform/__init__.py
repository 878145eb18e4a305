"""Numerical verification of geometric coincidences under deformation.

The package starts from degenerate figures (a square, an equilateral
triangle) in which several constructed points collapse together, deforms
them randomly, and measures which relations among the constructed points
survive.  Relations whose residual stays at the floating-point noise
floor for every deformation are reported as theorems; relations whose
residual grows with the deformation magnitude are only approximate
coincidences of the degenerate position.
"""

from .catalog import CLAIMS, FAMILIES, BuiltinClaim, UnknownClaim, \
    claim_names, get_claim
from .centers import (
    CenterKind,
    IllConditioned,
    ObtuseFermatWarning,
    Orientation,
    equilateral_apex,
    fermat_oracle,
    right_isosceles_apex,
    triangle_center,
)
from .configurations import (
    Configuration,
    NonConvexQuadrilateral,
    PointOnVertex,
    PointOutsideCircumcircle,
    ShapeKind,
    base_shape,
    build_bisector_variant,
    build_example1,
    build_example2,
    build_example3,
    build_theorem1,
    second_intersection,
)
from .core import (
    DEFAULT_TOL,
    Circle,
    CoincidentPoints,
    CollinearPoints,
    ConcentricCircles,
    DegenerateAngleWarning,
    GeometryError,
    Line,
    NonFiniteInput,
    Parallel,
    Point,
    ToleranceBudget,
    angle_bisector,
    circumcircle,
    dist,
    intersect,
    line_through,
    midpoint,
    radical_axis,
    reflect_line,
    reflect_point,
    rotate,
    signed_area,
    translate,
)
from .deform import (
    DeformationFamily,
    RejectionBudgetExhausted,
    RelationClaim,
    SplitMix64,
    VerificationReport,
    fit_scaling_exponent,
    sample,
    scaling_probe,
    verify,
)
from .relations import (
    Conic,
    DegeneratePosition,
    RelationVerdict,
    TooFewCircles,
    TooFewLines,
    TooFewPoints,
    check_coaxial,
    check_collinear,
    check_concurrent_circles,
    check_concurrent_lines,
    check_concyclic,
    check_equal_length,
    check_midpoints_coincide,
    check_on_conic,
    check_perp_and_equal,
    check_perpendicular,
    check_perspective,
    check_segment_bisects,
    evaluate_relation,
    fit_conic,
)
from .render import render, render_svg
from .script import ArityError, ParseError, Program, UnknownParam, \
    UseBeforeDefine, evaluate, format_program, parse

__version__ = "0.1.0"

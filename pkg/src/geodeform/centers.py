"""Triangle centers and apex constructions.

The two Fermat points are built constructively (vertex-to-apex line
concurrency) rather than from trigonometric barycentrics, so their
conditioning is explicit: the pairwise meets of the three defining lines
must agree within the relative tolerance or IllConditioned is raised.
A Weiszfeld iteration is provided as an independent oracle for the first
Fermat point.
"""

from __future__ import annotations

import enum
import math
import warnings

from .core import (
    DEFAULT_TOL,
    CoincidentPoints,
    CollinearPoints,
    GeometryError,
    Line,
    Point,
    ToleranceBudget,
    circumcircle,
    dist,
    intersect,
    line_through,
    midpoint,
    perp,
    signed_area,
)

__all__ = [
    "CenterKind",
    "Orientation",
    "IllConditioned",
    "ObtuseFermatWarning",
    "triangle_center",
    "equilateral_apex",
    "right_isosceles_apex",
    "fermat_oracle",
]


class CenterKind(enum.Enum):
    """Supported centers, named by their Kimberling index."""

    X1 = "incenter"
    X2 = "centroid"
    X3 = "circumcenter"
    X4 = "orthocenter"
    X5 = "nine_point_center"
    X13 = "first_fermat"
    X14 = "second_fermat"


class Orientation(enum.Enum):
    """Which side of a base segment an apex is erected on, relative to a
    reference point (ties with the reference on the base line resolve to
    the counterclockwise side)."""

    TOWARD_REFERENCE = "toward"
    AWAY_FROM_REFERENCE = "away"


class IllConditioned(GeometryError):
    """The defining lines of a constructed center do not pin it down to
    within the relative tolerance."""


class ObtuseFermatWarning(UserWarning):
    """An angle of 120 degrees or more: the Fermat point is that vertex."""


def _sign(x: float) -> float:
    return -1.0 if x < 0.0 else 1.0


def _pick_side(base1: Point, base2: Point, candidate_offset: Point,
               mid: Point, orientation: Orientation, reference: Point) -> Point:
    """Choose mid +/- offset so the result sits on the requested side."""
    ref_side = _sign(signed_area(base1, base2, reference))
    if orientation is Orientation.AWAY_FROM_REFERENCE:
        ref_side = -ref_side
    plus = Point(mid.x + candidate_offset.x, mid.y + candidate_offset.y)
    if _sign(signed_area(base1, base2, plus)) == ref_side:
        return plus
    return Point(mid.x - candidate_offset.x, mid.y - candidate_offset.y)


def equilateral_apex(base1: Point, base2: Point, orientation: Orientation,
                     reference: Point, tol: ToleranceBudget = DEFAULT_TOL) -> Point:
    """Apex completing an equilateral triangle on the segment base1-base2."""
    d = dist(base1, base2)
    if d <= tol.abs_floor * max(1.0, d):
        raise CoincidentPoints("equilateral apex on a zero-length base")
    m = midpoint(base1, base2)
    offset = perp(base2 - base1) * (math.sqrt(3.0) / 2.0)
    return _pick_side(base1, base2, offset, m, orientation, reference)


def right_isosceles_apex(end1: Point, end2: Point, orientation: Orientation,
                         reference: Point, tol: ToleranceBudget = DEFAULT_TOL) -> Point:
    """Apex O with |O-end1| = |O-end2| and a right angle at O."""
    d = dist(end1, end2)
    if d <= tol.abs_floor * max(1.0, d):
        raise CoincidentPoints("right-isosceles apex on a zero-length base")
    m = midpoint(end1, end2)
    offset = perp(end2 - end1) * 0.5
    return _pick_side(end1, end2, offset, m, orientation, reference)


def _require_triangle(a: Point, b: Point, c: Point, tol: ToleranceBudget) -> float:
    diam = max(dist(a, b), dist(b, c), dist(c, a))
    if min(dist(a, b), dist(b, c), dist(c, a)) <= tol.abs_floor * max(1.0, diam):
        raise CoincidentPoints("triangle with coincident vertices")
    if abs(signed_area(a, b, c)) <= tol.abs_floor * diam * diam:
        raise CollinearPoints(f"degenerate triangle {a}, {b}, {c}")
    return diam


def _fermat_lines(a: Point, b: Point, c: Point, orientation: Orientation,
                  tol: ToleranceBudget) -> list[Line]:
    apex_a = equilateral_apex(b, c, orientation, a, tol)
    apex_b = equilateral_apex(c, a, orientation, b, tol)
    apex_c = equilateral_apex(a, b, orientation, c, tol)
    try:
        return [line_through(a, apex_a, tol),
                line_through(b, apex_b, tol),
                line_through(c, apex_c, tol)]
    except CoincidentPoints as exc:
        raise IllConditioned(f"fermat construction degenerates: {exc}") from exc


def _concurrent_point(lines: list[Line], diam: float,
                      tol: ToleranceBudget) -> Point:
    """Least-squares meet of three concurrent lines, with a spread check."""
    meets = []
    for i in range(3):
        for j in range(i + 1, 3):
            try:
                meets.append(intersect(lines[i], lines[j], tol)[0])
            except GeometryError as exc:
                raise IllConditioned(f"defining lines nearly parallel: {exc}") from exc
    spread = max(dist(p, q) for i, p in enumerate(meets) for q in meets[i + 1:])
    if spread > tol.rel_tol * diam:
        raise IllConditioned(
            f"defining lines meet with spread {spread:.3e} over scale {diam:.3e}")
    # normal equations for min sum((a_i x + b_i y + c_i)^2); normals are unit
    saa = sum(l.a * l.a for l in lines)
    sab = sum(l.a * l.b for l in lines)
    sbb = sum(l.b * l.b for l in lines)
    sac = sum(l.a * l.c for l in lines)
    sbc = sum(l.b * l.c for l in lines)
    det = saa * sbb - sab * sab
    if abs(det) <= tol.abs_floor:
        raise IllConditioned("defining lines form a near-parallel pencil")
    return Point((sab * sbc - sbb * sac) / det,
                 (sab * sac - saa * sbc) / det)


def triangle_center(kind: CenterKind, a: Point, b: Point, c: Point,
                    tol: ToleranceBudget = DEFAULT_TOL) -> Point:
    """The requested center of triangle abc (any vertex order)."""
    diam = _require_triangle(a, b, c, tol)
    if kind is CenterKind.X1:
        la, lb, lc = dist(b, c), dist(c, a), dist(a, b)
        s = la + lb + lc
        return Point((la * a.x + lb * b.x + lc * c.x) / s,
                     (la * a.y + lb * b.y + lc * c.y) / s)
    if kind is CenterKind.X2:
        return Point((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0)
    if kind is CenterKind.X3:
        return circumcircle(a, b, c, tol).center
    if kind is CenterKind.X4:
        o = circumcircle(a, b, c, tol).center
        return Point(a.x + b.x + c.x - 2.0 * o.x, a.y + b.y + c.y - 2.0 * o.y)
    if kind is CenterKind.X5:
        o = circumcircle(a, b, c, tol).center
        h = Point(a.x + b.x + c.x - 2.0 * o.x, a.y + b.y + c.y - 2.0 * o.y)
        return midpoint(o, h)
    if kind is CenterKind.X13:
        lines = _fermat_lines(a, b, c, Orientation.AWAY_FROM_REFERENCE, tol)
        return _concurrent_point(lines, diam, tol)
    if kind is CenterKind.X14:
        lines = _fermat_lines(a, b, c, Orientation.TOWARD_REFERENCE, tol)
        return _concurrent_point(lines, diam, tol)
    raise ValueError(f"unsupported center kind {kind!r}")


def fermat_oracle(a: Point, b: Point, c: Point,
                  tol: ToleranceBudget = DEFAULT_TOL,
                  max_iter: int = 100_000) -> Point:
    """Geometric median of the three vertices by Weiszfeld iteration.

    Independent of the constructive first Fermat point: when every angle is
    below 120 degrees the two must agree.  With an angle of 120 degrees or
    more the minimizer is that vertex; it is returned and a warning emitted.
    """
    diam = _require_triangle(a, b, c, tol)
    pts = (a, b, c)
    for i, v in enumerate(pts):
        u = pts[(i + 1) % 3] - v
        w = pts[(i + 2) % 3] - v
        cosang = (u.x * w.x + u.y * w.y) / (u.norm() * w.norm())
        if cosang <= -0.5:
            warnings.warn("angle of 120 degrees or more: Fermat point is the "
                          "vertex itself", ObtuseFermatWarning, stacklevel=2)
            return v
    y = Point((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0)
    step_tol = 1e-12 * diam
    for _ in range(max_iter):
        wsum = 0.0
        nx = ny = 0.0
        for p in pts:
            d = dist(y, p)
            if d < 1e-18 * diam:
                return p  # landed on a vertex; cannot improve from here
            w = 1.0 / d
            wsum += w
            nx += w * p.x
            ny += w * p.y
        new = Point(nx / wsum, ny / wsum)
        if dist(new, y) < step_tol:
            return new
        y = new
    return y

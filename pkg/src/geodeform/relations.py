"""Numerical detectors for geometric coincidences.

Every detector returns a :class:`RelationVerdict` whose residual is
dimensionless: defects are divided by the diameter of the defining points
(or by an explicitly supplied scale when the points are a subset of a
larger figure), computed in a frame scaled by a power-of-two snap of that
quantity.  Power of two, because dividing by it is exact in binary
floating point, which makes every residual bit-for-bit invariant under
scaling the inputs by any power of two and keeps it stable to a few ulps
under any other similarity.

Residuals below NOISE_FLOOR are reported as exactly 0.0.  Digits down
there are recomputation noise, not geometry: re-running the same check on
a rotated or rescaled copy of the inputs lands on a different point of the
noise band, so collapsing the band is what makes reports reproducible
across equivalent frames.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    Circle,
    CoincidentPoints,
    GeometryError,
    Line,
    Point,
    ToleranceBudget,
    circumcircle,
    dist,
    intersect,
    line_through,
    midpoint,
    radical_axis,
    signed_area,
)

__all__ = [
    "NOISE_FLOOR",
    "TooFewPoints",
    "TooFewLines",
    "TooFewCircles",
    "DegeneratePosition",
    "RelationVerdict",
    "Conic",
    "check_collinear",
    "check_concyclic",
    "check_concurrent_lines",
    "check_concurrent_circles",
    "check_coaxial",
    "check_perspective",
    "check_perpendicular",
    "check_equal_length",
    "check_perp_and_equal",
    "check_midpoints_coincide",
    "check_segment_bisects",
    "fit_conic",
    "check_on_conic",
    "evaluate_relation",
    "RELATION_ARITIES",
]


# Anything below this is indistinguishable from double-precision roundoff
# for the problem sizes this package handles (defects of unit-scale
# figures).  Well under every decision threshold: rel_tol defaults to 1e-9.
NOISE_FLOOR = 1e-14


class TooFewPoints(GeometryError):
    pass


class TooFewLines(GeometryError):
    pass


class TooFewCircles(GeometryError):
    pass


class DegeneratePosition(GeometryError):
    """Input positions make the fitted object non-unique."""


@dataclass(frozen=True)
class RelationVerdict:
    """Outcome of one relation check.

    `passed` is always `residual <= rel_tol` of the budget the check ran
    under; `flags` records degenerate sub-cases that were decided by
    convention; `error` carries the message when evaluation itself failed.
    """

    kind: str
    residual: float
    passed: bool
    witness: object = None
    flags: tuple[str, ...] = ()
    error: str | None = None

    @classmethod
    def from_residual(cls, kind: str, residual: float, tol: ToleranceBudget,
                      witness: object = None,
                      flags: tuple[str, ...] = ()) -> "RelationVerdict":
        if residual < NOISE_FLOOR:
            residual = 0.0
        return cls(kind, residual, residual <= tol.rel_tol, witness, flags)

    @classmethod
    def failed(cls, kind: str, flags: tuple[str, ...] = (),
               error: str | None = None) -> "RelationVerdict":
        return cls(kind, math.inf, False, None, flags, error)


# ---------------------------------------------------------------------------
# normalization

def _diameter(points: Sequence[Point]) -> float:
    return max((dist(p, q) for i, p in enumerate(points) for q in points[i + 1:]),
               default=0.0)


def _normalized(points: Sequence[Point], tol: ToleranceBudget,
                scale: float | None = None) -> tuple[list[Point], float, float]:
    """Points divided by a power-of-two snap of the normalization scale.

    The scale defaults to the points' own diameter; callers checking a
    label subset of a larger configuration pass the configuration diameter
    instead, so that defects of a collapsing subset are still measured
    against the whole figure.  Returns the scaled points, their diameter in
    the scaled frame, and the normalization denominator in that frame.
    Power of two, because dividing by it is exact.
    """
    cloud = _diameter(points)
    basis = cloud if scale is None else scale
    if basis <= tol.abs_floor * max(1.0, *(max(abs(p.x), abs(p.y)) for p in points)):
        return list(points), 0.0, 0.0
    snap = 2.0 ** round(math.log2(basis))
    return [p / snap for p in points], cloud / snap, basis / snap


# ---------------------------------------------------------------------------
# point-set detectors

def check_collinear(points: Sequence[Point],
                    tol: ToleranceBudget = DEFAULT_TOL,
                    scale: float | None = None) -> RelationVerdict:
    """Total-least-squares line fit; residual is the worst normal deviation."""
    if len(points) < 3:
        raise TooFewPoints(f"collinear needs >= 3 points, got {len(points)}")
    q, dq, denom = _normalized(points, tol, scale)
    if dq == 0.0:
        return RelationVerdict("collinear", 0.0, True, None, ("coincident_cluster",))
    cx = sum(p.x for p in q) / len(q)
    cy = sum(p.y for p in q) / len(q)
    sxx = sum((p.x - cx) ** 2 for p in q)
    sxy = sum((p.x - cx) * (p.y - cy) for p in q)
    syy = sum((p.y - cy) ** 2 for p in q)
    # unit normal of the TLS line: eigenvector of the smaller eigenvalue
    tr = sxx + syy
    disc = math.sqrt((sxx - syy) ** 2 + 4.0 * sxy * sxy)
    lam = (tr - disc) / 2.0
    nx, ny = sxy, lam - sxx
    if math.hypot(nx, ny) < 1e-30:
        nx, ny = lam - syy, sxy
    if math.hypot(nx, ny) < 1e-30:
        nx, ny = 1.0, 0.0  # isotropic cloud; any direction ties
    nn = math.hypot(nx, ny)
    nx, ny = nx / nn, ny / nn
    residual = max(abs(nx * (p.x - cx) + ny * (p.y - cy)) for p in q) / denom
    ox = sum(p.x for p in points) / len(points)
    oy = sum(p.y for p in points) / len(points)
    witness = Line(nx, ny, -(nx * ox + ny * oy))
    return RelationVerdict.from_residual("collinear", residual, tol, witness)


def _anchor_triple(q: Sequence[Point]) -> tuple[int, int, int, float]:
    best = (0, 1, 2)
    best_area = -1.0
    n = len(q)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                area = abs(signed_area(q[i], q[j], q[k]))
                if area > best_area:
                    best, best_area = (i, j, k), area
    return best[0], best[1], best[2], best_area


def check_concyclic(points: Sequence[Point],
                    tol: ToleranceBudget = DEFAULT_TOL,
                    scale: float | None = None) -> RelationVerdict:
    """Circle through the widest-spread triple; residual is the worst
    radial deviation of the remaining points."""
    if len(points) < 4:
        raise TooFewPoints(f"concyclic needs >= 4 points, got {len(points)}")
    q, dq, denom = _normalized(points, tol, scale)
    if dq == 0.0:
        return RelationVerdict("concyclic", 0.0, True, None, ("coincident_cluster",))
    i, j, k, area = _anchor_triple(q)
    if area <= tol.rel_tol * dq * dq:
        # every triple is flat: fall back to the line fit
        line_verdict = check_collinear(points, tol, scale)
        return RelationVerdict("concyclic", line_verdict.residual,
                               line_verdict.passed, line_verdict.witness,
                               line_verdict.flags + ("collinear_witness",))
    circle = circumcircle(q[i], q[j], q[k], tol)
    rest = [p for t, p in enumerate(q) if t not in (i, j, k)]
    residual = max(abs(dist(p, circle.center) - circle.radius) for p in rest) / denom
    witness = circumcircle(points[i], points[j], points[k], tol)
    return RelationVerdict.from_residual("concyclic", residual, tol, witness)


def check_perpendicular(p1: Point, p2: Point, q1: Point, q2: Point,
                        tol: ToleranceBudget = DEFAULT_TOL) -> RelationVerdict:
    """Cosine of the angle between segments p1p2 and q1q2."""
    q, dq, _ = _normalized([p1, p2, q1, q2], tol)
    if dq == 0.0:
        raise CoincidentPoints("perpendicularity of zero-length segments")
    u = q[1] - q[0]
    w = q[3] - q[2]
    un, wn = u.norm(), w.norm()
    if min(un, wn) <= tol.abs_floor * dq:
        raise CoincidentPoints("perpendicularity of a zero-length segment")
    residual = abs(u.x * w.x + u.y * w.y) / (un * wn)
    return RelationVerdict.from_residual("perpendicular", residual, tol)


def check_equal_length(points: Sequence[Point],
                       tol: ToleranceBudget = DEFAULT_TOL,
                       scale: float | None = None) -> RelationVerdict:
    """Points taken as consecutive segment endpoint pairs; residual is the
    largest pairwise length difference over the diameter."""
    if len(points) < 4 or len(points) % 2:
        raise TooFewPoints("equal_length needs an even count of >= 4 points")
    q, dq, denom = _normalized(points, tol, scale)
    if dq == 0.0:
        return RelationVerdict("equal_length", 0.0, True, None,
                               ("coincident_cluster",))
    lengths = [dist(q[t], q[t + 1]) for t in range(0, len(q), 2)]
    residual = max(abs(a - b) for i, a in enumerate(lengths)
                   for b in lengths[i + 1:]) / denom
    return RelationVerdict.from_residual("equal_length", residual, tol)


def check_perp_and_equal(p1: Point, p2: Point, q1: Point, q2: Point,
                         tol: ToleranceBudget = DEFAULT_TOL,
                         ) -> tuple[RelationVerdict, RelationVerdict]:
    """Both halves of the segment-pair comparison at once."""
    return (check_perpendicular(p1, p2, q1, q2, tol),
            check_equal_length([p1, p2, q1, q2], tol))


def check_midpoints_coincide(p1: Point, p2: Point, q1: Point, q2: Point,
                             tol: ToleranceBudget = DEFAULT_TOL,
                             scale: float | None = None) -> RelationVerdict:
    """Distance between the two segment midpoints over the diameter."""
    q, dq, denom = _normalized([p1, p2, q1, q2], tol, scale)
    if dq == 0.0:
        return RelationVerdict("midpoints_coincide", 0.0, True, None,
                               ("coincident_cluster",))
    residual = dist(midpoint(q[0], q[1]), midpoint(q[2], q[3])) / denom
    return RelationVerdict.from_residual("midpoints_coincide", residual, tol,
                                         midpoint(p1, p2))


def check_segment_bisects(p1: Point, p2: Point, q1: Point, q2: Point,
                          tol: ToleranceBudget = DEFAULT_TOL,
                          scale: float | None = None) -> RelationVerdict:
    """Does the line p1p2 pass through the midpoint of q1q2?"""
    q, dq, denom = _normalized([p1, p2, q1, q2], tol, scale)
    if dq == 0.0:
        return RelationVerdict("segment_bisects", 0.0, True, None,
                               ("coincident_cluster",))
    line = line_through(q[0], q[1], tol)
    residual = abs(line.value(midpoint(q[2], q[3]))) / denom
    return RelationVerdict.from_residual("segment_bisects", residual, tol,
                                         line_through(p1, p2, tol))


# ---------------------------------------------------------------------------
# line and circle detectors

def check_concurrent_lines(lines: Sequence[Line],
                           tol: ToleranceBudget = DEFAULT_TOL) -> RelationVerdict:
    """Least-squares common point; residual is the worst distance to any
    line over the spread of the pairwise meets (floored at 1)."""
    if len(lines) < 3:
        raise TooFewLines(f"concurrency needs >= 3 lines, got {len(lines)}")
    meets: list[Point] = []
    for i, li in enumerate(lines):
        for lj in lines[i + 1:]:
            if abs(li.a * lj.b - lj.a * li.b) <= tol.abs_floor:
                return RelationVerdict.failed(
                    "concurrent", flags=("non_concurrent_parallel",))
            meets.append(intersect(li, lj, tol)[0])
    saa = sum(l.a * l.a for l in lines)
    sab = sum(l.a * l.b for l in lines)
    sbb = sum(l.b * l.b for l in lines)
    sac = sum(l.a * l.c for l in lines)
    sbc = sum(l.b * l.c for l in lines)
    det = saa * sbb - sab * sab
    witness = Point((sab * sbc - sbb * sac) / det,
                    (sab * sac - saa * sbc) / det)
    cloud = max(1.0, _diameter(meets))
    residual = max(abs(l.value(witness)) for l in lines) / cloud
    return RelationVerdict.from_residual("concurrent", residual, tol, witness)


def check_concurrent_circles(circles: Sequence[Circle],
                             tol: ToleranceBudget = DEFAULT_TOL) -> RelationVerdict:
    """A common point of all circles, seeded from the first pair's meets;
    residual is the worst power of the best candidate, over scale squared."""
    if len(circles) < 2:
        raise TooFewCircles(f"concurrency needs >= 2 circles, got {len(circles)}")
    candidates = intersect(circles[0], circles[1], tol)
    if not candidates:
        return RelationVerdict.failed(
            "concurrent_circles", flags=("no_pairwise_intersection",))
    scale = max(max(dist(a.center, b.center) + a.radius + b.radius
                    for i, a in enumerate(circles) for b in circles[i + 1:]),
                2.0 * max(c.radius for c in circles))
    best = None
    best_res = math.inf
    for cand in candidates:
        res = max(abs(c.power(cand)) for c in circles) / (scale * scale)
        if res < best_res:
            best, best_res = cand, res
    return RelationVerdict.from_residual("concurrent_circles", best_res, tol, best)


def check_coaxial(circles: Sequence[Circle],
                  tol: ToleranceBudget = DEFAULT_TOL) -> RelationVerdict:
    """All pairwise radical axes coincide with the first pair's axis.

    Residual per pair combines the sine of the angle between the axes with
    their offset over the configuration scale.
    """
    if len(circles) < 3:
        raise TooFewCircles(f"coaxiality needs >= 3 circles, got {len(circles)}")
    ref = radical_axis(circles[0], circles[1], tol)
    scale = max(max(dist(a.center, b.center)
                    for i, a in enumerate(circles) for b in circles[i + 1:]),
                max(c.radius for c in circles))
    worst = 0.0
    for i in range(len(circles)):
        for j in range(i + 1, len(circles)):
            if (i, j) == (0, 1):
                continue
            ax = radical_axis(circles[i], circles[j], tol)
            sin = abs(ref.a * ax.b - ax.a * ref.b)
            sign = 1.0 if (ref.a * ax.a + ref.b * ax.b) >= 0.0 else -1.0
            offset = abs(sign * ax.c - ref.c) / scale
            worst = max(worst, sin + offset)
    return RelationVerdict.from_residual("coaxial", worst, tol, ref)


def check_perspective(tri1: Sequence[Point], tri2: Sequence[Point],
                      tol: ToleranceBudget = DEFAULT_TOL) -> RelationVerdict:
    """Are the vertex connectors of two corresponding triangles concurrent?

    Coincident vertex pairs contribute no constraint and are flagged; three
    mutually parallel connectors count as concurrent at infinity.
    """
    if len(tri1) != 3 or len(tri2) != 3:
        raise TooFewPoints("perspectivity needs two triangles of 3 points")
    pts = list(tri1) + list(tri2)
    q, dq, _ = _normalized(pts, tol)
    if dq == 0.0:
        return RelationVerdict("perspective", 0.0, True, None,
                               ("identical_vertices",))
    snap = _diameter(pts) / dq  # power of two; maps witnesses back exactly
    connectors: list[Line] = []
    n_coincident = 0
    for t in range(3):
        a, b = q[t], q[3 + t]
        if dist(a, b) <= tol.abs_floor * dq:
            n_coincident += 1
            continue
        connectors.append(line_through(a, b, tol))
    if n_coincident == 3:
        return RelationVerdict("perspective", 0.0, True, None,
                               ("identical_vertices",))
    if len(connectors) == 1:
        return RelationVerdict("perspective", 0.0, True, None,
                               ("coincident_vertex_pair",))
    if len(connectors) == 2:
        l1, l2 = connectors
        if abs(l1.a * l2.b - l2.a * l1.b) <= tol.abs_floor:
            return RelationVerdict("perspective", 0.0, True, None,
                                   ("coincident_vertex_pair",
                                    "concurrent_at_infinity"))
        w = intersect(l1, l2, tol)[0]
        return RelationVerdict("perspective", 0.0, True,
                               Point(w.x * snap, w.y * snap),
                               ("coincident_vertex_pair",))
    pairs_parallel = [abs(li.a * lj.b - lj.a * li.b) <= tol.abs_floor
                      for i, li in enumerate(connectors)
                      for lj in connectors[i + 1:]]
    if all(pairs_parallel):
        return RelationVerdict("perspective", 0.0, True, None,
                               ("concurrent_at_infinity",))
    inner = check_concurrent_lines(connectors, tol)
    witness = inner.witness
    if isinstance(witness, Point):
        witness = Point(witness.x * snap, witness.y * snap)
    return RelationVerdict("perspective", inner.residual, inner.passed,
                           witness, inner.flags)


# ---------------------------------------------------------------------------
# conics

@dataclass(frozen=True)
class Conic:
    """Implicit conic a x^2 + b xy + c y^2 + d x + e y + f = 0.

    The coefficient vector is normalized to unit Euclidean norm with the
    first nonzero coefficient positive.  `scale` remembers the diameter of
    the points the conic was fitted to, for residual normalization.
    """

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float
    scale: float = field(default=1.0, compare=False)

    def __post_init__(self) -> None:
        v = (self.a, self.b, self.c, self.d, self.e, self.f)
        n = math.sqrt(sum(x * x for x in v))
        if not math.isfinite(n) or n == 0.0:
            raise DegeneratePosition("conic coefficients are all zero")
        v = tuple(x / n for x in v)
        lead = next((x for x in v if x != 0.0), 1.0)
        if lead < 0.0:
            v = tuple(-x for x in v)
        v = tuple(0.0 if x == 0.0 else x for x in v)
        for name, x in zip("abcdef", v):
            object.__setattr__(self, name, x)

    def evaluate(self, p: Point) -> float:
        return (self.a * p.x * p.x + self.b * p.x * p.y + self.c * p.y * p.y
                + self.d * p.x + self.e * p.y + self.f)

    def gradient(self, p: Point) -> Point:
        return Point(2.0 * self.a * p.x + self.b * p.y + self.d,
                     self.b * p.x + 2.0 * self.c * p.y + self.e)


def fit_conic(points: Sequence[Point],
              tol: ToleranceBudget = DEFAULT_TOL) -> Conic:
    """The conic through exactly five points, via the null space of the
    design matrix (computed in a centered, scaled frame for conditioning)."""
    if len(points) != 5:
        raise TooFewPoints(f"a conic is fitted to exactly 5 points, got {len(points)}")
    diam = _diameter(points)
    q, dq, _ = _normalized(points, tol)
    if dq == 0.0:
        raise DegeneratePosition("conic fit to a coincident cluster")
    cx = sum(p.x for p in q) / 5.0
    cy = sum(p.y for p in q) / 5.0
    rows = []
    for p in q:
        x, y = p.x - cx, p.y - cy
        rows.append([x * x, x * y, y * y, x, y, 1.0])
    m = np.array(rows, dtype=float)
    _, s, vt = np.linalg.svd(m)
    if s[-1] <= tol.abs_floor * max(s[0], 1.0):
        raise DegeneratePosition("five points admit more than one conic "
                                 "(four are collinear or two coincide)")
    a, b, c, d, e, f = (float(x) for x in vt[-1])
    # undo the centering x -> x - cx, y -> y - cy
    d2 = d - 2.0 * a * cx - b * cy
    e2 = e - b * cx - 2.0 * c * cy
    f2 = f + a * cx * cx + b * cx * cy + c * cy * cy - d * cx - e * cy
    # undo the scaling p -> p / k (k = p/q for any nonzero coordinate)
    k = 1.0
    for orig, scaled in zip(points, q):
        if scaled.x != 0.0:
            k = orig.x / scaled.x
            break
        if scaled.y != 0.0:
            k = orig.y / scaled.y
            break
    return Conic(a / (k * k), b / (k * k), c / (k * k),
                 d2 / k, e2 / k, f2, scale=max(diam, tol.abs_floor))


def check_on_conic(conic: Conic, p: Point,
                   tol: ToleranceBudget = DEFAULT_TOL) -> RelationVerdict:
    """First-order geometric distance from p to the conic over its scale."""
    f = conic.evaluate(p)
    g = conic.gradient(p).norm()
    denom = max(g * conic.scale, tol.abs_floor)
    residual = abs(f) / denom
    return RelationVerdict.from_residual("on_conic", residual, tol, conic)


# ---------------------------------------------------------------------------
# label-list dispatch shared by the claim catalog and the script language

RELATION_ARITIES: dict[str, tuple[int, int | None, int]] = {
    # kind: (min points, max points or None, group size points must divide)
    "collinear": (3, None, 1),
    "concyclic": (4, None, 1),
    "concurrent": (6, None, 2),
    "perpendicular": (4, 4, 2),
    "equal_length": (4, None, 2),
    "on_conic": (6, None, 1),
    "coaxial": (9, None, 3),
    "perspective": (6, 6, 3),
    "midpoints_coincide": (4, 4, 2),
    "segment_bisects": (4, 4, 2),
}


def evaluate_relation(kind: str, points: Sequence[Point],
                      tol: ToleranceBudget = DEFAULT_TOL,
                      scale: float | None = None) -> RelationVerdict:
    """Evaluate a relation given as a kind plus a flat point list.

    Pair-structured kinds read the points two at a time as segment
    endpoints; `concurrent` turns each pair into a line, `coaxial` turns
    each consecutive triple into a circumcircle, `perspective` reads two
    triangles, and `on_conic` fits the first five points and tests the rest.
    The optional scale overrides the normalization diameter for the kinds
    whose residual is a length ratio, so a claim about a tight cluster
    inside a larger figure is still judged against the whole figure.
    """
    if kind not in RELATION_ARITIES:
        raise ValueError(f"unknown relation kind {kind!r}")
    lo, hi, step = RELATION_ARITIES[kind]
    n = len(points)
    if n < lo or (hi is not None and n > hi) or n % step:
        raise TooFewPoints(f"{kind} cannot take {n} points")
    if kind == "collinear":
        return check_collinear(points, tol, scale)
    if kind == "concyclic":
        return check_concyclic(points, tol, scale)
    if kind == "concurrent":
        lines = [line_through(points[i], points[i + 1], tol)
                 for i in range(0, n, 2)]
        return check_concurrent_lines(lines, tol)
    if kind == "perpendicular":
        return check_perpendicular(*points, tol)
    if kind == "equal_length":
        return check_equal_length(points, tol, scale)
    if kind == "on_conic":
        conic = fit_conic(points[:5], tol)
        worst = max((check_on_conic(conic, p, tol) for p in points[5:]),
                    key=lambda v: v.residual)
        return worst
    if kind == "coaxial":
        circles = [circumcircle(points[i], points[i + 1], points[i + 2], tol)
                   for i in range(0, n, 3)]
        return check_coaxial(circles, tol)
    if kind == "perspective":
        return check_perspective(points[:3], points[3:], tol)
    if kind == "midpoints_coincide":
        return check_midpoints_coincide(*points, tol, scale)
    if kind == "segment_bisects":
        return check_segment_bisects(*points, tol, scale)
    raise ValueError(f"unknown relation kind {kind!r}")

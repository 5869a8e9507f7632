"""Polygon primitives in the complex plane.

Vertices are complex numbers (``x + 1j*y``).  A valid polygon is an ordered,
counterclockwise chain of at least three vertices whose boundary is a simple
closed curve.  Vertices where the boundary continues straight (interior angle
exactly pi) are legal; they arise naturally when edges are subdivided.

All types are immutable and all operations are pure functions, so everything
here is safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

#: A vertex is one point of the plane, stored as a complex number.
Vertex = complex

TWO_PI = 2.0 * math.pi

#: Relative tolerance for coincidence and intersection decisions; scaled by
#: the diameter of the point set under test.
GEOM_TOL = 1e-9


class PolygonError(ValueError):
    """A vertex chain that cannot form (or be treated as) a valid polygon."""


def _to_vertices(points: Sequence[Vertex]) -> tuple[Vertex, ...]:
    out = []
    for p in points:
        z = complex(p)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise PolygonError(f"non-finite vertex {z!r}")
        out.append(z)
    return tuple(out)


def _diameter(points: Sequence[Vertex]) -> float:
    zs = np.asarray(points, dtype=complex)
    if zs.size < 2:
        return 0.0
    x, y = zs.real, zs.imag
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    return float(math.sqrt((dx * dx + dy * dy).max()))


def signed_area(points: Sequence[Vertex]) -> float:
    """Shoelace signed area of a closed vertex chain; positive iff the
    vertices run counterclockwise."""
    pts = _to_vertices(points)
    n = len(pts)
    if n < 3:
        raise PolygonError(f"signed area needs at least 3 vertices, got {n}")
    terms = []
    for k in range(n):
        a, b = pts[k], pts[(k + 1) % n]
        terms.append(a.real * b.imag - b.real * a.imag)
    return 0.5 * math.fsum(terms)


@dataclass(frozen=True)
class SimplicityReport:
    """Outcome of a self-intersection scan over a segment chain.

    ``violations`` holds 1-based segment index pairs (k, m) that properly
    cross or improperly touch; ``simple`` is true iff it is empty.
    """

    simple: bool
    violations: tuple[tuple[int, int], ...]


def _point_segment_dist_sq(px, py, ax, ay, bx, by):
    """Squared distance from points to segments (parallel float arrays)."""
    abx, aby = bx - ax, by - ay
    denom = abx * abx + aby * aby
    apx, apy = px - ax, py - ay
    t = np.where(denom > 0.0,
                 (apx * abx + apy * aby) / np.where(denom > 0.0, denom, 1.0),
                 0.0)
    t = np.clip(t, 0.0, 1.0)
    dx = apx - t * abx
    dy = apy - t * aby
    return dx * dx + dy * dy


def is_simple(points: Sequence[Vertex], closed: bool = True,
              tol: float | None = None) -> SimplicityReport:
    """Test whether a polyline (or closed chain) is free of self-contact.

    Adjacent segments may share exactly their common endpoint; collinear
    forward continuation (a straight-angle vertex) is not a violation, but a
    fold-back onto the previous segment is.  Any other pair of segments that
    crosses or comes within ``tol`` of touching is reported.  ``tol`` defaults
    to ``GEOM_TOL`` times the diameter of the point set.

    When ``closed`` is set and the last point coincides with the first (the
    usual "repeated endpoint" encoding), the duplicate is dropped before the
    closing segment is added.
    """
    pts = _to_vertices(points)
    if len(pts) < 2:
        raise PolygonError("simplicity test needs at least 2 points")
    if tol is None:
        tol = GEOM_TOL * _diameter(pts)
    if closed and len(pts) >= 4 and abs(pts[-1] - pts[0]) <= tol:
        pts = pts[:-1]

    z = np.asarray(pts, dtype=complex)
    if closed:
        za, zb = z, np.roll(z, -1)
    else:
        za, zb = z[:-1], z[1:]
    nseg = za.size
    if nseg < 2:
        return SimplicityReport(True, ())
    ax, ay = za.real.copy(), za.imag.copy()
    bx, by = zb.real.copy(), zb.imag.copy()
    tol_sq = tol * tol

    ii, jj = np.triu_indices(nseg, k=1)
    consecutive = (jj - ii) == 1
    wrap = np.zeros_like(consecutive)
    if closed:
        wrap = (ii == 0) & (jj == nseg - 1)
    adjacent = consecutive | wrap

    bad_pairs: list[tuple[int, int]] = []

    # Segments whose tol-inflated bounding boxes are disjoint can neither
    # cross nor touch, which prunes almost every pair of a simple chain.
    lox, hix = np.minimum(ax, bx), np.maximum(ax, bx)
    loy, hiy = np.minimum(ay, by), np.maximum(ay, by)
    overlap = ((lox[ii] <= hix[jj] + tol) & (lox[jj] <= hix[ii] + tol)
               & (loy[ii] <= hiy[jj] + tol) & (loy[jj] <= hiy[ii] + tol))

    non = ~adjacent & overlap
    if non.any():
        i_n, j_n = ii[non], jj[non]
        a1x, a1y, b1x, b1y = ax[i_n], ay[i_n], bx[i_n], by[i_n]
        a2x, a2y, b2x, b2y = ax[j_n], ay[j_n], bx[j_n], by[j_n]
        e1x, e1y = b1x - a1x, b1y - a1y
        e2x, e2y = b2x - a2x, b2y - a2y
        d1 = e1x * (a2y - a1y) - e1y * (a2x - a1x)
        d2 = e1x * (b2y - a1y) - e1y * (b2x - a1x)
        d3 = e2x * (a1y - a2y) - e2y * (a1x - a2x)
        d4 = e2x * (b1y - a2y) - e2y * (b1x - a2x)
        crossing = (d1 * d2 < 0.0) & (d3 * d4 < 0.0)
        dist_sq = np.minimum.reduce([
            _point_segment_dist_sq(a2x, a2y, a1x, a1y, b1x, b1y),
            _point_segment_dist_sq(b2x, b2y, a1x, a1y, b1x, b1y),
            _point_segment_dist_sq(a1x, a1y, a2x, a2y, b2x, b2y),
            _point_segment_dist_sq(b1x, b1y, a2x, a2y, b2x, b2y),
        ])
        hit = crossing | (dist_sq <= tol_sq)
        bad_pairs.extend(zip(i_n[hit], j_n[hit]))

    adj = adjacent
    if adj.any():
        # Orient each adjacent pair along the chain (segment u then v sharing
        # one endpoint; for the wrap pair the later segment is index 0) and
        # flag any fold-back of the far endpoints onto the other segment.
        w = wrap[adj]
        i_a, j_a = ii[adj], jj[adj]
        u = np.where(w, j_a, i_a)
        v = np.where(w, i_a, j_a)
        d_end = _point_segment_dist_sq(bx[v], by[v], ax[u], ay[u], bx[u], by[u])
        d_start = _point_segment_dist_sq(ax[u], ay[u], ax[v], ay[v], bx[v], by[v])
        hit = np.minimum(d_end, d_start) <= tol_sq
        bad_pairs.extend(zip(i_a[hit], j_a[hit]))

    pairs = tuple(sorted((int(i) + 1, int(j) + 1) for i, j in bad_pairs))
    return SimplicityReport(len(pairs) == 0, pairs)


@dataclass(frozen=True)
class Polygon:
    """Ordered counterclockwise vertex chain with a simple boundary.

    By default construction enforces the full contract: at least three
    vertices, finite coordinates, no repeated consecutive vertices, positive
    signed area, and a simple boundary.  ``normalize=True`` reverses clockwise
    input (keeping the first vertex first) instead of rejecting it.
    ``check=False`` keeps only the basic gates (count, finiteness, nonzero
    edges) so raw vertex chains can flow through the gap formulas and
    diagnostics.
    """

    vertices: tuple[Vertex, ...]
    check: InitVar[bool] = True
    normalize: InitVar[bool] = False

    def __post_init__(self, check: bool, normalize: bool) -> None:
        pts = _to_vertices(self.vertices)
        if len(pts) < 3:
            raise PolygonError(f"a polygon needs at least 3 vertices, got {len(pts)}")
        scale = _diameter(pts)
        if scale == 0.0:
            raise PolygonError("all vertices coincide")
        eps = GEOM_TOL * scale
        for k in range(len(pts)):
            if abs(pts[(k + 1) % len(pts)] - pts[k]) <= eps:
                raise PolygonError(f"repeated consecutive vertex at position {k + 1}")
        if normalize and signed_area(pts) < 0.0:
            pts = (pts[0],) + tuple(reversed(pts[1:]))
        object.__setattr__(self, "vertices", pts)
        if check:
            area = signed_area(pts)
            if abs(area) <= eps * scale:
                raise PolygonError("degenerate polygon: vertices are (nearly) collinear")
            if area < 0.0:
                raise PolygonError("vertices are enumerated clockwise; "
                                   "pass normalize=True to reverse them")
            report = is_simple(pts, closed=True, tol=eps)
            if not report.simple:
                raise PolygonError("boundary is not a simple closed curve; offending "
                                   f"segment pairs include {report.violations[:4]}")

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def edge_lengths(self) -> tuple[float, ...]:
        return tuple(abs(e) for e in edges(self))

    @cached_property
    def perimeter(self) -> float:
        return math.fsum(self.edge_lengths)

    @cached_property
    def diameter(self) -> float:
        return _diameter(self.vertices)

    def to_json_dict(self) -> dict:
        """JSON-ready mapping ``{"vertices": [[x, y], ...]}``."""
        return {"vertices": [[v.real, v.imag] for v in self.vertices]}

    @classmethod
    def from_json_dict(cls, data, check: bool = True, normalize: bool = False) -> "Polygon":
        try:
            raw = data["vertices"]
        except (TypeError, KeyError):
            raise PolygonError('polygon JSON must be an object with a "vertices" array')
        if not isinstance(raw, (list, tuple)):
            raise PolygonError('"vertices" must be an array of [x, y] pairs')
        pts = []
        for entry in raw:
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise PolygonError(f"vertex entries must be [x, y] pairs, got {entry!r}")
            x, y = entry
            try:
                pts.append(complex(float(x), float(y)))
            except (TypeError, ValueError):
                raise PolygonError(f"vertex entries must be numeric, got {entry!r}")
        return cls(tuple(pts), check=check, normalize=normalize)


def edges(p: Polygon) -> list[complex]:
    """Edge vectors ``v[k+1] - v[k]``, wrapping back to the first vertex.

    Their sum telescopes to zero up to floating rounding.
    """
    vs = p.vertices
    n = len(vs)
    return [vs[(k + 1) % n] - vs[k] for k in range(n)]


def turning_angles(p: Polygon) -> list[float]:
    """Signed counterclockwise turning at each vertex, in ``(-pi, pi]``.

    Computed with a two-argument arctangent of (cross, dot) of the incoming
    and outgoing edge vectors, which stays stable near 0 and pi.  Over a
    simple counterclockwise polygon the turns sum to ``2*pi``.
    """
    vs = p.vertices
    n = len(vs)
    turns = []
    for k in range(n):
        prev = vs[k] - vs[k - 1]
        nxt = vs[(k + 1) % n] - vs[k]
        if prev == 0 or nxt == 0:
            raise PolygonError(f"zero-length edge at vertex {k + 1}")
        cross = prev.real * nxt.imag - prev.imag * nxt.real
        dot = prev.real * nxt.real + prev.imag * nxt.imag
        turns.append(math.atan2(cross, dot))
    return turns


def internal_angles(p: Polygon) -> list[float]:
    """Interior angle at each vertex, in ``(0, 2*pi)``.

    Equal to pi minus the turning angle, so convex vertices fall in
    ``(0, pi)``, straight vertices give exactly pi, and reflex vertices give
    values in ``(pi, 2*pi)``.
    """
    return [math.pi - t for t in turning_angles(p)]


def similarity_apply(p: Polygon, a: complex, b: complex = 0j) -> Polygon:
    """Map every vertex through ``z -> a*z + b`` with ``a != 0``.

    Complex multiplication rotates and scales without conjugation, so
    orientation, angles and simplicity are preserved; the result therefore
    skips revalidation and keeps whatever validity the input had.
    """
    a = complex(a)
    b = complex(b)
    if a == 0:
        raise ValueError("similarity coefficient a must be nonzero")
    return Polygon(tuple(a * v + b for v in p.vertices), check=False)

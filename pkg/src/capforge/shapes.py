"""Boundary samplers with exact exterior maps, and gap-vs-n sweeps.

Circles and ellipses admit exact conformal maps from the outside of the unit
disk to their outside (identity scaling and the Joukowski-type map
``z -> ((a+b)*z + (a-b)/z) / 2``), so sampling the map at roots of unity
discretizes the boundary without introducing a second approximation error.
Midpoint refinement covers polygon chains.  ``gap_sweep`` runs the
uniform-defect cap construction over increasing n and records how the
closure gap behaves.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Sequence, Union

from .capcore import DefectProfile, construct_cap
from .geom import GEOM_TOL, Polygon, PolygonError, _diameter


@dataclass(frozen=True)
class Circle:
    """Circle of given radius; its exterior map is plain scaling."""

    radius: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError(f"radius must be positive, got {self.radius!r}")

    def map_point(self, z: complex) -> complex:
        return self.radius * z


@dataclass(frozen=True)
class Ellipse:
    """Axis-aligned ellipse with semi-axes ``a >= b > 0``.

    ``map_point`` is the exterior map of the unit-disk complement; on the
    unit circle it traces ``a*cos(t) + 1j*b*sin(t)`` counterclockwise.
    """

    semi_major: float
    semi_minor: float

    def __post_init__(self) -> None:
        a, b = self.semi_major, self.semi_minor
        if not (math.isfinite(a) and math.isfinite(b) and a >= b > 0.0):
            raise ValueError(f"semi-axes must satisfy a >= b > 0, got {a!r}, {b!r}")

    def map_point(self, z: complex) -> complex:
        a, b = self.semi_major, self.semi_minor
        return 0.5 * ((a + b) * z + (a - b) / z)


@dataclass(frozen=True)
class PolygonResample:
    """Refine an existing polygon's boundary by repeated midpoint insertion."""

    base: Polygon


BoundaryShape = Union[Circle, Ellipse, PolygonResample]


def midpoint_refine(p: Polygon) -> Polygon:
    """Insert the midpoint of every edge, doubling the vertex count.

    The new vertices sit on the boundary, so the enclosed region (and its
    signed area) is unchanged; the inserted vertices have straight angles.
    """
    vs = p.vertices
    n = len(vs)
    out = []
    for k in range(n):
        out.append(vs[k])
        out.append(0.5 * (vs[k] + vs[(k + 1) % n]))
    return Polygon(tuple(out))


def sample_boundary(shape: BoundaryShape, n: int) -> Polygon:
    """Polygon through n boundary samples of the shape.

    For circles and ellipses the samples are the exterior map evaluated at
    the n-th roots of unity, in counterclockwise order.  For
    ``PolygonResample`` the base polygon is midpoint-refined, so n must be
    the base vertex count times a power of two.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if isinstance(shape, PolygonResample):
        m = shape.base.n
        levels = 0
        target = m
        while target < n:
            target *= 2
            levels += 1
        if target != n:
            raise ValueError(
                f"resample count {n} must be the base vertex count {m} times a power of 2"
            )
        poly = shape.base
        for _ in range(levels):
            poly = midpoint_refine(poly)
        return poly

    pts = [shape.map_point(cmath.exp(complex(0.0, 2.0 * math.pi * k / n)))
           for k in range(n)]
    eps = GEOM_TOL * _diameter(pts)
    for k in range(n):
        if abs(pts[(k + 1) % n] - pts[k]) <= eps:
            raise PolygonError(f"coincident boundary samples at positions {k + 1}, {k + 2}")
    return Polygon(tuple(pts))


@dataclass(frozen=True)
class SweepRow:
    """One sweep record; a failed row carries NaN gaps and a cleared flag."""

    n: int
    gap_abs: float
    gap_rel: float
    positivity_ok: bool


@dataclass(frozen=True)
class SweepSeries:
    """Gap records over strictly increasing n."""

    rows: tuple[SweepRow, ...]

    def __post_init__(self) -> None:
        ns = [r.n for r in self.rows]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError(f"sweep rows must have strictly increasing n, got {ns}")

    def to_csv(self) -> str:
        """CSV with a fixed header and 17-significant-digit floats."""
        lines = ["n,gap_abs,gap_rel,positivity_ok"]
        for r in self.rows:
            flag = "true" if r.positivity_ok else "false"
            lines.append(f"{r.n},{r.gap_abs:.17g},{r.gap_rel:.17g},{flag}")
        return "\n".join(lines) + "\n"


def gap_sweep(shape: BoundaryShape, n_values: Sequence[int]) -> SweepSeries:
    """Run the uniform-defect construction at each n and record the gaps.

    Rows are independent; the curve is drawn past positivity failures so a
    row exists for every n.  A sampling failure is reported as a warning and
    leaves a NaN row rather than aborting the sweep.
    """
    ns = [int(n) for n in n_values]
    if not ns:
        raise ValueError("empty n list")
    if any(n < 3 for n in ns):
        raise ValueError(f"every n must be >= 3, got {ns}")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError(f"n values must be strictly increasing, got {ns}")

    rows = []
    for n in ns:
        try:
            poly = sample_boundary(shape, n)
            curve = construct_cap(poly, DefectProfile.uniform(poly.n),
                                  continue_on_failure=True)
            gap_abs = abs(curve.gap)
            rows.append(SweepRow(n, gap_abs, gap_abs / poly.perimeter,
                                 curve.positivity_ok))
        except (PolygonError, ValueError) as exc:
            warnings.warn(f"sweep row n={n} failed: {exc}", stacklevel=2)
            rows.append(SweepRow(n, math.nan, math.nan, False))
    return SweepSeries(tuple(rows))

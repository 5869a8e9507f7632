"""Constraint-side tooling for the closure condition.

The closure residual is complex-linear in the vertices, which makes three
things cheap: solving for one free vertex that closes the cap (the remaining
coefficient never vanishes, so the solution is unique), projecting an
arbitrary polygon onto the closure constraint with minimal total squared
vertex displacement, and classifying the small cases (triangles close iff
equilateral, quadrilaterals iff parallelograms).

The parallelogram family is exposed through ``q_tau``: base edge 0..1 and
third vertex ``tau`` in the upper half-plane, together with the
determinant-one integer Moebius action on ``tau``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .capcore import CLOSURE_TOL, CapCurve, _csum, omega, omega_power, satisfies_closed_cap
from .geom import Polygon, PolygonError, Vertex, edges

SHAPE_EQUILATERAL = "equilateral"
SHAPE_PARALLELOGRAM = "parallelogram"
SHAPE_GENERIC = "generic"


@dataclass(frozen=True)
class AffineCoeffs:
    """Gap as an affine function ``gap(v) = a*v + b`` of one free vertex.

    ``a`` equals ``(1 - omega) * omega**(j-2)`` for free index j and is never
    zero, so the zero-gap vertex is unique.
    """

    a: complex
    b: complex

    def __call__(self, v: complex) -> complex:
        return self.a * complex(v) + self.b


@dataclass(frozen=True)
class TauParameter:
    """Upper-half-plane parameter for the closing parallelogram family."""

    tau: complex

    def __post_init__(self) -> None:
        t = complex(self.tau)
        if not (math.isfinite(t.real) and math.isfinite(t.imag)):
            raise ValueError(f"tau must be finite, got {t!r}")
        if not t.imag > 0.0:
            raise ValueError(f"tau must have positive imaginary part, got {t!r}")
        object.__setattr__(self, "tau", t)


@dataclass(frozen=True)
class ClassificationVerdict:
    """Shape class, closure flag, and the diagnostic values behind them."""

    shape_class: str
    closes: bool
    witness: dict

    def to_json_dict(self) -> dict:
        return {
            "shape_class": self.shape_class,
            "closes": self.closes,
            "witness": dict(self.witness),
        }


def _coerce_tau(tau) -> complex:
    t = tau.tau if isinstance(tau, TauParameter) else complex(tau)
    if not t.imag > 0.0:
        raise ValueError(f"tau must have positive imaginary part, got {t!r}")
    return t


def affine_coeffs(fixed, free_index: int, n: int) -> AffineCoeffs:
    """Coefficients of the gap as a function of the free vertex.

    ``fixed`` is an iterable of ``(index, vertex)`` pairs using 1-based
    indices; together with ``free_index`` they must cover 1..n exactly.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if not 1 <= free_index <= n:
        raise ValueError(f"free index {free_index} out of range 1..{n}")
    seen: dict[int, complex] = {}
    for idx, v in fixed:
        idx = int(idx)
        if not 1 <= idx <= n:
            raise ValueError(f"fixed index {idx} out of range 1..{n}")
        if idx == free_index:
            raise ValueError(f"index {idx} is both fixed and free")
        if idx in seen:
            raise ValueError(f"fixed index {idx} given twice")
        seen[idx] = complex(v)
    if len(seen) != n - 1:
        raise ValueError(f"expected {n - 1} fixed vertices, got {len(seen)}")

    factor = 1.0 - omega(n)
    a = factor * omega_power(n, free_index - 2)
    b = _csum(factor * omega_power(n, k - 2) * v for k, v in seen.items())
    return AffineCoeffs(a, b)


def solve_free_vertex(fixed, free_index: int, n: int) -> Vertex:
    """The unique position of the free vertex that closes the cap.

    The assembled vertex chain then has zero gap; the caller must still check
    that it forms a valid simple counterclockwise polygon.
    """
    coeffs = affine_coeffs(fixed, free_index, n)
    return -coeffs.b / coeffs.a


def project_to_closed(p: Polygon) -> Polygon:
    """Minimally move all vertices so the closure residual vanishes.

    With residual ``s``, each vertex moves by ``-omega**-k * s/n``; since the
    constraint's coefficients all have unit modulus this is the smallest
    total squared displacement achieving it, and the map is idempotent.  The
    corrected chain can fail polygon validity (e.g. self-intersect); that is
    reported as a warning and the unchecked polygon is returned.
    """
    n = p.n
    _, residual = satisfies_closed_cap(p)
    step = residual / n
    corrected = tuple(v - omega_power(n, -k) * step
                      for k, v in enumerate(p.vertices, start=1))
    try:
        return Polygon(corrected)
    except PolygonError as exc:
        warnings.warn(f"projection produced an invalid polygon ({exc}); "
                      "returning it unchecked", stacklevel=2)
        return Polygon(corrected, check=False)


def classify_triangle(p: Polygon, tol: float = CLOSURE_TOL) -> ClassificationVerdict:
    """Triangles close exactly when they are equilateral.

    The edge-equality test and the closure test share the same relative
    tolerance so the equivalence is directly testable.
    """
    if p.n != 3:
        raise ValueError(f"expected a triangle, got {p.n} vertices")
    lengths = p.edge_lengths
    spread = (max(lengths) - min(lengths)) / max(lengths)
    closes, residual = satisfies_closed_cap(p, tol)
    shape = SHAPE_EQUILATERAL if spread <= tol else SHAPE_GENERIC
    witness = {
        "edge_spread_rel": spread,
        "residual_rel": abs(residual) / p.perimeter,
    }
    return ClassificationVerdict(shape, closes, witness)


def classify_quadrilateral(p: Polygon, tol: float = CLOSURE_TOL) -> ClassificationVerdict:
    """Quadrilaterals close exactly when they are parallelograms."""
    if p.n != 4:
        raise ValueError(f"expected a quadrilateral, got {p.n} vertices")
    sides = edges(p)
    # Opposite edges cancel in a parallelogram: s1 + s3 == 0.
    defect = abs(sides[0] + sides[2]) / p.perimeter
    closes, residual = satisfies_closed_cap(p, tol)
    shape = SHAPE_PARALLELOGRAM if defect <= tol else SHAPE_GENERIC
    witness = {
        "parallel_defect_rel": defect,
        "residual_rel": abs(residual) / p.perimeter,
    }
    return ClassificationVerdict(shape, closes, witness)


def q_tau(tau) -> Polygon:
    """Closing parallelogram with vertices 0, 1, tau, tau - 1.

    Any ``tau`` in the upper half-plane yields a valid counterclockwise
    parallelogram, and every such polygon satisfies the closure condition.
    """
    t = _coerce_tau(tau)
    return Polygon((0j, 1 + 0j, t, t - 1))


def modular_transform(tau, m) -> TauParameter:
    """Apply an integer Moebius map ``tau -> (a*tau + b) / (c*tau + d)``.

    ``m`` is a 2x2 integer matrix ((a, b), (c, d)) with determinant one; such
    maps preserve the upper half-plane.
    """
    t = _coerce_tau(tau)
    try:
        (a, b), (c, d) = m
    except (TypeError, ValueError):
        raise ValueError(f"expected a 2x2 matrix, got {m!r}")
    a, b, c, d = int(a), int(b), int(c), int(d)
    if a * d - b * c != 1:
        raise ValueError(f"matrix determinant must be 1, got {a * d - b * c}")
    return TauParameter((a * t + b) / (c * t + d))


def caps_similar(c1: CapCurve, c2: CapCurve, tol: float = CLOSURE_TOL) -> bool:
    """Whether two closed cap curves differ by a plane similarity ``a*z + b``.

    The map is fitted from the first two vertices of each curve (exact for a
    true similarity) and verified on the rest, within ``tol`` relative to the
    second curve's perimeter.  Curves of different length are never similar.
    """
    for curve in (c1, c2):
        if abs(curve.gap) > tol * curve.perimeter:
            raise ValueError("caps_similar requires closed cap curves")
    if len(c1.vertices) != len(c2.vertices):
        return False
    v = c1.vertices
    w = c2.vertices
    a = (w[1] - w[0]) / (v[1] - v[0])
    b = w[0] - a * v[0]
    scale = c2.perimeter
    worst = max(abs(a * vk + b - wk) for vk, wk in zip(v, w))
    return worst <= tol * scale

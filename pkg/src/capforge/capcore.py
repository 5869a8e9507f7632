"""Cap construction for polygons with prescribed per-vertex angular defects.

A cap of an n-gon is a second polygon with matching edge lengths, glued
edgewise along the boundary so that every glued vertex pair carries a chosen
angular defect (2*pi minus the total angle meeting there).  Walking the
polygon once and laying down cap edges with the prescribed angles produces a
cap curve of n+1 points; the construction succeeds exactly when that curve
returns to its starting point ("closes").

For the uniform defect ``4*pi/n`` the gap between the curve's endpoints is a
linear function of the vertices with coefficients built from the rotation
constant ``omega = exp(-4*pi*1j/n)``; closure is equivalent to
``sum(omega**k * v_k) == 0``.  Both the step-by-step construction and the
closed forms live here.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from functools import cached_property

from .geom import Polygon, Vertex, TWO_PI, edges, internal_angles, is_simple

#: Total angular defect of any polyhedral sphere.
TOTAL_DEFECT = 4.0 * math.pi

#: Absolute tolerance (radians) on the defect-sum invariant.
DEFECT_SUM_TOL = 1e-9

#: Default relative closure tolerance (scaled by perimeter).
CLOSURE_TOL = 1e-9

#: Prescribed cap angles in (0, ANGLE_EPS] are flagged as degenerate.
ANGLE_EPS = 1e-12


def omega(n: int) -> complex:
    """Rotation constant ``exp(-4*pi*1j/n)`` for the uniform defect on n vertices."""
    return cmath.exp(complex(0.0, -4.0 * math.pi / n))


def omega_power(n: int, k: int) -> complex:
    """``omega(n)**k`` evaluated as a single unit-circle exponential (any integer k)."""
    return cmath.exp(complex(0.0, -4.0 * math.pi * k / n))


def _csum(terms) -> complex:
    """Accurately summed complex total of an iterable of terms."""
    ts = list(terms)
    return complex(math.fsum(t.real for t in ts), math.fsum(t.imag for t in ts))


class CapConstructionError(ValueError):
    """Construction halted: a prescribed cap angle was not positive."""

    def __init__(self, vertex_index: int, angle: float):
        self.vertex_index = vertex_index
        self.angle = angle
        super().__init__(
            f"cannot construct cap: prescribed interior angle {angle:.6g} rad "
            f"at vertex {vertex_index} is not positive"
        )


@dataclass(frozen=True)
class DefectProfile:
    """Per-vertex angular defects (radians) summing to ``4*pi``.

    The first entry is carried for bookkeeping but never consumed by the
    construction walk, which prescribes angles only at vertices 2..n; it is
    validated solely through the sum invariant.
    """

    defects: tuple[float, ...]

    def __post_init__(self) -> None:
        ds = tuple(float(d) for d in self.defects)
        if len(ds) < 3:
            raise ValueError(f"defect profile needs at least 3 entries, got {len(ds)}")
        if not all(math.isfinite(d) for d in ds):
            raise ValueError("defect entries must be finite")
        total = math.fsum(ds)
        if abs(total - TOTAL_DEFECT) > DEFECT_SUM_TOL:
            raise ValueError(
                f"defects must sum to 4*pi (got {total!r}, off by {total - TOTAL_DEFECT:.3g})"
            )
        object.__setattr__(self, "defects", ds)

    def __len__(self) -> int:
        return len(self.defects)

    def __iter__(self):
        return iter(self.defects)

    @classmethod
    def uniform(cls, n: int) -> "DefectProfile":
        """Equal defect ``4*pi/n`` at each of ``n`` vertices."""
        if n < 3:
            raise ValueError(f"need at least 3 vertices, got {n}")
        return cls((TOTAL_DEFECT / n,) * n)


@dataclass(frozen=True)
class CapCurve:
    """Cap curve produced by the construction walk.

    ``vertices`` holds the n+1 chain points; the first two coincide with the
    source polygon's first two vertices.  ``cap_angles`` holds the prescribed
    interior angles at vertices 2..n and ``flags`` their positivity.
    """

    vertices: tuple[Vertex, ...]
    cap_angles: tuple[float, ...]
    flags: tuple[bool, ...]
    complete: bool

    @property
    def gap(self) -> complex:
        """Endpoint mismatch ``vertices[-1] - vertices[0]``; zero iff closed."""
        return self.vertices[-1] - self.vertices[0]

    @property
    def positivity_ok(self) -> bool:
        return all(self.flags)

    def edges(self) -> list[complex]:
        vs = self.vertices
        return [vs[k + 1] - vs[k] for k in range(len(vs) - 1)]

    @cached_property
    def perimeter(self) -> float:
        return math.fsum(abs(e) for e in self.edges())

    def to_json_dict(self) -> dict:
        return {
            "vertices": [[v.real, v.imag] for v in self.vertices],
            "cap_angles": list(self.cap_angles),
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class CapReport:
    """Aggregated closure/validity facts about one polygon's cap curve."""

    gap: complex
    gap_abs: float
    gap_rel: float
    closed: bool
    cap_simple: bool
    positivity_ok: bool
    omega: complex
    tolerance: float

    def to_json_dict(self) -> dict:
        return {
            "gap": [self.gap.real, self.gap.imag],
            "gap_abs": self.gap_abs,
            "gap_rel": self.gap_rel,
            "closed": self.closed,
            "cap_simple": self.cap_simple,
            "positivity_ok": self.positivity_ok,
            "omega": [self.omega.real, self.omega.imag],
            "tolerance": self.tolerance,
        }


def construct_cap(polygon: Polygon, defects: DefectProfile | None = None,
                  continue_on_failure: bool = False) -> CapCurve:
    """Run the step-by-step cap construction.

    Starting on the polygon's first edge, each step k = 2..n prescribes the
    cap-side interior angle ``2*pi - theta_k - kappa_k`` (polygon angle plus
    cap angle plus defect fill the full turn at the glued vertex), turns the
    current direction clockwise by the supplementary angle, and lays down an
    edge of the source length.  The rotation is applied as multiplication by
    a unit-modulus factor, renormalized each step to bound drift.

    A nonpositive prescribed angle normally raises
    :class:`CapConstructionError` naming the failing vertex;
    ``continue_on_failure`` draws the full curve anyway, for diagnostics and
    figures.
    """
    n = polygon.n
    if defects is None:
        defects = DefectProfile.uniform(n)
    if len(defects) != n:
        raise ValueError(
            f"defect profile has {len(defects)} entries, polygon has {n} vertices"
        )
    vs = polygon.vertices
    thetas = internal_angles(polygon)
    sides = edges(polygon)
    lengths = [abs(s) for s in sides]

    cap = [vs[0], vs[1]]
    direction = sides[0] / lengths[0]
    cap_angles: list[float] = []
    flags: list[bool] = []
    for k in range(1, n):
        theta_hat = TWO_PI - thetas[k] - defects.defects[k]
        positive = theta_hat > 0.0
        if not positive and not continue_on_failure:
            raise CapConstructionError(k + 1, theta_hat)
        if 0.0 < theta_hat <= ANGLE_EPS:
            warnings.warn(
                f"prescribed cap angle at vertex {k + 1} is within {ANGLE_EPS:g} rad of zero",
                stacklevel=2,
            )
        beta = math.pi - theta_hat
        direction *= cmath.exp(complex(0.0, -beta))
        direction /= abs(direction)
        cap.append(cap[-1] + lengths[k] * direction)
        cap_angles.append(theta_hat)
        flags.append(positive)

    complete = all(flags) or continue_on_failure
    return CapCurve(tuple(cap), tuple(cap_angles), tuple(flags), complete)


def gap_closed_form(p: Polygon) -> complex:
    """Endpoint gap of the uniform-defect cap curve, evaluated directly.

    Equals ``sum((1 - w) * w**(k-2) * v_k)`` over 1-based vertex indices with
    ``w = omega(n)``; matches the iterative construction's gap without
    walking the curve.
    """
    n = p.n
    factor = 1.0 - omega(n)
    return _csum(factor * omega_power(n, k - 2) * v
                 for k, v in enumerate(p.vertices, start=1))


def gap_general(p: Polygon, defects: DefectProfile) -> complex:
    """Endpoint gap for an arbitrary defect profile.

    Each edge contributes rotated by the accumulated defect of the vertices
    walked so far: ``sum(exp(-1j * (kappa_2 + ... + kappa_k)) * s_k)`` with an
    empty accumulator for the first edge.  Reduces to :func:`gap_closed_form`
    when the profile is uniform.
    """
    if len(defects) != p.n:
        raise ValueError(
            f"defect profile has {len(defects)} entries, polygon has {p.n} vertices"
        )
    terms = []
    phase = 0.0
    for k, s in enumerate(edges(p)):
        if k > 0:
            phase += defects.defects[k]
        terms.append(cmath.exp(complex(0.0, -phase)) * s)
    return _csum(terms)


def edge_rotation(p: Polygon) -> list[complex]:
    """Uniform-defect cap edges as rotations of the source edges.

    Edge k of the cap curve equals ``omega(n)**(k-1)`` times edge k of the
    polygon; moduli are preserved since the factor lies on the unit circle.
    For quadrilaterals this is the alternating pattern s1, -s2, s3, -s4.
    """
    n = p.n
    return [omega_power(n, k - 1) * s for k, s in enumerate(edges(p), start=1)]


def satisfies_closed_cap(p: Polygon, tol: float = CLOSURE_TOL) -> tuple[bool, complex]:
    """Closure test via the linear residual ``sum(omega**k * v_k)``.

    Returns ``(flag, residual)`` where the flag holds iff ``abs(residual)``
    is within ``tol`` times the perimeter.  The residual determines the cap
    curve's endpoint gap through ``gap = (1 - omega) * omega**-2 * residual``,
    so both tests vanish together.
    """
    n = p.n
    residual = _csum(omega_power(n, k) * v for k, v in enumerate(p.vertices, start=1))
    return abs(residual) <= tol * p.perimeter, residual


def cap_report(p: Polygon, defects: DefectProfile | None = None,
               tol: float = CLOSURE_TOL) -> CapReport:
    """Construct the cap curve and aggregate closure, simplicity and
    positivity facts.

    The curve is always drawn in full (failures only clear the positivity
    flag).  Simplicity is evaluated on the closed curve when the gap is
    within tolerance, otherwise on the open polyline.
    """
    curve = construct_cap(p, defects, continue_on_failure=True)
    gap = curve.gap
    gap_abs = abs(gap)
    gap_rel = gap_abs / p.perimeter
    closed = gap_rel <= tol
    if closed:
        simple = is_simple(curve.vertices[:-1], closed=True).simple
    else:
        simple = is_simple(curve.vertices, closed=False).simple
    return CapReport(
        gap=gap,
        gap_abs=gap_abs,
        gap_rel=gap_rel,
        closed=closed,
        cap_simple=simple,
        positivity_ok=curve.positivity_ok,
        omega=omega(p.n),
        tolerance=tol,
    )

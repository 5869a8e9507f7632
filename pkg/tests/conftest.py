"""Shared generators and corpora for the test suite."""

import cmath
import math
import random

import pytest

from capforge import DefectProfile, Polygon

TWO_PI = 2.0 * math.pi


def star_polygon(rng: random.Random, n: int, r_min: float = 0.45,
                 r_max: float = 1.55) -> Polygon:
    """Random simple counterclockwise n-gon, star-shaped around the origin.

    Angular gaps are built with a guaranteed floor of a quarter of the mean
    spacing, so edges never degenerate and no rejection loop is needed.
    """
    base = 0.25 * TWO_PI / n
    weights = [rng.random() + 1e-3 for _ in range(n)]
    slack = (TWO_PI - n * base) / math.fsum(weights)
    t = rng.uniform(0.0, TWO_PI)
    pts = []
    for w in weights:
        pts.append(rng.uniform(r_min, r_max) * cmath.exp(1j * t))
        t += base + slack * w
    return Polygon(tuple(pts))


def random_defects(rng: random.Random, n: int, wobble: float = 0.4) -> DefectProfile:
    """Valid defect profile: uniform plus zero-sum per-vertex noise."""
    mean = 2.0 * TWO_PI / n
    noise = [rng.uniform(-wobble, wobble) * mean for _ in range(n)]
    shift = math.fsum(noise) / n
    return DefectProfile(tuple(mean + d - shift for d in noise))


def regular_polygon(n: int, radius: float = 1.0) -> Polygon:
    return Polygon(tuple(radius * cmath.exp(2j * math.pi * k / n) for k in range(n)))


@pytest.fixture(scope="session")
def corpus() -> list[Polygon]:
    """1000 random simple counterclockwise polygons with 3 <= n <= 50."""
    rng = random.Random(20260809)
    return [star_polygon(rng, rng.randint(3, 50)) for _ in range(1000)]

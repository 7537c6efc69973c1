import math

import numpy as np
import pytest

from hopfgeo import SpherePoint, SU2Element, TangentVector


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_point(rng: np.random.Generator, n: int = 2) -> SpherePoint:
    v = rng.normal(size=2 * n)
    v /= np.linalg.norm(v)
    return SpherePoint(tuple(complex(v[2 * k], v[2 * k + 1]) for k in range(n)))


def random_tangent(rng: np.random.Generator, base: SpherePoint) -> TangentVector:
    n = base.n
    raw = [complex(a, b) for a, b in rng.normal(size=(n, 2))]
    radial = sum(c * z.conjugate() for c, z in zip(raw, base.coords)).real
    comps = tuple(c - radial * z for c, z in zip(raw, base.coords))
    return TangentVector(base, comps)


def random_su2(rng: np.random.Generator) -> SU2Element:
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return SU2Element(complex(v[0], v[1]), complex(v[2], v[3]))


def angle_gap(a: float, b: float) -> float:
    """Distance between two angles modulo 2*pi."""
    d = (a - b) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfgeo import (
    SpherePoint,
    SU2Element,
    decompose,
    hopf_project,
    normal_field,
    su2_act,
    su2_act_raw,
    su2_sending_to_base,
    vertical_field,
)
from hopfgeo.errors import DimensionMismatch, NotTangent
from hopfgeo.sphere import hermitian, vector_norm

from conftest import random_point, random_su2

SQ2 = math.sqrt(0.5)


coordinate = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)


@st.composite
def unit_points(draw, n_max=4):
    n = draw(st.integers(2, n_max))
    parts = draw(
        st.lists(st.tuples(coordinate, coordinate), min_size=n, max_size=n).filter(
            lambda ps: sum(a * a + b * b for a, b in ps) > 1e-2
        )
    )
    nrm = math.sqrt(sum(a * a + b * b for a, b in parts))
    return SpherePoint(tuple(complex(a / nrm, b / nrm) for a, b in parts))


class TestSpherePoint:
    def test_renormalizes_within_window(self):
        z = SpherePoint((1.0 + 1e-10, 0.0))
        assert abs(vector_norm(z.coords) - 1.0) < 1e-15

    def test_rejects_non_unit(self):
        with pytest.raises(ValueError):
            SpherePoint((0.5, 0.0))

    def test_rejects_n_below_two(self):
        with pytest.raises(DimensionMismatch):
            SpherePoint((1.0,))


class TestNormalAndVertical:
    def test_normal_is_identity_on_coords(self):
        for coords in [(1, 0), (0, 1j), (SQ2, SQ2)]:
            z = SpherePoint(coords)
            assert normal_field(z) == z.coords

    def test_vertical_examples(self):
        assert vertical_field(SpherePoint((1, 0))).components == (1j, 0j)
        assert vertical_field(SpherePoint((0, 1))).components == (0j, 1j)

    @given(unit_points())
    @settings(max_examples=60, deadline=None)
    def test_vertical_properties(self, z):
        v = vertical_field(z)
        prod = hermitian(v.components, z.coords)
        assert abs(prod.real) < 1e-12
        assert abs(prod.imag - 1.0) < 1e-12
        assert abs(v.norm - 1.0) < 1e-12


class TestDecompose:
    def test_pure_vertical(self):
        z = SpherePoint((1, 0))
        t = decompose(z, (1j, 0))
        assert t.vertical_part == pytest.approx(1.0, abs=1e-15)
        assert vector_norm(t.horizontal_part) < 1e-15

    def test_pure_horizontal(self):
        z = SpherePoint((1, 0))
        t = decompose(z, (0, 1))
        assert t.vertical_part == pytest.approx(0.0, abs=1e-15)
        assert t.horizontal_part == (0j, 1 + 0j)

    def test_mixed_example(self):
        # Oracle: vertical scalar = Re<v, V(z)> = Re(0.5i * conj(i)) = 0.5.
        z = SpherePoint((1, 0))
        t = decompose(z, (0.5j, 0.8 + 0.6j))
        assert t.vertical_part == pytest.approx(0.5, abs=1e-15)
        assert abs(t.horizontal_part[0]) < 1e-15
        assert t.horizontal_part[1] == pytest.approx(0.8 + 0.6j)

    def test_rejects_non_tangent(self):
        z = SpherePoint((1, 0))
        with pytest.raises(NotTangent):
            decompose(z, (0.5, 0.0))

    @given(unit_points(), st.lists(st.tuples(coordinate, coordinate), min_size=4, max_size=4))
    @settings(max_examples=60, deadline=None)
    def test_roundtrip(self, z, raw_parts):
        raw = [complex(a, b) for a, b in raw_parts[: z.n]]
        while len(raw) < z.n:
            raw.append(0j)
        radial = sum(c * w.conjugate() for c, w in zip(raw, z.coords)).real
        tangent = tuple(c - radial * w for c, w in zip(raw, z.coords))
        t = decompose(z, tangent)
        rebuilt = tuple(
            h + t.vertical_part * 1j * w for h, w in zip(t.horizontal_part, z.coords)
        )
        assert max(abs(a - b) for a, b in zip(rebuilt, tangent)) < 1e-12
        # horizontal part is Hermitian-orthogonal to the base
        assert abs(hermitian(t.horizontal_part, z.coords)) < 1e-12


class TestHopfProject:
    def test_phase_equivalence(self):
        a = hopf_project(SpherePoint((1, 0))).representative
        b = hopf_project(SpherePoint((1j, 0))).representative
        assert max(abs(x - y) for x, y in zip(a.coords, b.coords)) < 1e-15

    def test_bloch_poles_and_equator(self):
        assert hopf_project(SpherePoint((0, 1))).bloch == pytest.approx((0, 0, -1))
        # Oracle: Bloch formula at (1/sqrt2, 1/sqrt2) gives (1, 0, 0).
        assert hopf_project(SpherePoint((SQ2, SQ2))).bloch == pytest.approx((1, 0, 0))

    def test_bloch_none_above_n2(self):
        assert hopf_project(SpherePoint((1, 0, 0))).bloch is None

    @given(unit_points(), st.floats(0, 2 * math.pi, allow_nan=False))
    @settings(max_examples=100, deadline=None)
    def test_phase_invariance(self, z, theta):
        a = hopf_project(z).representative.coords
        b = hopf_project(z.phase_shifted(theta)).representative.coords
        assert max(abs(x - y) for x, y in zip(a, b)) < 1e-12


class TestSU2:
    def test_identity(self, rng):
        z = random_point(rng)
        assert su2_act(SU2Element(1, 0), z).coords == z.coords

    def test_swap_example(self):
        out = su2_act(SU2Element(0, 1), SpherePoint((1, 0)))
        assert out.coords == pytest.approx((0j, 1 + 0j))

    def test_unit_norm_preserved(self, rng):
        for _ in range(20):
            out = su2_act(random_su2(rng), random_point(rng))
            assert abs(vector_norm(out.coords) - 1.0) < 1e-12

    def test_hermitian_product_preserved(self, rng):
        for _ in range(50):
            phi = random_su2(rng)
            u, w = random_point(rng), random_point(rng)
            before = hermitian(u.coords, w.coords)
            after = hermitian(su2_act(phi, u).coords, su2_act(phi, w).coords)
            assert abs(after - before) < 1e-12

    def test_commutes_with_fiber_phase(self, rng):
        phi, z = random_su2(rng), random_point(rng)
        theta = 0.9
        a = su2_act(phi, z.phase_shifted(theta)).coords
        b = su2_act(phi, z).phase_shifted(theta).coords
        assert max(abs(x - y) for x, y in zip(a, b)) < 1e-12

    def test_rejects_higher_n(self):
        with pytest.raises(DimensionMismatch):
            su2_act(SU2Element(1, 0), SpherePoint((1, 0, 0)))

    def test_sending_to_base(self, rng):
        for _ in range(20):
            a = random_point(rng)
            phi = su2_sending_to_base(a)
            out = su2_act(phi, a)
            assert abs(out.coords[0] - 1.0) < 1e-12
            assert abs(out.coords[1]) < 1e-12

    def test_inverse(self, rng):
        phi = random_su2(rng)
        z = random_point(rng)
        back = su2_act(phi.inverse(), su2_act(phi, z))
        assert max(abs(x - y) for x, y in zip(back.coords, z.coords)) < 1e-12

    def test_raw_action_is_complex_linear(self, rng):
        phi = random_su2(rng)
        v = (0.3 + 0.4j, -0.1 + 0.2j)
        w = cmath.exp(0.7j)
        a = su2_act_raw(phi, (v[0] * w, v[1] * w))
        b = tuple(c * w for c in su2_act_raw(phi, v))
        assert max(abs(x - y) for x, y in zip(a, b)) < 1e-15

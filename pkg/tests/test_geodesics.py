import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfgeo import (
    GeneralGeodesic,
    S3GeodesicParams,
    SpherePoint,
    TangentVector,
    arc_length,
    check_horizontal,
    classify,
    clifford_torus_level,
    curve_rows,
    detect_near_rational,
    eval_general,
    eval_s3,
    hopf_project,
    s3_sampler,
    su2_act,
    su2_act_raw,
    velocity_general,
    velocity_s3,
)
from hopfgeo.errors import InvalidRatio
from hopfgeo.sphere import SU2Element, hermitian, vector_norm

from conftest import angle_gap, random_point, random_su2, random_tangent

TWO_PI = 2.0 * math.pi


def make_general(a_coords, v_coords) -> GeneralGeodesic:
    a = SpherePoint(a_coords)
    return GeneralGeodesic(a, TangentVector(a, v_coords))


def fd_velocity(params: S3GeodesicParams, s: float, h: float = 1e-6):
    zp = eval_s3(params, s + h).coords
    zm = eval_s3(params, s - h).coords
    return tuple((a - b) / (2 * h) for a, b in zip(zp, zm))


params_strategy = st.builds(
    S3GeodesicParams,
    u=st.floats(-0.95, 0.95),
    rho=st.floats(0.1, 12.0),
    alpha=st.floats(0.0, TWO_PI),
)


class TestEvalGeneral:
    def test_start_point(self, rng):
        for _ in range(5):
            a = random_point(rng, n=rng.integers(2, 4))
            g = GeneralGeodesic(a, random_tangent(rng, a))
            out = eval_general(g, 0.0)
            assert max(abs(x - y) for x, y in zip(out.coords, a.coords)) < 1e-15

    def test_great_circle_quarter_turn(self):
        # vf = 0: plain great circle, (1,0) -> (0,1) at s = pi/2.
        g = make_general((1, 0), (0, 1))
        out = eval_general(g, math.pi / 2)
        assert abs(out.coords[0]) < 1e-15
        assert out.coords[1] == pytest.approx(1.0 + 0j, abs=1e-15)

    def test_first_fiber_hit(self):
        # From (1,0) with v = (i vf, e^{i alpha}): at s = pi/sqrt(1+vf^2) the
        # curve returns to the fiber with phase pi (1 - vf/sqrt(1+vf^2)).
        vf, alpha = 0.7, 0.3
        g = make_general((1, 0), (1j * vf, cmath.exp(1j * alpha)))
        speed = math.sqrt(1 + vf * vf)
        s_hat = math.pi / speed
        out = eval_general(g, s_hat)
        expected_phase = math.pi * (1 - vf / speed)
        assert abs(out.coords[1]) < 1e-12
        assert out.coords[0] == pytest.approx(cmath.exp(1j * expected_phase), abs=1e-12)

    def test_unit_norm_along_curve(self, rng):
        for _ in range(10):
            n = int(rng.integers(2, 5))
            a = random_point(rng, n=n)
            g = GeneralGeodesic(a, random_tangent(rng, a))
            for s in rng.uniform(0, 10, size=10):
                assert abs(vector_norm(eval_general(g, s).coords) - 1.0) < 1e-12

    def test_horizontality_of_velocity(self, rng):
        for _ in range(10):
            a = random_point(rng, n=3)
            g = GeneralGeodesic(a, random_tangent(rng, a))
            for s in rng.uniform(0, 5, size=8):
                z = eval_general(g, s).coords
                dz = velocity_general(g, s)
                assert abs(hermitian(dz, z)) < 1e-9

    def test_factorization_projects_identically(self, rng):
        # The fiber phase factor is invisible to the Hopf projection: the
        # sub-Riemannian curve and its great-circle factor project equally.
        for _ in range(10):
            a = random_point(rng)
            t = random_tangent(rng, a)
            g = GeneralGeodesic(a, t)
            great_circle = GeneralGeodesic(
                a, t
            )  # same driving vector; remove the phase by hand below
            for s in rng.uniform(0, 3, size=5):
                nv = g.speed
                riemann = tuple(
                    az * math.cos(nv * s) + v / nv * math.sin(nv * s)
                    for az, v in zip(a.coords, t.components)
                )
                b1 = hopf_project(eval_general(g, s)).bloch
                b2 = hopf_project(SpherePoint(riemann)).bloch
                assert max(abs(x - y) for x, y in zip(b1, b2)) < 1e-10

    def test_su2_equivariance(self, rng):
        for _ in range(10):
            phi = random_su2(rng)
            a = random_point(rng)
            t = random_tangent(rng, a)
            g = GeneralGeodesic(a, t)
            a2 = su2_act(phi, a)
            g2 = GeneralGeodesic(a2, TangentVector(a2, su2_act_raw(phi, t.components)))
            for s in rng.uniform(0, 4, size=6):
                lhs = su2_act(phi, eval_general(g, s)).coords
                rhs = eval_general(g2, s).coords
                assert max(abs(x - y) for x, y in zip(lhs, rhs)) < 1e-10


class TestEvalS3:
    def test_start_point(self):
        p = S3GeodesicParams(0.4, 3.0, 1.2)
        assert eval_s3(p, 0.0).coords == pytest.approx((1 + 0j, 0j), abs=1e-15)

    def test_half_great_circle(self):
        p = S3GeodesicParams(0.0, math.pi, 0.0)
        out = eval_s3(p, 1.0)
        assert out.coords[0] == pytest.approx(-1 + 0j, abs=1e-12)
        assert abs(out.coords[1]) < 1e-12

    def test_quarter_point_example(self):
        # u=1/2, rho=2pi, alpha=0 at s=1/2: z = (i, 0).
        p = S3GeodesicParams(0.5, TWO_PI, 0.0)
        out = eval_s3(p, 0.5)
        assert out.coords[0] == pytest.approx(1j, abs=1e-12)
        assert abs(out.coords[1]) < 1e-12

    def test_agrees_with_eval_general(self, rng):
        for _ in range(20):
            p = S3GeodesicParams(rng.uniform(-0.9, 0.9), rng.uniform(0.2, 10), rng.uniform(0, TWO_PI))
            g = p.to_general()
            for s in rng.uniform(0, 1, size=5):
                a = eval_s3(p, s).coords
                b = eval_general(g, s).coords
                assert max(abs(x - y) for x, y in zip(a, b)) < 1e-12

    def test_rejects_bad_params(self):
        with pytest.raises(ValueError):
            S3GeodesicParams(1.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            S3GeodesicParams(0.0, -1.0, 0.0)

    @given(params_strategy, st.floats(0.0, 1.0))
    @settings(max_examples=150, deadline=None)
    def test_unit_norm(self, p, s):
        assert abs(vector_norm(eval_s3(p, s).coords) - 1.0) < 1e-12


class TestVelocityS3:
    def test_velocity_at_zero_great_circle(self):
        p = S3GeodesicParams(0.0, math.pi, 0.0)
        dz = velocity_s3(p, 0.0)
        assert dz[0] == pytest.approx(0j, abs=1e-15)
        assert dz[1] == pytest.approx(math.pi + 0j, abs=1e-15)

    def test_matches_finite_differences(self, rng):
        # Oracle: central differences of eval_s3 with step 1e-6, tol 1e-8.
        for _ in range(15):
            p = S3GeodesicParams(rng.uniform(-0.9, 0.9), rng.uniform(0.2, 8), rng.uniform(0, TWO_PI))
            for s in rng.uniform(0.01, 0.99, size=4):
                ana = velocity_s3(p, s)
                num = fd_velocity(p, s)
                assert max(abs(a - b) for a, b in zip(ana, num)) < 1e-8

    def test_horizontality(self, rng):
        for _ in range(15):
            p = S3GeodesicParams(rng.uniform(-0.9, 0.9), rng.uniform(0.2, 8), rng.uniform(0, TWO_PI))
            for s in np.linspace(0, 1, 7):
                prod = hermitian(velocity_s3(p, s), eval_s3(p, s).coords)
                assert abs(prod.real) < 1e-10
                assert abs(prod.imag) < 1e-10

    def test_constant_speed_from_finite_differences(self, rng):
        # The curve's speed is the horizontal norm rho*sqrt(1-u^2) at every s
        # (the driving vector has norm rho, but the curve velocity is its
        # horizontal part).  Oracle: finite differences on a grid.
        for _ in range(10):
            p = S3GeodesicParams(rng.uniform(-0.9, 0.9), rng.uniform(0.5, 8), rng.uniform(0, TWO_PI))
            expected = p.rho * p.r
            for s in np.linspace(0.05, 0.95, 7):
                speed = vector_norm(fd_velocity(p, s))
                assert speed == pytest.approx(expected, abs=1e-7)


class TestArcLength:
    def test_half_circle(self):
        assert arc_length(S3GeodesicParams(0.0, math.pi, 0.0)) == pytest.approx(math.pi)

    def test_antipodal_skew(self):
        assert arc_length(S3GeodesicParams(0.5, TWO_PI, 0.0)) == pytest.approx(
            math.pi * math.sqrt(3.0)
        )

    def test_length_vanishes_as_u_to_one(self):
        assert arc_length(S3GeodesicParams(1 - 1e-12, 4.0, 0.0)) < 1e-5

    def test_matches_speed_integral(self, rng):
        # Oracle: composite Simpson over finite-difference speeds.
        for _ in range(5):
            p = S3GeodesicParams(rng.uniform(-0.8, 0.8), rng.uniform(0.5, 7), rng.uniform(0, TWO_PI))
            n = 400
            s_grid = np.linspace(1e-5, 1 - 1e-5, 2 * n + 1)
            speeds = np.array([vector_norm(fd_velocity(p, s)) for s in s_grid])
            h = (s_grid[-1] - s_grid[0]) / (2 * n)
            simpson = h / 3 * (
                speeds[0]
                + speeds[-1]
                + 4 * speeds[1:-1:2].sum()
                + 2 * speeds[2:-2:2].sum()
            )
            # endpoints trimmed to keep the differences central; the mean
            # speed over any subinterval equals the full arc length
            mean_speed = simpson / (s_grid[-1] - s_grid[0])
            assert mean_speed == pytest.approx(arc_length(p), abs=1e-8)


class TestCheckHorizontal:
    def test_geodesics_pass(self, rng):
        for _ in range(5):
            p = S3GeodesicParams(rng.uniform(-0.9, 0.9), rng.uniform(0.5, 9), rng.uniform(0, TWO_PI))
            report = check_horizontal(s3_sampler(p), 128)
            assert report.passed

    def test_great_circle_passes(self):
        report = check_horizontal(s3_sampler(S3GeodesicParams(0.0, 2.0, 0.0)), 64)
        assert report.passed

    def test_phase_perturbed_curve_fails(self):
        # Negative control: z * e^{i eps s^2} violates horizontality by 2 eps s.
        eps = 1e-3
        p = S3GeodesicParams(0.3, 2.5, 0.4)

        def sampler(s):
            w = cmath.exp(1j * eps * s * s)
            z = eval_s3(p, s).coords
            dz = velocity_s3(p, s)
            pert = tuple(c * w for c in z)
            dpert = tuple((d + 2j * eps * s * c) * w for d, c in zip(dz, z))
            return pert, dpert

        report = check_horizontal(sampler, 64)
        assert not report.passed
        assert report.max_violation == pytest.approx(2 * eps, rel=0.05)


class TestClassify:
    def test_half_ratio(self):
        rep = classify((1, 2))
        assert rep.closed
        assert rep.minimal_period == pytest.approx(TWO_PI * math.sqrt(3.0), abs=1e-12)
        assert rep.loop_length == rep.minimal_period
        assert len(rep.fiber_hits) == 4
        phases = [th for _, th in rep.fiber_hits]
        assert phases == pytest.approx(
            [math.pi / 2, math.pi, 3 * math.pi / 2, 0.0], abs=1e-12
        )
        assert rep.segment_length == pytest.approx(math.pi * math.sqrt(3.0) / 2, abs=1e-12)
        assert rep.vertical_speed == pytest.approx(1 / math.sqrt(3.0))

    def test_great_circle(self):
        rep = classify((0, 1))
        assert rep.closed and rep.minimal_period == pytest.approx(TWO_PI)
        assert [th for _, th in rep.fiber_hits] == pytest.approx([math.pi, 0.0], abs=1e-12)

    def test_irrational_input(self):
        rep = classify(1 / math.sqrt(2.0))
        assert not rep.closed
        assert rep.vertical_speed == pytest.approx(1.0, abs=1e-12)
        assert rep.segment_length == pytest.approx(math.pi / math.sqrt(2.0), abs=1e-12)
        assert rep.minimal_period is None and rep.loop_length is None

    def test_open_hit_phases(self):
        c = 1 / math.sqrt(2.0)
        rep = classify(c, open_hits=5)
        for n, (s, th) in enumerate(rep.fiber_hits, start=1):
            assert s == pytest.approx(n * math.pi * math.sqrt(1 - c * c), abs=1e-12)
            assert angle_gap(th, math.pi * n * (1 - c)) < 1e-12

    def test_rejects_bad_input(self):
        with pytest.raises(InvalidRatio):
            classify((2, 4))
        with pytest.raises(InvalidRatio):
            classify((3, 2))
        with pytest.raises(InvalidRatio):
            classify(1.5)

    def test_closed_curve_returns_to_start(self):
        # Theorem-level check: the (p, q) geodesic with rho = 2 pi q closes.
        for p_int, q_int in [(1, 2), (1, 3), (2, 3), (3, 4)]:
            par = S3GeodesicParams(p_int / q_int, TWO_PI * q_int, 0.7)
            end = eval_s3(par, 1.0)
            assert abs(end.coords[0] - 1.0) < 1e-9
            assert abs(end.coords[1]) < 1e-9

    def test_detect_near_rational(self):
        assert detect_near_rational(0.5) == (1, 2)
        assert detect_near_rational(0.5 + 5e-10) == (1, 2)
        assert detect_near_rational(1 / math.sqrt(2.0)) is None
        assert detect_near_rational(0.0) == (0, 1)


class TestCliffordTorus:
    def test_known_values(self):
        assert clifford_torus_level(0.0) == 0.5
        assert clifford_torus_level(1.0) == pytest.approx(1 / (4 - 2 * math.sqrt(2.0)))

    def test_limit_towards_one(self):
        assert clifford_torus_level(1e6) == pytest.approx(1.0, abs=1e-5)
        assert 0.5 < clifford_torus_level(0.3) < 1.0

    def test_translated_curve_stays_on_torus(self, rng):
        for _ in range(20):
            vf = rng.uniform(0.0, 4.0)
            alpha = rng.uniform(0, TWO_PI)
            level = clifford_torus_level(vf)
            rho = math.sqrt(level)
            w_dir = cmath.exp(1j * alpha)
            phi = SU2Element(rho, 1j * w_dir * math.sqrt(1 - level))
            a = SpherePoint((1, 0))
            g = GeneralGeodesic(a, TangentVector(a, (1j * vf, w_dir)))
            for s in np.linspace(0, 1, 33):
                w = su2_act(phi, eval_general(g, s))
                assert abs(abs(w.coords[0]) ** 2 - level) < 1e-10


class TestCurveRows:
    def test_shape_and_sphere_constraint(self):
        rows = curve_rows(S3GeodesicParams(0.4, 5.0, 1.0), 33)
        assert len(rows) == 33
        for s, re1, im1, re2, im2 in rows:
            assert abs(re1**2 + im1**2 + re2**2 + im2**2 - 1.0) < 1e-12

    def test_rejects_single_sample(self):
        with pytest.raises(ValueError):
            curve_rows(S3GeodesicParams(0.0, 1.0, 0.0), 1)

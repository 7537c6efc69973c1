"""Closed-form normal sub-Riemannian geodesics on S^(2n-1) and their structure.

A geodesic through ``a`` is a great circle multiplied by a compensating fiber
phase:

    gamma(s) = (a cos(|v| s) + (v / |v|) sin(|v| s)) * e^{-i s vf},

where ``v`` drives the great-circle factor and ``vf`` is its signed vertical
component.  Note gamma'(0) is the *horizontal part* of v: the curve is
horizontal everywhere and its speed is the constant |v_H|.

On S^3 the same curve from the base point (1, 0) is parametrized over
s in [0, 1] by a triple (u, rho, alpha):

    z1(s) = e^{-i u rho s} (cos(rho s) + i u sin(rho s)),
    z2(s) = sqrt(1 - u^2) e^{-i (u rho s + alpha)} sin(rho s),

with total arc length rho * sqrt(1 - u^2).  The two clocks (arc length vs the
[0, 1] parameter) are related by that factor; conversions are explicit here
so the two never get silently mixed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import InvalidRatio
from .sphere import (
    TWO_PI,
    SpherePoint,
    TangentVector,
    hermitian,
    vector_norm,
)


@dataclass(frozen=True)
class GeneralGeodesic:
    """Initial data (a, v) for a geodesic on S^(2n-1).

    ``v`` is the initial velocity of the Riemannian great-circle factor; the
    geodesic itself starts with velocity v's horizontal part.
    """

    a: SpherePoint
    v: TangentVector

    def __post_init__(self) -> None:
        if self.v.base is not self.a and self.v.base.coords != self.a.coords:
            raise ValueError("velocity is not based at the start point")
        if self.v.norm <= 0.0:
            raise ValueError("zero initial velocity")

    @property
    def speed(self) -> float:
        return self.v.norm

    @property
    def vertical_speed(self) -> float:
        return self.v.vertical_part


def eval_general(g: GeneralGeodesic, s: float) -> SpherePoint:
    """Evaluate the geodesic at parameter s (arc length iff |v_H| = 1)."""
    nv = g.speed
    vf = g.vertical_speed
    c, sn = math.cos(nv * s), math.sin(nv * s)
    w = cmath.exp(-1j * s * vf)
    return SpherePoint(
        tuple((a * c + v / nv * sn) * w for a, v in zip(g.a.coords, g.v.components))
    )


def velocity_general(g: GeneralGeodesic, s: float) -> tuple[complex, ...]:
    """Analytic derivative of eval_general with respect to s."""
    nv = g.speed
    vf = g.vertical_speed
    c, sn = math.cos(nv * s), math.sin(nv * s)
    w = cmath.exp(-1j * s * vf)
    out = []
    for a, v in zip(g.a.coords, g.v.components):
        pos = a * c + v / nv * sn
        vel = -a * nv * sn + v * c
        out.append((vel - 1j * vf * pos) * w)
    return tuple(out)


@dataclass(frozen=True)
class S3GeodesicParams:
    """The (u, rho, alpha) form of an S^3 geodesic from (1, 0) over s in [0, 1].

    u in (-1, 1) is the normalized vertical speed, rho > 0 the total parameter
    speed, alpha the horizontal direction phase as it appears in
    z2(s) = r e^{-i(u rho s + alpha)} sin(rho s); alpha is stored reduced to
    [0, 2*pi).  r = sqrt(1 - u^2).
    """

    u: float
    rho: float
    alpha: float

    def __post_init__(self) -> None:
        if not abs(self.u) < 1.0:
            raise ValueError(f"u must lie in (-1, 1), got {self.u!r}")
        if not self.rho > 0.0:
            raise ValueError(f"rho must be positive, got {self.rho!r}")
        object.__setattr__(self, "alpha", float(self.alpha) % TWO_PI)

    @property
    def r(self) -> float:
        return math.sqrt(1.0 - self.u * self.u)

    def initial_velocity(self) -> tuple[complex, complex]:
        """The great-circle driving vector v with (u, rho, alpha) conventions.

        v = (i u rho, r rho e^{-i alpha}); feeding (a=(1,0), v) to
        eval_general reproduces eval_s3 exactly.
        """
        return (1j * self.u * self.rho, self.r * self.rho * cmath.exp(-1j * self.alpha))

    def to_general(self) -> GeneralGeodesic:
        a = SpherePoint((1.0, 0.0))
        return GeneralGeodesic(a, TangentVector(a, self.initial_velocity()))


def eval_s3(params: S3GeodesicParams, s: float) -> SpherePoint:
    """Evaluate the S^3 geodesic at s; z(0) = (1, 0)."""
    u, rho = params.u, params.rho
    ph = cmath.exp(-1j * u * rho * s)
    z1 = ph * complex(math.cos(rho * s), u * math.sin(rho * s))
    z2 = params.r * ph * cmath.exp(-1j * params.alpha) * math.sin(rho * s)
    return SpherePoint((z1, z2))


def velocity_s3(params: S3GeodesicParams, s: float) -> tuple[complex, complex]:
    """Analytic dz/ds of eval_s3.

    The u-phase and rotation terms cancel in z1, leaving
    dz1 = -rho (1-u^2) e^{-i u rho s} sin(rho s); the velocity is horizontal
    (<dz, z> = 0 identically) with constant norm rho * sqrt(1 - u^2).
    """
    u, rho, r = params.u, params.rho, params.r
    ph = cmath.exp(-1j * u * rho * s)
    dz1 = -rho * r * r * ph * math.sin(rho * s)
    dz2 = (
        r
        * rho
        * ph
        * cmath.exp(-1j * params.alpha)
        * complex(math.cos(rho * s), -u * math.sin(rho * s))
    )
    return (dz1, dz2)


def arc_length(params: S3GeodesicParams) -> float:
    """Length of the curve over s in [0, 1]: rho * sqrt(1 - u^2)."""
    return params.rho * params.r


def arc_length_to_param(params: S3GeodesicParams, ell: float) -> float:
    """Convert arc length along the curve to the s in [0, 1] clock."""
    return ell / arc_length(params)


Sampler = Callable[[float], tuple[Sequence[complex], Sequence[complex]]]


@dataclass(frozen=True)
class HorizontalityReport:
    max_violation: float
    grid_size: int

    @property
    def passed(self) -> bool:
        return self.max_violation < 1e-9


def check_horizontal(sampler: Sampler, grid_size: int) -> HorizontalityReport:
    """Max of |<curve', curve>| over a uniform s-grid in [0, 1].

    PASS means the curve is horizontal to 1e-9; both the contact form and the
    Hermitian-orthogonality statements of horizontality reduce to this number.
    """
    worst = 0.0
    for k in range(grid_size):
        s = k / (grid_size - 1) if grid_size > 1 else 0.0
        point, vel = sampler(s)
        worst = max(worst, abs(hermitian(tuple(vel), tuple(point))))
    return HorizontalityReport(worst, grid_size)


def s3_sampler(params: S3GeodesicParams) -> Sampler:
    """Point/velocity sampler of an S^3 geodesic, for check_horizontal."""

    def sample(s: float) -> tuple[Sequence[complex], Sequence[complex]]:
        return eval_s3(params, s).coords, velocity_s3(params, s)

    return sample


@dataclass(frozen=True)
class ClassificationReport:
    """Open/closed verdict with periods and fiber intersection data.

    Times are in arc-length units (the curve runs at unit horizontal speed).
    For a closed geodesic (ratio p/q) the report covers one minimal period:
    2q fiber hits and loop length 2*pi*sqrt(q^2 - p^2).  For an open geodesic
    p, q, minimal_period and loop_length are None and fiber_hits lists the
    first few intersections.
    """

    closed: bool
    vertical_speed: float
    segment_length: float
    fiber_hits: tuple[tuple[float, float], ...]
    p: int | None = None
    q: int | None = None
    minimal_period: float | None = None
    loop_length: float | None = None

    def to_dict(self) -> dict:
        out: dict = {
            "closed": self.closed,
            "vertical_speed": self.vertical_speed,
            "segment_length": self.segment_length,
        }
        if self.closed:
            out.update(
                {
                    "p": self.p,
                    "q": self.q,
                    "minimal_period": self.minimal_period,
                    "loop_length": self.loop_length,
                }
            )
        out["fiber_hits"] = [[s, theta] for s, theta in self.fiber_hits]
        return out


def classify(
    c: float | tuple[int, int] | Fraction, open_hits: int = 8
) -> ClassificationReport:
    """Classify the geodesic with c = |v_F| / sqrt(1 + |v_F|^2) in [0, 1).

    The rational/irrational dichotomy cannot be decided from a float, so it
    is an input contract: pass an exact integer pair (p, q) (coprime,
    0 <= p < q) for the closed branch, or a float for the open branch.  Use
    detect_near_rational() to probe a float before deciding.
    """
    if isinstance(c, tuple) or isinstance(c, Fraction):
        if isinstance(c, Fraction):
            p, q = c.numerator, c.denominator
        else:
            p, q = c
        if q <= 0 or not (0 <= p < q) or math.gcd(p, q) != 1:
            raise InvalidRatio(f"need coprime 0 <= p < q, got p={p}, q={q}")
        vf = p / math.sqrt(q * q - p * p)
        period = TWO_PI * math.sqrt(q * q - p * p)
        segment = period / (2 * q)
        hits = tuple(
            (n * segment, (math.pi * n * (q - p) / q) % TWO_PI) for n in range(1, 2 * q + 1)
        )
        return ClassificationReport(
            closed=True,
            vertical_speed=vf,
            segment_length=segment,
            fiber_hits=hits,
            p=p,
            q=q,
            minimal_period=period,
            loop_length=period,
        )

    cf = float(c)
    if not (0.0 <= cf < 1.0):
        raise InvalidRatio(f"c must lie in [0, 1), got {cf!r}")
    vf = cf / math.sqrt(1.0 - cf * cf)
    segment = math.pi * math.sqrt(1.0 - cf * cf)  # = pi / sqrt(1 + vf^2)
    hits = tuple(
        (n * segment, (math.pi * n * (1.0 - cf)) % TWO_PI) for n in range(1, open_hits + 1)
    )
    return ClassificationReport(
        closed=False, vertical_speed=vf, segment_length=segment, fiber_hits=hits
    )


def detect_near_rational(
    c: float, q_max: int = 64, tol: float = 1e-9
) -> tuple[int, int] | None:
    """Report (p, q) if c is within tol of a rational with denominator <= q_max.

    Detection only: classify() never switches branches on its own.
    """
    if not (0.0 <= c < 1.0):
        return None
    frac = Fraction(c).limit_denominator(q_max)
    if abs(c - float(frac)) <= tol and 0 <= frac.numerator < frac.denominator:
        return (frac.numerator, frac.denominator)
    return None


def clifford_torus_level(vf: float) -> float:
    """The |w1|^2 level of the Clifford torus carrying the translated geodesic.

    rho^2 = 1 / (1 + (sqrt(1 + vf^2) - vf)^2); 1/2 at vf = 0, increasing to 1
    as vf -> infinity.  Left-translating the geodesic with vertical speed vf
    by phi = (rho, i * v_H * sqrt(1 - rho^2)) pins |w1(s)|^2 to this value.
    """
    if vf < 0.0:
        raise ValueError(f"vf must be >= 0, got {vf!r}")
    gap = math.sqrt(1.0 + vf * vf) - vf
    return 1.0 / (1.0 + gap * gap)


def curve_rows(
    params: S3GeodesicParams, samples: int
) -> list[tuple[float, float, float, float, float]]:
    """Uniform samples of the curve as (s, Re z1, Im z1, Re z2, Im z2) rows."""
    if samples < 2:
        raise ValueError("need at least 2 samples")
    rows = []
    for k in range(samples):
        s = k / (samples - 1)
        z1, z2 = eval_s3(params, s).coords
        rows.append((s, z1.real, z1.imag, z2.real, z2.imag))
    return rows


def norm_of(v: Sequence[complex]) -> float:
    """Real norm of a complex component vector (convenience re-export)."""
    return vector_norm(tuple(v))

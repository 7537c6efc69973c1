"""Geodesic boundary value problem on S^3 from the base point (1, 0).

Endpoints fall into four classes — fiber, antipodal, horizontal sphere and
general position — each with its own solver.  The fiber and antipodal classes
have fully explicit solutions; the other two reduce to scalar transcendental
equations solved by uniform scanning for sign changes followed by bisection.
Bracketing is used deliberately: the functions involved have poles and
plateaus, and every candidate root is verified against the raw endpoint
equations before it is returned, which also filters the spurious crossings
the modulus equations admit.

All solvers are pure functions of (endpoint, config); solution lists are
deduplicated and sorted by (length, q, p, sign u, u, rho) so output order is
reproducible.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    DegenerateOmega,
    DomainError,
    EndpointOnSpecialLocus,
    NoSolutionWithinQmax,
    NotOnHorizontalSphere,
    OmegaOutOfRange,
)
from .jsonfmt import render
from .sphere import TWO_PI, FiberPhase, SpherePoint

CASE_FIBER = "fiber"
CASE_ANTIPODAL = "antipodal"
CASE_HORIZONTAL = "horizontal-sphere"
CASE_GENERAL = "general"

# Family markers: an isolated branch root vs a rotational 1-parameter family
# (alpha free, reported canonically as alpha = 0).
FAMILY_ISOLATED = "isolated"
FAMILY_CIRCLE = "circle"

RESIDUAL_TOL = 1e-9
BOUNDARY_TOL = 1e-9


class BoundaryRootWarning(UserWarning):
    """A root landed within tolerance of the u-domain boundary and was dropped."""


@dataclass(frozen=True)
class SolverConfig:
    q_max: int = 8
    root_tol: float = 1e-12
    scan_points: int = 2048
    max_fiber_n: int = 16

    def __post_init__(self) -> None:
        if self.q_max < 0 or self.scan_points < 8 or self.max_fiber_n < 1:
            raise ValueError("solver configuration values must be positive")
        if not (0.0 < self.root_tol < 1e-6):
            raise ValueError("root_tol must lie in (0, 1e-6)")


@dataclass(frozen=True)
class Endpoint:
    """A target point (z1, z2) on S^3 with its solver case tag.

    theta1/theta2 are arguments in [-pi, pi).  ``case_eps`` controls the
    dispatch boundary between the special loci and the general case.
    """

    z1: complex
    z2: complex
    case_eps: float = 1e-10
    abs_z1: float = field(init=False)
    abs_z2: float = field(init=False)
    theta1: float = field(init=False)
    theta2: float = field(init=False)
    case: str = field(init=False)

    def __post_init__(self) -> None:
        point = SpherePoint((self.z1, self.z2))  # validates and renormalizes
        z1, z2 = point.coords
        object.__setattr__(self, "z1", z1)
        object.__setattr__(self, "z2", z2)
        object.__setattr__(self, "abs_z1", abs(z1))
        object.__setattr__(self, "abs_z2", abs(z2))
        object.__setattr__(self, "theta1", _arg(z1))
        object.__setattr__(self, "theta2", _arg(z2))
        eps = self.case_eps
        if abs(z1 + 1.0) < eps:
            case = CASE_ANTIPODAL
        elif abs(z2) < eps:
            case = CASE_FIBER
        elif abs(z1.imag) < eps:
            case = CASE_HORIZONTAL
        else:
            case = CASE_GENERAL
        object.__setattr__(self, "case", case)

    @property
    def fiber_omega(self) -> float:
        return self.theta1 % TWO_PI


@dataclass(frozen=True)
class BranchSolution:
    """One solved geodesic branch: signs, winding indices and (u, rho, alpha).

    sigma1/sigma2 are the signs of cos(rho) and sin(rho) (0 on the degenerate
    loci rho = pi*m where the family marker takes over).  For fiber and
    antipodal solutions alpha is a genuine free parameter; those carry
    family = "circle" with alpha = 0 reported canonically.
    """

    sigma1: int
    sigma2: int
    p: int
    q: int
    u: float
    rho: float
    alpha: float
    length: float
    residual: float
    family: str = FAMILY_ISOLATED

    def to_dict(self) -> dict:
        return {
            "sigma1": self.sigma1,
            "sigma2": self.sigma2,
            "p": self.p,
            "q": self.q,
            "u": self.u,
            "rho": self.rho,
            "alpha": self.alpha,
            "length": self.length,
            "residual": self.residual,
            "family": self.family,
        }


@dataclass(frozen=True)
class FiberSolution:
    """The n-th geodesic reaching a point of the start fiber.

    The horizontal direction is a free parameter: on S^3 any alpha works
    (a circle of geodesics); on S^(2n-1) the family is the (2n-3)-sphere of
    unit horizontal directions.  ``reflected`` marks solutions obtained from
    the spherical symmetry omega -> 2*pi - omega; their vertical speed is
    negated.
    """

    n: int
    vertical_speed: float
    ratio: float  # c = vf / sqrt(1 + vf^2), signed
    length: float
    reflected: bool
    family: str = FAMILY_CIRCLE

    def to_branch(self) -> BranchSolution:
        u = self.ratio
        rho = math.pi * self.n
        res = endpoint_residual(u, rho, 0.0, *_endpoint_raw(u, rho, 0.0))
        return BranchSolution(
            sigma1=_sign(math.cos(rho)),
            sigma2=0,
            p=0,
            q=self.n,
            u=u,
            rho=rho,
            alpha=0.0,
            length=self.length,
            residual=res,
            family=FAMILY_CIRCLE,
        )


def solutions_to_json(solutions: list[BranchSolution]) -> str:
    """Serialize a solution list per the fixed wire schema."""
    return render([s.to_dict() for s in solutions])


# --- endpoint equations and special functions --------------------------------


def _arg(z: complex) -> float:
    """Argument in [-pi, pi)."""
    th = cmath.phase(z)
    return -math.pi if th == math.pi else th


def _sign(x: float) -> int:
    return 0 if x == 0.0 else (1 if x > 0.0 else -1)


def _endpoint_raw(u: float, rho: float, alpha: float) -> tuple[complex, complex]:
    """Endpoint (z1, z2) of the geodesic (u, rho, alpha) at s = 1."""
    r = math.sqrt(max(1.0 - u * u, 0.0))
    ph = cmath.exp(-1j * u * rho)
    z1 = ph * complex(math.cos(rho), u * math.sin(rho))
    z2 = r * ph * cmath.exp(-1j * alpha) * math.sin(rho)
    return z1, z2


def endpoint_residual(
    u: float, rho: float, alpha: float, z1: complex, z2: complex
) -> float:
    """Complex 2-norm gap between the geodesic endpoint and the target."""
    w1, w2 = _endpoint_raw(u, rho, alpha)
    return math.hypot(abs(w1 - z1), abs(w2 - z2))


def _alpha_from(u: float, rho: float, theta2: float) -> float:
    """alpha solving arg z2 = arg(r e^{-i(u rho + alpha)} sin rho) = theta2."""
    a = -theta2 - u * rho
    if math.sin(rho) < 0.0:
        a += math.pi
    return a % TWO_PI


def psi_function(rho: float, z1: float) -> float:
    """Psi(rho) = rho * sqrt(z1^2 - cos^2 rho) / |sin rho|.

    Defined on the intervals where |cos rho| <= |z1| and sin rho != 0;
    vanishes at the endpoints of each such interval.  Its crossings of
    pi/2 + pi*m locate the vertical asymptotes of Phi.
    """
    d = z1 * z1 - math.cos(rho) ** 2
    s = abs(math.sin(rho))
    if d < 0.0 or s == 0.0:
        raise DomainError(f"rho = {rho!r} outside the definition intervals")
    return rho * math.sqrt(d) / s


def phi_function(rho: float, z1: float) -> float:
    """Phi(rho) = cos(rho) / cos(Psi(rho)); horizontal endpoints solve Phi = z1.

    Vanishes at pi/2 + pi*n and blows up where Psi crosses pi/2 + pi*m.
    """
    return math.cos(rho) / math.cos(psi_function(rho, z1))


def b_function(u: float, z1_abs: float, z2_abs: float) -> float:
    """The odd phase budget B(u) of the general-case branch equations.

    B(u) = arccot(sqrt(z1^2-u^2) / (u z2)) - u * arccot(sqrt(z1^2-u^2) / z2)
    with the (0, pi) arccot branch for u > 0, extended oddly and continuously
    through B(0) = 0 — computed as atan2(u*z2, s) - u*atan2(z2, s) with
    s = sqrt(z1^2 - u^2), which is that extension.  |B| <= pi/2 and
    B(+-z1) = +-(pi/2)(1 - z1).
    """
    if abs(u) > z1_abs:
        raise DomainError(f"|u| = {abs(u)!r} exceeds |z1| = {z1_abs!r}")
    s = math.sqrt(max(z1_abs * z1_abs - u * u, 0.0))
    return math.atan2(u * z2_abs, s) - u * math.atan2(z2_abs, s)


def _base_angle(u: float, z1_abs: float, z2_abs: float) -> float:
    """arccot(sqrt(|z1|^2 - u^2) / |z2|) in (0, pi/2]: rho modulo its winding."""
    s = math.sqrt(max(z1_abs * z1_abs - u * u, 0.0))
    return math.atan2(z2_abs, s)


def horizontal_intervals(z1: float, n_max: int) -> list[tuple[int, float, float]]:
    """The definition intervals D_n, n >= 1, of Phi for a real endpoint z1."""
    c0 = math.acos(abs(z1))
    return [(n, c0 + math.pi * n, math.pi * (n + 1) - c0) for n in range(1, n_max + 1)]


def _bisect(f, a: float, b: float, fa: float | None = None) -> float:
    """Bisection on a sign-change bracket, run to machine precision."""
    if fa is None:
        fa = f(a)
    if fa == 0.0:
        return a
    for _ in range(200):
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        fm = f(m)
        if fm == 0.0:
            return m
        if (fa < 0.0) == (fm < 0.0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


# --- fiber endpoints ----------------------------------------------------------


def solve_fiber(omega: FiberPhase | float, n_max: int = 16) -> list[FiberSolution]:
    """All geodesics from a to a*e^{i omega}, by fiber intersection index n.

    The n-th solution has vertical speed (pi n - w)/sqrt(w (2 pi n - w)) and
    length sqrt(w (2 pi n - w)), where w is omega reduced to (0, pi] by the
    spherical symmetry omega -> 2*pi - omega (reflected solutions carry the
    flag and a negated vertical speed).  Lengths increase strictly with n;
    n = 1 realizes the Carnot-Caratheodory distance sqrt(omega(2pi - omega)).
    """
    w = omega.omega if isinstance(omega, FiberPhase) else float(omega)
    if w == 0.0:
        raise DegenerateOmega("omega = 0: distance 0, no geodesic needed")
    if not (0.0 < w < TWO_PI):
        raise OmegaOutOfRange(f"omega must lie in (0, 2*pi), got {w!r}")
    reflected = w > math.pi
    wr = TWO_PI - w if reflected else w
    out = []
    for n in range(1, n_max + 1):
        length = math.sqrt(wr * (TWO_PI * n - wr))
        vf = (math.pi * n - wr) / length
        c = 1.0 - wr / (math.pi * n)
        if reflected:
            vf, c = -vf, -c
        out.append(
            FiberSolution(n=n, vertical_speed=vf, ratio=c, length=length, reflected=reflected)
        )
    return out


# --- antipodal endpoint -------------------------------------------------------


def solve_antipodal(config: SolverConfig = SolverConfig()) -> list[BranchSolution]:
    """All geodesic families from (1, 0) to (-1, 0) with rho = pi*m, m <= q_max.

    For even m, u = (2p+1)/m with -m/2 <= p <= m/2 - 1; for odd m, u = 2p/m
    with |p| <= (m-1)/2.  alpha is arbitrary (rotational symmetry): each entry
    is a circle family reported at alpha = 0.  Lengths are
    pi*sqrt(m^2 - (2p+1)^2) and pi*sqrt(m^2 - 4 p^2); the minimizer is
    (m, p) = (1, 0), the half great circle of length pi.
    """
    target = (-1.0 + 0.0j, 0.0j)
    out = []
    for m in range(1, config.q_max + 1):
        if m % 2 == 0:
            ps = range(-m // 2, m // 2)
            us = [(p, (2 * p + 1) / m) for p in ps]
        else:
            ps = range(-(m - 1) // 2, (m - 1) // 2 + 1)
            us = [(p, 2 * p / m) for p in ps]
        for p, u in us:
            rho = math.pi * m
            res = endpoint_residual(u, rho, 0.0, *target)
            out.append(
                BranchSolution(
                    sigma1=_sign(math.cos(rho)),
                    sigma2=0,
                    p=p,
                    q=m,
                    u=u,
                    rho=rho,
                    alpha=0.0,
                    length=rho * math.sqrt(1.0 - u * u),
                    residual=res,
                    family=FAMILY_CIRCLE,
                )
            )
    return _finalize(out)


# --- horizontal-sphere endpoints ----------------------------------------------


def solve_horizontal_sphere(
    z1: float | complex, theta2: float, config: SolverConfig = SolverConfig()
) -> list[BranchSolution]:
    """Geodesics to a real-z1 endpoint (z1, |z2| e^{i theta2}), Im z1 = 0.

    Returns (a) the on-sphere minimizer u = 0, rho = arccos z1 (repeats
    rho + 2*pi*k excluded), and (b) for each interval D_n, n = 1..q_max, the
    interior roots of Phi(rho) = z1, with u = +-sqrt((z1^2 - cos^2 rho) /
    sin^2 rho) and alpha fixed last from arg z2.  Roots sit only at rho > pi.
    Each Phi crossing is kept only if the reconstructed geodesic actually
    hits the endpoint (residual < 1e-9) — the modulus equation also brackets
    phase-mismatched crossings, and the interval edges carry the u -> 0
    great-circle repeats.

    z1 = 0 endpoints (|z2| = 1) are fully degenerate: cos rho = 0 forces
    u = 0, rho = pi/2 + pi*k, enumerated directly.
    """
    if isinstance(z1, complex):
        if abs(z1.imag) >= 1e-10:
            raise NotOnHorizontalSphere(f"Im z1 = {z1.imag!r} is not 0")
        z1 = z1.real
    if not (-1.0 < z1 < 1.0):
        raise NotOnHorizontalSphere(f"need z1 in (-1, 1), got {z1!r}")

    if abs(z1) < 1e-12:
        out = []
        for k in range(config.q_max + 1):
            rho = math.pi / 2 + math.pi * k
            alpha = _alpha_from(0.0, rho, theta2)
            z1t, z2t = 0.0j, cmath.exp(1j * theta2)
            res = endpoint_residual(0.0, rho, alpha, z1t, z2t)
            out.append(
                BranchSolution(
                    sigma1=0,
                    sigma2=_sign(math.sin(rho)),
                    p=0,
                    q=k,
                    u=0.0,
                    rho=rho,
                    alpha=alpha,
                    length=rho,
                    residual=res,
                    family=FAMILY_ISOLATED,
                )
            )
        return _finalize(out)

    abs_z2 = math.sqrt(1.0 - z1 * z1)
    z1t = complex(z1, 0.0)
    z2t = abs_z2 * cmath.exp(1j * theta2)

    out = []
    rho0 = math.acos(z1)
    alpha0 = _alpha_from(0.0, rho0, theta2)
    out.append(
        BranchSolution(
            sigma1=_sign(math.cos(rho0)),
            sigma2=1,
            p=0,
            q=0,
            u=0.0,
            rho=rho0,
            alpha=alpha0,
            length=rho0,
            residual=endpoint_residual(0.0, rho0, alpha0, z1t, z2t),
            family=FAMILY_ISOLATED,
        )
    )

    found_roots = False
    for n, lo, hi in horizontal_intervals(z1, config.q_max):
        margin = (hi - lo) * 1e-9
        grid = np.linspace(lo + margin, hi - margin, config.scan_points)
        vals = np.cos(grid) / np.cos(
            grid * np.sqrt(np.maximum(z1 * z1 - np.cos(grid) ** 2, 0.0)) / np.abs(np.sin(grid))
        ) - z1
        sgn = np.sign(vals)
        for i in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
            rho = _bisect(
                lambda x: phi_function(x, z1) - z1,
                float(grid[i]),
                float(grid[i + 1]),
                float(vals[i]),
            )
            u_mag = math.sqrt(max(z1 * z1 - math.cos(rho) ** 2, 0.0)) / abs(math.sin(rho))
            if u_mag < 1e-6:
                continue  # edge root: the u = 0 repeated great circle
            for u in (u_mag, -u_mag):
                alpha = _alpha_from(u, rho, theta2)
                res = endpoint_residual(u, rho, alpha, z1t, z2t)
                if res < RESIDUAL_TOL:
                    found_roots = True
                    out.append(
                        BranchSolution(
                            sigma1=_sign(math.cos(rho)),
                            sigma2=_sign(math.sin(rho)),
                            p=0,
                            q=n,
                            u=u,
                            rho=rho,
                            alpha=alpha,
                            length=rho * math.sqrt(1.0 - u * u),
                            residual=res,
                            family=FAMILY_ISOLATED,
                        )
                    )
    if not found_roots:
        warnings.warn(
            f"no transcendental roots within the first {config.q_max} intervals; "
            "only the on-sphere minimizer is returned",
            UserWarning,
            stacklevel=2,
        )
    return _finalize(out)


# --- general endpoints ----------------------------------------------------------


def solve_general(
    endpoint: Endpoint, config: SolverConfig = SolverConfig()
) -> list[BranchSolution]:
    """Enumerate all geodesic branches to a general-position endpoint.

    Two sign systems are solved, each over every winding index k:

      cos-positive: rho = A(u) + 2*pi*k,        theta1 = B(u) + 2*pi*(p - u k)
      cos-negative: rho = A(u) + pi*(2k + 1),   theta1 = B(u) + pi*(2p+1) - pi*u*(2k+1)

    with A(u) = arccot(sqrt(|z1|^2 - u^2)/|z2|) in (0, pi/2].  Nonnegative k
    gives the (sigma1, sigma2) = (+,+) and (-,-) branches directly; negative k
    is the paper's rho -> -rho reduction and lands on the mixed-sign branches
    after the curve identity (u, -rho, alpha) = (-u, rho, alpha - pi).  Each
    scalar equation is scanned on ``scan_points`` u-samples and bisected;
    roots within 1e-9 of u = +-|z1| are flagged and dropped (they belong to
    the special loci); every root must reproduce the endpoint to 1e-9.

    Results are deduplicated on (u, rho) at 1e-9 and sorted by
    (length, q, p, sign u, u, rho).  Raises NoSolutionWithinQmax if nothing
    survives.
    """
    if endpoint.case != CASE_GENERAL:
        raise EndpointOnSpecialLocus(
            f"endpoint is tagged {endpoint.case!r}; use its dedicated solver"
        )
    az1, az2 = endpoint.abs_z1, endpoint.abs_z2
    th1 = endpoint.theta1
    u_hi = az1

    ug = np.linspace(-u_hi, u_hi, config.scan_points)
    sq = np.sqrt(np.maximum(az1 * az1 - ug * ug, 0.0))
    bg = np.arctan2(ug * az2, sq) - ug * np.arctan2(az2, sq)

    def b_scalar(u: float) -> float:
        return b_function(u, az1, az2)

    out = []
    for fam in (1, 2):
        for k in range(-config.q_max - 1, config.q_max + 1):
            if fam == 1:
                slope, winding = -TWO_PI * k, TWO_PI * k
                p_lo, p_hi = -abs(k), abs(k)
            else:
                slope, winding = -math.pi * (2 * k + 1), math.pi * (2 * k + 1)
                p_lo, p_hi = -abs(k) - 1, abs(k) + 1
            genuine_q = k if k >= 0 else -k - 1
            if genuine_q > config.q_max:
                continue
            for p in range(p_lo, p_hi + 1):
                const = TWO_PI * p if fam == 1 else math.pi * (2 * p + 1)
                eg = bg + slope * ug + const - th1
                sgn = np.sign(eg)
                for i in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
                    u_root = _bisect(
                        lambda x: b_scalar(x) + slope * x + const - th1,
                        float(ug[i]),
                        float(ug[i + 1]),
                        float(eg[i]),
                    )
                    if u_hi - abs(u_root) < BOUNDARY_TOL:
                        warnings.warn(
                            f"root at u = {u_root!r} hugs the |z1| boundary; dropped",
                            BoundaryRootWarning,
                            stacklevel=2,
                        )
                        continue
                    rho_formal = _base_angle(u_root, az1, az2) + winding
                    if rho_formal > 0.0:
                        u, rho = u_root, rho_formal
                    else:
                        u, rho = -u_root, -rho_formal
                    alpha = _alpha_from(u, rho, endpoint.theta2)
                    res = endpoint_residual(u, rho, alpha, endpoint.z1, endpoint.z2)
                    if res >= RESIDUAL_TOL:
                        continue
                    out.append(
                        BranchSolution(
                            sigma1=_sign(math.cos(rho)),
                            sigma2=_sign(math.sin(rho)),
                            p=p,
                            q=genuine_q,
                            u=u,
                            rho=rho,
                            alpha=alpha,
                            length=rho * math.sqrt(1.0 - u * u),
                            residual=res,
                            family=FAMILY_ISOLATED,
                        )
                    )
    sols = _finalize(out)
    if not sols:
        raise NoSolutionWithinQmax(
            f"no branch admits a root for q <= {config.q_max}; raise q_max"
        )
    return sols


def solve(endpoint: Endpoint, config: SolverConfig = SolverConfig()) -> list[BranchSolution]:
    """Case-dispatching front end returning a uniform BranchSolution list."""
    if endpoint.case == CASE_ANTIPODAL:
        return solve_antipodal(config)
    if endpoint.case == CASE_FIBER:
        fibers = solve_fiber(endpoint.fiber_omega, config.max_fiber_n)
        return _finalize([f.to_branch() for f in fibers])
    if endpoint.case == CASE_HORIZONTAL:
        return solve_horizontal_sphere(endpoint.z1.real, endpoint.theta2, config)
    return solve_general(endpoint, config)


def _finalize(solutions: list[BranchSolution]) -> list[BranchSolution]:
    """Deduplicate on (u, rho) at 1e-9 and sort deterministically."""
    ordered = sorted(
        solutions, key=lambda s: (s.length, s.q, s.p, _sign(s.u), s.u, s.rho)
    )
    kept: list[BranchSolution] = []
    for s in ordered:
        if any(abs(s.u - t.u) < 1e-9 and abs(s.rho - t.rho) < 1e-9 for t in kept):
            continue
        kept.append(s)
    return kept

"""Carnot-Caratheodory distance on S^3, with an independent shooting oracle.

``cc_distance`` dispatches on the endpoint case: closed forms for fiber,
antipodal and horizontal-sphere targets, and for general position the minimum
branch length at the smallest feasible winding level, cross-checked against
the full enumeration (a disagreement raises InconsistentMinimizer — it means
a bug, and is never swallowed).

``shooting_oracle`` corroborates distances without touching the branch
systems: it grid-searches initial data (u, rho, alpha), refines candidate
cells by derivative-free coordinate bisection on the endpoint error, and
returns the shortest accepted candidate.  Tests compare the two at 1e-3
relative tolerance.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .bvp import (
    CASE_ANTIPODAL,
    CASE_FIBER,
    CASE_GENERAL,
    CASE_HORIZONTAL,
    FAMILY_ISOLATED,
    BranchSolution,
    Endpoint,
    SolverConfig,
    _alpha_from,
    _base_angle,
    _bisect,
    _sign,
    b_function,
    endpoint_residual,
    solve_antipodal,
    solve_fiber,
    solve_general,
    solve_horizontal_sphere,
)
from .errors import DegenerateOmega, InconsistentMinimizer, OracleNoCandidate
from .sphere import (
    SpherePoint,
    SU2Element,
    su2_act_raw,
    su2_sending_to_base,
)

CONSISTENCY_TOL = 1e-9


@dataclass(frozen=True)
class DistanceResult:
    """Distance with the minimizing branch and the candidate lengths examined."""

    distance: float
    case: str
    q_used: int
    minimizer: BranchSolution
    all_lengths: tuple[float, ...]
    boundary: bool = False

    def to_dict(self) -> dict:
        return {
            "distance": self.distance,
            "case": self.case,
            "q_used": self.q_used,
            "minimizer": self.minimizer.to_dict(),
            "all_lengths": list(self.all_lengths),
        }


@dataclass(frozen=True)
class OracleConfig:
    grid_u: int = 401
    grid_rho: int = 2000
    rho_max: float = 4.0 * math.pi
    grid_alpha: int = 256
    refine_iters: int = 60
    accept_residual: float = 1e-6
    max_candidates: int = 48

    def __post_init__(self) -> None:
        if min(
            self.grid_u, self.grid_rho, self.grid_alpha, self.refine_iters, self.max_candidates
        ) < 1 or self.rho_max <= 0 or self.accept_residual <= 0:
            raise ValueError("oracle configuration values must be positive")


def cc_distance(endpoint: Endpoint, config: SolverConfig = SolverConfig()) -> DistanceResult:
    """Carnot-Caratheodory distance from (1, 0) to the endpoint.

    Fiber: sqrt(omega (2 pi - omega)).  Antipodal: pi.  Horizontal sphere:
    arccos z1.  General position: for 0 < |theta1| <= (pi/2)(1 - |z1|) the
    unique B(u) = theta1 root gives sqrt(1 - u0^2) arccot(sqrt(|z1|^2-u0^2)/|z2|)
    (the exact-boundary case is kept here and flagged); otherwise the minimum
    length over all sign branches at the minimal feasible winding level q_m,
    verified to equal the minimum of the full enumeration.
    """
    case = endpoint.case
    if case == CASE_ANTIPODAL:
        sols = solve_antipodal(config)
        return DistanceResult(
            distance=math.pi,
            case=case,
            q_used=0,
            minimizer=sols[0],
            all_lengths=tuple(s.length for s in sols),
        )

    if case == CASE_FIBER:
        omega = endpoint.fiber_omega
        if omega == 0.0:
            raise DegenerateOmega("identical endpoints: distance 0, no geodesic needed")
        fibers = solve_fiber(omega, config.max_fiber_n)
        d = math.sqrt(omega * (2.0 * math.pi - omega))
        minimizer = fibers[0].to_branch()
        if abs(fibers[0].length - d) > CONSISTENCY_TOL:
            raise InconsistentMinimizer(
                f"fiber formula {d!r} vs enumerated {fibers[0].length!r}"
            )
        return DistanceResult(
            distance=d,
            case=case,
            q_used=0,
            minimizer=minimizer,
            all_lengths=tuple(f.length for f in fibers),
        )

    if case == CASE_HORIZONTAL:
        z1r = endpoint.z1.real
        sols = solve_horizontal_sphere(z1r, endpoint.theta2, config)
        d = math.acos(z1r)
        if abs(sols[0].length - d) > CONSISTENCY_TOL:
            raise InconsistentMinimizer(
                f"horizontal formula {d!r} vs enumerated {sols[0].length!r}"
            )
        return DistanceResult(
            distance=d,
            case=case,
            q_used=0,
            minimizer=sols[0],
            all_lengths=tuple(s.length for s in sols),
        )

    return _general_distance(endpoint, config)


def _general_distance(endpoint: Endpoint, config: SolverConfig) -> DistanceResult:
    az1, az2 = endpoint.abs_z1, endpoint.abs_z2
    th1 = endpoint.theta1
    threshold = 0.5 * math.pi * (1.0 - az1)

    if 0.0 < abs(th1) <= threshold + 1e-12:
        boundary = abs(th1) >= threshold - 1e-12
        if boundary:
            u0 = math.copysign(az1, th1)
        else:
            u0 = _bisect(lambda u: b_function(u, az1, az2) - th1, -az1, az1)
        rho0 = _base_angle(u0, az1, az2)
        d = math.sqrt(1.0 - u0 * u0) * rho0
        alpha0 = _alpha_from(u0, rho0, endpoint.theta2)
        minimizer = BranchSolution(
            sigma1=_sign(math.cos(rho0)),
            sigma2=_sign(math.sin(rho0)),
            p=0,
            q=0,
            u=u0,
            rho=rho0,
            alpha=alpha0,
            length=d,
            residual=endpoint_residual(u0, rho0, alpha0, endpoint.z1, endpoint.z2),
            family=FAMILY_ISOLATED,
        )
        sols = solve_general(endpoint, config)
        enum_min = sols[0].length
        if boundary:
            # The enumeration drops boundary-hugging roots; it must only not
            # undercut the closed form.
            if enum_min < d - CONSISTENCY_TOL:
                raise InconsistentMinimizer(
                    f"enumeration found {enum_min!r} below boundary formula {d!r}"
                )
            lengths = tuple(sorted([d, *(s.length for s in sols)]))
        else:
            if abs(enum_min - d) > CONSISTENCY_TOL:
                raise InconsistentMinimizer(
                    f"B-root formula {d!r} vs enumerated minimum {enum_min!r}"
                )
            lengths = tuple(s.length for s in sols)
        return DistanceResult(
            distance=d,
            case=CASE_GENERAL,
            q_used=0,
            minimizer=minimizer,
            all_lengths=lengths,
            boundary=boundary,
        )

    sols = solve_general(endpoint, config)
    q_m = min(s.q for s in sols)
    if q_m + 2 > config.q_max:
        sols = solve_general(endpoint, replace(config, q_max=q_m + 2))
    dispatch = min(s.length for s in sols if s.q == q_m)
    enum_min = sols[0].length
    if abs(dispatch - enum_min) > CONSISTENCY_TOL:
        raise InconsistentMinimizer(
            f"level-q_m minimum {dispatch!r} vs enumerated minimum {enum_min!r}"
        )
    return DistanceResult(
        distance=dispatch,
        case=CASE_GENERAL,
        q_used=q_m,
        minimizer=sols[0],
        all_lengths=tuple(s.length for s in sols),
    )


# --- independent shooting oracle ------------------------------------------------


def _gap(u: float, rho: float, z1: complex, abs_z2: float) -> float:
    """Squared endpoint error at the best possible alpha (phase-aligned z2)."""
    if not (-1.0 < u < 1.0) or rho <= 0.0:
        return math.inf
    r = math.sqrt(1.0 - u * u)
    w1 = cmath.exp(-1j * u * rho) * complex(math.cos(rho), u * math.sin(rho))
    return abs(w1 - z1) ** 2 + (r * abs(math.sin(rho)) - abs_z2) ** 2


def shooting_oracle(endpoint: Endpoint, oracle_config: OracleConfig = OracleConfig()) -> float:
    """Shortest geodesic length found by dense search over initial data.

    Sweeps a (u, rho) grid of the endpoint map at s = 1 (the alpha coordinate
    only rotates the phase of z2, so each cell is scored at its best-aligned
    phase), refines the most promising cells by shrinking coordinate
    bisection, then pins alpha by a scan of ``grid_alpha`` values plus the
    same shrinking search.  A candidate is accepted when its full endpoint
    residual drops below ``accept_residual``; the minimum rho*sqrt(1-u^2)
    over accepted candidates is returned.

    Deliberately independent of the branch solvers: no B, Phi or sign-system
    machinery is used.
    """
    cfg = oracle_config
    z1t, z2t = endpoint.z1, endpoint.z2
    abs_z2 = abs(z2t)

    u = np.linspace(-1.0, 1.0, cfg.grid_u + 2)[1:-1]
    rho = np.linspace(cfg.rho_max / cfg.grid_rho, cfg.rho_max, cfg.grid_rho)
    uu, rr = np.meshgrid(u, rho, indexing="ij")
    w1 = np.exp(-1j * uu * rr) * (np.cos(rr) + 1j * uu * np.sin(rr))
    gap = np.abs(w1 - z1t) ** 2 + (np.sqrt(1.0 - uu * uu) * np.abs(np.sin(rr)) - abs_z2) ** 2

    du = u[1] - u[0]
    drho = rho[1] - rho[0]
    order = np.argsort(gap, axis=None)
    cells: list[tuple[float, float]] = []
    for j in order[: 100 * cfg.max_candidates]:
        i, k = divmod(int(j), cfg.grid_rho)
        cu, cr = float(u[i]), float(rho[k])
        if any(abs(cu - su) < 3 * du and abs(cr - sr) < 3 * drho for su, sr in cells):
            continue
        cells.append((cu, cr))
        if len(cells) >= cfg.max_candidates:
            break

    probes = np.linspace(-1.0, 1.0, 9)
    best: float | None = None
    for cu, cr in cells:
        pu, pr = cu, cr
        ru, rrad = du, drho
        for _ in range(cfg.refine_iters):
            xs = pu + ru * probes
            pu = float(xs[int(np.argmin([_gap(x, pr, z1t, abs_z2) for x in xs]))])
            xs = pr + rrad * probes
            pr = float(xs[int(np.argmin([_gap(pu, x, z1t, abs_z2) for x in xs]))])
            ru *= 0.65
            rrad *= 0.65
        if _gap(pu, pr, z1t, abs_z2) > cfg.accept_residual**2:
            continue
        alpha = _refine_alpha(pu, pr, z1t, z2t, cfg)
        if endpoint_residual(pu, pr, alpha, z1t, z2t) < cfg.accept_residual:
            length = pr * math.sqrt(1.0 - pu * pu)
            if best is None or length < best:
                best = length

    if best is None:
        raise OracleNoCandidate(
            "no grid cell refined below the acceptance residual; raise grid density"
        )
    return best


def _refine_alpha(
    u: float, rho: float, z1t: complex, z2t: complex, cfg: OracleConfig
) -> float:
    def res(al: float) -> float:
        return endpoint_residual(u, rho, al, z1t, z2t)

    als = np.linspace(0.0, 2.0 * math.pi, cfg.grid_alpha, endpoint=False)
    alpha = float(als[int(np.argmin([res(a) for a in als]))])
    rad = 2.0 * math.pi / cfg.grid_alpha
    probes = np.linspace(-1.0, 1.0, 9)
    for _ in range(cfg.refine_iters):
        xs = alpha + rad * probes
        alpha = float(xs[int(np.argmin([res(x) for x in xs]))])
        rad *= 0.6
    return alpha % (2.0 * math.pi)


# --- base-point reduction --------------------------------------------------------


def reduce_pair(
    a: SpherePoint, b: SpherePoint, case_eps: float = 1e-10
) -> tuple[SU2Element, Endpoint]:
    """Rotate the pair (a, b) so a becomes the base point (1, 0).

    Returns (phi, endpoint) with phi = (conj(a1), -a2) and endpoint = phi b;
    geodesics and distances are equivariant under the rotation, so
    d(a, b) = d((1, 0), phi b).
    """
    phi = su2_sending_to_base(a)
    w1, w2 = su2_act_raw(phi, b.coords)
    return phi, Endpoint(w1, w2, case_eps=case_eps)


def cc_distance_between(
    a: SpherePoint, b: SpherePoint, config: SolverConfig = SolverConfig()
) -> DistanceResult:
    """Distance between two arbitrary points of S^3 via base-point reduction."""
    _, endpoint = reduce_pair(a, b)
    return cc_distance(endpoint, config)

"""Complex-coordinate model of the odd sphere S^(2n-1) and its Hopf structure.

Points are unit vectors in C^n.  The fiber through z is the circle
e^{i*theta} * z; its unit tangent is the vertical field V(z) = i*z, and the
horizontal space at z is the Hermitian-orthogonal complement of the complex
line through z.  Everything here is an immutable value and every operation is
a pure function, so the module is safe to use from any number of threads.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import DimensionMismatch, NotTangent

TWO_PI = 2.0 * math.pi

# Constructors renormalize inputs whose norm is within this window of 1 and
# reject anything further out; keeps downstream trigonometry stable.
NORM_WINDOW = 1e-9

# Tangency acceptance threshold for decompose().
TANGENCY_TOL = 1e-9


def hermitian(u: tuple[complex, ...], w: tuple[complex, ...]) -> complex:
    """Hermitian product <u, w> = sum u_k * conj(w_k)."""
    return sum(a * b.conjugate() for a, b in zip(u, w))


def real_inner(u: tuple[complex, ...], w: tuple[complex, ...]) -> float:
    """Riemannian (real) inner product: Re<u, w>."""
    return hermitian(u, w).real


def vector_norm(u: tuple[complex, ...]) -> float:
    return math.sqrt(sum(abs(a) ** 2 for a in u))


@dataclass(frozen=True)
class SpherePoint:
    """A point of S^(2n-1), stored as a unit vector in C^n (n >= 2).

    The constructor renormalizes inputs whose norm lies in
    [1 - 1e-9, 1 + 1e-9] and rejects anything else.
    """

    coords: tuple[complex, ...]

    def __post_init__(self) -> None:
        coords = tuple(complex(c) for c in self.coords)
        if len(coords) < 2:
            raise DimensionMismatch(f"need n >= 2 complex coordinates, got {len(coords)}")
        nrm = vector_norm(coords)
        if not (1.0 - NORM_WINDOW <= nrm <= 1.0 + NORM_WINDOW):
            raise ValueError(f"not a unit vector: |z| = {nrm!r}")
        object.__setattr__(self, "coords", tuple(c / nrm for c in coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def phase_shifted(self, theta: float) -> "SpherePoint":
        """The fiber point z * e^{i*theta}."""
        w = cmath.exp(1j * theta)
        return SpherePoint(tuple(c * w for c in self.coords))

    def distance_to(self, other: "SpherePoint") -> float:
        """Euclidean chord distance in R^(2n) (used for residual checks)."""
        return vector_norm(tuple(a - b for a, b in zip(self.coords, other.coords)))


@dataclass(frozen=True)
class TangentVector:
    """A real tangent vector at a SpherePoint with its horizontal/vertical split.

    ``vertical_part`` is the signed scalar Re<v, V(z)> = Im<v, z>; the sign
    encodes the fiber direction.  ``horizontal_part`` is v minus that multiple
    of V(z) and is Hermitian-orthogonal to the base point.
    """

    base: SpherePoint
    components: tuple[complex, ...]
    vertical_part: float = field(init=False)
    horizontal_part: tuple[complex, ...] = field(init=False)

    def __post_init__(self) -> None:
        comps = tuple(complex(c) for c in self.components)
        if len(comps) != self.base.n:
            raise DimensionMismatch("tangent vector and base point dimensions differ")
        radial = real_inner(comps, self.base.coords)
        if abs(radial) > TANGENCY_TOL:
            raise NotTangent(f"Re<v, z> = {radial!r} exceeds {TANGENCY_TOL}")
        vert = hermitian(comps, self.base.coords).imag  # Re<v, iz>
        horiz = tuple(c - vert * 1j * z for c, z in zip(comps, self.base.coords))
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "vertical_part", vert)
        object.__setattr__(self, "horizontal_part", horiz)

    @property
    def norm(self) -> float:
        return vector_norm(self.components)

    @property
    def horizontal_norm(self) -> float:
        return vector_norm(self.horizontal_part)


@dataclass(frozen=True)
class FiberPhase:
    """A fiber angle omega in radians, reduced to [0, 2*pi)."""

    omega: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "omega", float(self.omega) % TWO_PI)


@dataclass(frozen=True)
class SU2Element:
    """An element of SU(2) stored as the unit vector (phi1, phi2)."""

    phi1: complex
    phi2: complex

    def __post_init__(self) -> None:
        p1, p2 = complex(self.phi1), complex(self.phi2)
        nrm = math.sqrt(abs(p1) ** 2 + abs(p2) ** 2)
        if not (1.0 - NORM_WINDOW <= nrm <= 1.0 + NORM_WINDOW):
            raise ValueError(f"not a unit SU(2) vector: norm = {nrm!r}")
        object.__setattr__(self, "phi1", p1 / nrm)
        object.__setattr__(self, "phi2", p2 / nrm)

    def inverse(self) -> "SU2Element":
        return SU2Element(self.phi1.conjugate(), -self.phi2)


IDENTITY = SU2Element(1.0, 0.0)


def normal_field(z: SpherePoint) -> tuple[complex, ...]:
    """Outward unit normal N(z); equals z itself in complex coordinates."""
    return z.coords


def vertical_field(z: SpherePoint) -> TangentVector:
    """Unit tangent V(z) = i*N(z) to the fiber through z."""
    return TangentVector(z, tuple(1j * c for c in z.coords))


def decompose(z: SpherePoint, v: tuple[complex, ...]) -> TangentVector:
    """Split a raw tangent vector into horizontal and signed vertical parts.

    Raises NotTangent if |Re<v, z>| > 1e-9.  The vertical scalar Re<v, V(z)>
    keeps its sign; recombining ``horizontal_part + vertical_part * V(z)``
    reproduces the input exactly.
    """
    return TangentVector(z, tuple(v))


@dataclass(frozen=True)
class HopfImage:
    """Canonical data of the Hopf projection of a sphere point.

    ``representative`` is the input with its global phase normalized so the
    first coordinate of modulus > 1e-12 is real nonnegative.  For n = 2,
    ``bloch`` carries the image on the base 2-sphere.
    """

    representative: SpherePoint
    bloch: tuple[float, float, float] | None


def hopf_project(z: SpherePoint) -> HopfImage:
    """Project to the base space: phase-normalize, and map to S^2 when n = 2."""
    lead = next(c for c in z.coords if abs(c) > 1e-12)
    w = cmath.exp(-1j * cmath.phase(lead))
    rep = SpherePoint(tuple(c * w for c in z.coords))
    bloch: tuple[float, float, float] | None = None
    if z.n == 2:
        z1, z2 = z.coords
        cross = z1 * z2.conjugate()
        bloch = (2.0 * cross.real, 2.0 * cross.imag, abs(z1) ** 2 - abs(z2) ** 2)
    return HopfImage(rep, bloch)


def su2_act_raw(phi: SU2Element, v: tuple[complex, ...]) -> tuple[complex, complex]:
    """Apply the SU(2) rotation to any pair of complex components.

    This is the unitary matrix [[phi1, -conj(phi2)], [phi2, conj(phi1)]]
    acting linearly, so it commutes with the fiber action z -> e^{i*theta} z
    and preserves the Hermitian product (hence N, V and the horizontal
    distribution).  Being complex-linear, the same map transports tangent
    vectors.
    """
    if len(v) != 2:
        raise DimensionMismatch("SU(2) acts on C^2 components only")
    z1, z2 = v
    return (
        z1 * phi.phi1 - z2 * phi.phi2.conjugate(),
        z1 * phi.phi2 + z2 * phi.phi1.conjugate(),
    )


def su2_act(phi: SU2Element, z: SpherePoint) -> SpherePoint:
    """Rotate a point of S^3 by an SU(2) element."""
    if z.n != 2:
        raise DimensionMismatch(f"SU(2) action needs n = 2, got n = {z.n}")
    return SpherePoint(su2_act_raw(phi, z.coords))


def su2_sending_to_base(a: SpherePoint) -> SU2Element:
    """The rotation phi = (conj(a1), -a2) with su2_act(phi, a) = (1, 0)."""
    if a.n != 2:
        raise DimensionMismatch(f"SU(2) action needs n = 2, got n = {a.n}")
    a1, a2 = a.coords
    return SU2Element(a1.conjugate(), -a2)

"""Two-dimensional Clifford algebra: gamma matrices, boosts, discrete symmetries
and spinor bilinears in the hyperbolic and complex representations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, ValidationError

# 2x2 complex ndarray; entries built from integers so identities compare exactly.
ComplexMatrix2 = np.ndarray

# (x, t) -> array of shape (2, *broadcast(x, t).shape)
SpinorField = Callable[[np.ndarray, np.ndarray], np.ndarray]


class GammaRepresentation(Enum):
    HYPERBOLIC = "hyperbolic"
    COMPLEX = "complex"


class GammaIndex(Enum):
    G0 = "g0"
    G1 = "g1"
    G5 = "g5"
    C = "c"


class BilinearKind(Enum):
    SCALAR = "scalar"
    PSEUDOSCALAR = "pseudoscalar"
    VECTOR0 = "vector0"
    VECTOR1 = "vector1"
    AXIAL_VECTOR0 = "axial_vector0"
    AXIAL_VECTOR1 = "axial_vector1"
    DIFERMION = "difermion"
    DENSITY = "density"


class BilinearFamily(Enum):
    """Families whose squares (metric-contracted for vectors) have closed forms."""

    SCALAR = "scalar"
    PSEUDOSCALAR = "pseudoscalar"
    VECTOR = "vector"
    AXIAL_VECTOR = "axial_vector"
    DIFERMION = "difermion"
    DENSITY = "density"


class DiscreteSymmetry(Enum):
    PARITY_G0 = "parity_g0"
    PARITY_G1 = "parity_g1"
    TIME_REVERSAL = "time_reversal"


def _matrix(rows) -> ComplexMatrix2:
    return np.array(rows, dtype=complex)


IDENTITY = _matrix([[1, 0], [0, 1]])
SIGMA1 = _matrix([[0, 1], [1, 0]])
SIGMA2 = _matrix([[0, -1j], [1j, 0]])
SIGMA3 = _matrix([[1, 0], [0, -1]])

_GAMMAS: dict[GammaRepresentation, dict[GammaIndex, ComplexMatrix2]] = {
    GammaRepresentation.HYPERBOLIC: {
        GammaIndex.G0: SIGMA1,
        GammaIndex.G1: _matrix([[0, -1], [1, 0]]),  # -i sigma2
        GammaIndex.G5: SIGMA3,
        GammaIndex.C: SIGMA3,  # psi_C = gamma5 psi*
    },
    GammaRepresentation.COMPLEX: {
        GammaIndex.G0: -SIGMA1,
        GammaIndex.G1: _matrix([[1j, 0], [0, -1j]]),  # i sigma3
        GammaIndex.G5: -SIGMA2,
        GammaIndex.C: -SIGMA1,  # C = gamma0
    },
}


def gamma(rep: GammaRepresentation, index: GammaIndex) -> ComplexMatrix2:
    """Return a fresh copy of the requested matrix."""
    return _GAMMAS[rep][index].copy()


def gamma_upper(rep: GammaRepresentation, mu: int) -> ComplexMatrix2:
    return gamma(rep, (GammaIndex.G0, GammaIndex.G1)[mu])


def metric() -> np.ndarray:
    return np.diag([1.0, -1.0])


def anticommutator(a: ComplexMatrix2, b: ComplexMatrix2) -> ComplexMatrix2:
    return a @ b + b @ a


def slash(rep: GammaRepresentation, p0: float, p1: float) -> ComplexMatrix2:
    """gamma^mu p_mu with lower-index momentum (p_0, p_1)."""
    return gamma_upper(rep, 0) * p0 + gamma_upper(rep, 1) * p1


def lorentz_matrix(rep: GammaRepresentation, parameter: float) -> ComplexMatrix2:
    """diag(e^eta, e^-eta) (hyperbolic) or diag(e^-i phi, e^i phi) (complex)."""
    if not math.isfinite(parameter):
        raise DomainError(f"boost parameter must be finite, got {parameter}")
    if rep is GammaRepresentation.HYPERBOLIC:
        return np.diag([math.exp(parameter), math.exp(-parameter)]).astype(complex)
    return np.diag([cmath.exp(-1j * parameter), cmath.exp(1j * parameter)])


@dataclass(frozen=True)
class Spinor:
    psi1: complex
    psi2: complex

    def __post_init__(self):
        if not (cmath.isfinite(self.psi1) and cmath.isfinite(self.psi2)):
            raise DomainError(f"spinor components must be finite: {self}")

    @classmethod
    def from_array(cls, values) -> "Spinor":
        v = np.asarray(values, dtype=complex).reshape(2)
        return cls(complex(v[0]), complex(v[1]))

    def as_array(self) -> np.ndarray:
        return np.array([self.psi1, self.psi2], dtype=complex)

    @property
    def relative_phase(self) -> Optional[float]:
        """arg(psi1) - arg(psi2), or None when either component vanishes."""
        if self.psi1 == 0 or self.psi2 == 0:
            return None
        return cmath.phase(self.psi1) - cmath.phase(self.psi2)

    def conjugate(self) -> "Spinor":
        return Spinor(self.psi1.conjugate(), self.psi2.conjugate())

    def scaled(self, factor: complex) -> "Spinor":
        return Spinor(self.psi1 * factor, self.psi2 * factor)


def _sandwich(rep: GammaRepresentation, middle: ComplexMatrix2, psi: Spinor) -> complex:
    v = psi.as_array()
    return complex(v.conj() @ gamma(rep, GammaIndex.G0) @ middle @ v)


def bilinear(rep: GammaRepresentation, kind: BilinearKind, psi: Spinor) -> complex:
    """Bilinear built from the representation's matrices (psi-bar = psi^dagger gamma0)."""
    g1 = gamma(rep, GammaIndex.G1)
    g5 = gamma(rep, GammaIndex.G5)
    g0 = gamma(rep, GammaIndex.G0)
    match kind:
        case BilinearKind.SCALAR:
            return _sandwich(rep, IDENTITY, psi)
        case BilinearKind.PSEUDOSCALAR:
            return _sandwich(rep, g5, psi)
        case BilinearKind.VECTOR0:
            return _sandwich(rep, g0, psi)
        case BilinearKind.VECTOR1:
            return _sandwich(rep, g1, psi)
        case BilinearKind.AXIAL_VECTOR0:
            return _sandwich(rep, g5 @ g0, psi)
        case BilinearKind.AXIAL_VECTOR1:
            return _sandwich(rep, g5 @ g1, psi)
        case BilinearKind.DIFERMION:
            v = psi.as_array()
            return complex(v @ gamma(rep, GammaIndex.C) @ v)
        case BilinearKind.DENSITY:
            return _sandwich(rep, g0, psi)
    raise ValidationError(f"unknown bilinear kind {kind}")


def squared_bilinear(rep: GammaRepresentation, family: BilinearFamily, psi: Spinor) -> complex:
    """Square of a bilinear family; vectors contract with the metric, the
    difermion uses its modulus."""
    match family:
        case BilinearFamily.SCALAR:
            return bilinear(rep, BilinearKind.SCALAR, psi) ** 2
        case BilinearFamily.PSEUDOSCALAR:
            return bilinear(rep, BilinearKind.PSEUDOSCALAR, psi) ** 2
        case BilinearFamily.VECTOR:
            return bilinear(rep, BilinearKind.VECTOR0, psi) ** 2 - bilinear(rep, BilinearKind.VECTOR1, psi) ** 2
        case BilinearFamily.AXIAL_VECTOR:
            return (
                bilinear(rep, BilinearKind.AXIAL_VECTOR0, psi) ** 2
                - bilinear(rep, BilinearKind.AXIAL_VECTOR1, psi) ** 2
            )
        case BilinearFamily.DIFERMION:
            return complex(abs(bilinear(rep, BilinearKind.DIFERMION, psi)) ** 2)
        case BilinearFamily.DENSITY:
            return bilinear(rep, BilinearKind.DENSITY, psi) ** 2
    raise ValidationError(f"unknown bilinear family {family}")


def bilinear_identity(family: BilinearFamily, psi: Spinor) -> float:
    """Closed form of the squared bilinear in |psi1|, |psi2| and beta (hyperbolic rep)."""
    a = abs(psi.psi1) ** 2
    b = abs(psi.psi2) ** 2
    beta = psi.relative_phase or 0.0
    cos2b = math.cos(2.0 * beta)
    match family:
        case BilinearFamily.SCALAR:
            return 2.0 * (cos2b + 1.0) * a * b
        case BilinearFamily.PSEUDOSCALAR:
            return 2.0 * (cos2b - 1.0) * a * b
        case BilinearFamily.VECTOR:
            return 4.0 * a * b
        case BilinearFamily.AXIAL_VECTOR:
            return -4.0 * a * b
        case BilinearFamily.DIFERMION:
            return -2.0 * cos2b * a * b + a * a + b * b
        case BilinearFamily.DENSITY:
            return 2.0 * a * b + a * a + b * b
    raise ValidationError(f"unknown bilinear family {family}")


def pairing_fields(psi: Spinor) -> dict[str, complex]:
    """The three pairing fields in their beta = 0 reduced forms."""
    return {
        "chiral": 2.0 * abs(psi.psi1) * abs(psi.psi2),
        "difermion": psi.psi1**2 - psi.psi2**2,
        "density": abs(psi.psi1) ** 2 + abs(psi.psi2) ** 2,
    }


def charge_conjugate(rep: GammaRepresentation, psi: Spinor) -> Spinor:
    return Spinor.from_array(gamma(rep, GammaIndex.C) @ psi.conjugate().as_array())


def _apply(matrix: ComplexMatrix2, values: np.ndarray) -> np.ndarray:
    return np.einsum("ij,j...->i...", matrix, np.asarray(values, dtype=complex))


def apply_discrete_symmetry(
    rep: GammaRepresentation, kind: DiscreteSymmetry, field: SpinorField
) -> SpinorField:
    """Return the transformed space-time spinor function."""
    g0 = gamma(rep, GammaIndex.G0)
    g1 = gamma(rep, GammaIndex.G1)

    match kind:
        case DiscreteSymmetry.PARITY_G0:

            def transformed(x, t):
                return _apply(g0, field(-np.asarray(x), t))

        case DiscreteSymmetry.PARITY_G1:

            def transformed(x, t):
                return _apply(g1, field(-np.asarray(x), t))

        case DiscreteSymmetry.TIME_REVERSAL:

            def transformed(x, t):
                return _apply(g0, np.conj(field(x, -np.asarray(t))))

        case _:
            raise ValidationError(f"unknown discrete symmetry {kind}")
    return transformed

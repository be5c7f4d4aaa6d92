"""Free-particle kinematics: dispersion, plane waves and the equivalent
parametrizations of the momentum-space Dirac operator.

Plane waves are e^{i(px - Et)} times an amplitude vector; the operator forms act
on that amplitude.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .algebra import ComplexMatrix2, GammaRepresentation, SpinorField
from .constants import ON_SHELL_TOL
from .errors import DomainError, NotOnShellError, ValidationError


@dataclass(frozen=True)
class KinematicState:
    E: float
    p: float
    m: float
    mu: float = 0.0

    def __post_init__(self):
        if self.m < 0:
            raise DomainError(f"mass must be non-negative, got {self.m}")

    @property
    def e_plus(self) -> float:
        return self.E + self.mu + self.p

    @property
    def e_minus(self) -> float:
        return self.E + self.mu - self.p

    def mass_shell_residual(self, mu_sign: int = 1) -> float:
        """(E + s mu)^2 - p^2 - m^2 with s = +1 (hyperbolic) or -1 (complex forms)."""
        w = self.E + mu_sign * self.mu
        return w * w - self.p * self.p - self.m * self.m

    def require_on_shell(self, mu_sign: int = 1, form: str = "") -> None:
        residual = self.mass_shell_residual(mu_sign)
        scale = max(1.0, (self.E + mu_sign * self.mu) ** 2, self.p**2 + self.m**2)
        if abs(residual) > ON_SHELL_TOL * scale:
            raise NotOnShellError(residual, form)


class ParametrizationKind(Enum):
    RAPIDITY = "rapidity"
    TRIG_ANGLE = "trig_angle"
    COMPLEX_ANGLE = "complex_angle"


@dataclass(frozen=True)
class BoostParametrization:
    kind: ParametrizationKind
    value: float


class OperatorForm(Enum):
    LINEAR = "linear"
    HYPERBOLIC = "hyperbolic"
    TRIGONOMETRIC = "trigonometric"
    COMPLEX_LINEAR = "complex_linear"
    COMPLEX_TRIG = "complex_trig"


def free_dispersion(p: float, m: float, mu: float = 0.0) -> tuple[float, float]:
    """Both energy branches -mu -/+ sqrt(p^2 + m^2), ascending."""
    if m < 0:
        raise DomainError(f"mass must be non-negative, got {m}")
    root = math.hypot(p, m)
    return (-mu - root, -mu + root)


def state_from_rapidity(eta: float, m: float, mu: float = 0.0) -> KinematicState:
    """Positive-branch state with cosh(eta) = (E+mu)/m, sinh(eta) = p/m."""
    return KinematicState(E=m * math.cosh(eta) - mu, p=m * math.sinh(eta), m=m, mu=mu)


def parametrize(state: KinematicState, which: ParametrizationKind) -> BoostParametrization:
    match which:
        case ParametrizationKind.RAPIDITY:
            state.require_on_shell(1, "rapidity")
            if state.e_plus <= 0 or state.e_minus <= 0:
                raise DomainError("rapidity undefined off the positive-energy branch or at m = 0")
            return BoostParametrization(which, 0.5 * math.log(state.e_plus / state.e_minus))
        case ParametrizationKind.TRIG_ANGLE:
            if state.m <= 0:
                raise DomainError("angle parametrization requires m > 0")
            state.require_on_shell(1, "trigonometric")
            w = state.E + state.mu
            return BoostParametrization(which, math.atan2(state.p / w, state.m / w))
        case ParametrizationKind.COMPLEX_ANGLE:
            if state.m <= 0:
                raise DomainError("angle parametrization requires m > 0")
            state.require_on_shell(-1, "complex trigonometric")
            w = state.E - state.mu
            return BoostParametrization(which, math.atan2(state.p / w, state.m / w))
    raise ValidationError(f"unknown parametrization {which}")


def dirac_operator(state: KinematicState, form: OperatorForm) -> ComplexMatrix2:
    """Momentum-space Dirac operator in the requested form."""
    E, p, m, mu = state.E, state.p, state.m, state.mu
    match form:
        case OperatorForm.LINEAR:
            return np.array([[E + mu + p, -m], [-m, E + mu - p]], dtype=complex)
        case OperatorForm.HYPERBOLIC:
            if m == 0:
                raise DomainError("mass-normalized form undefined at m = 0")
            eta = parametrize(state, ParametrizationKind.RAPIDITY).value
            return np.array([[math.exp(eta), -1.0], [-1.0, math.exp(-eta)]], dtype=complex)
        case OperatorForm.TRIGONOMETRIC:
            if m == 0:
                raise DomainError("mass-normalized form undefined at m = 0")
            phi = parametrize(state, ParametrizationKind.TRIG_ANGLE).value
            s, c = math.sin(phi), math.cos(phi)
            return np.array([[1.0 + s, -c], [-c, 1.0 - s]], dtype=complex)
        case OperatorForm.COMPLEX_LINEAR:
            return np.array([[-(m - 1j * p), E - mu], [E - mu, -(m + 1j * p)]], dtype=complex)
        case OperatorForm.COMPLEX_TRIG:
            if m == 0:
                raise DomainError("mass-normalized form undefined at m = 0")
            phi = parametrize(state, ParametrizationKind.COMPLEX_ANGLE).value
            return np.array([[cmath.exp(-1j * phi), -1.0], [-1.0, cmath.exp(1j * phi)]], dtype=complex)
    raise ValidationError(f"unknown operator form {form}")


def plane_wave_amplitude(state: KinematicState, rep: GammaRepresentation) -> np.ndarray:
    """Unnormalized amplitude in the kernel of the representation's operator.

    Hyperbolic: (sqrt(E_-/m), sqrt(m/E_-)); complex: (sqrt((E-mu)/(m-ip)),
    sqrt((m-ip)/(E-mu))).  Both are written as (r/s, s/r) with principal roots
    so the kernel condition holds on every branch.
    """
    if rep is GammaRepresentation.HYPERBOLIC:
        state.require_on_shell(1, "hyperbolic")
        if state.m == 0 or state.e_minus == 0:
            raise DomainError("plane-wave amplitude needs m != 0 and E + mu - p != 0")
        r, s = cmath.sqrt(state.e_minus), cmath.sqrt(state.m)
    else:
        state.require_on_shell(-1, "complex")
        w = state.E - state.mu
        if w == 0 or (state.m == 0 and state.p == 0):
            raise DomainError("plane-wave amplitude needs E - mu != 0 and m - ip != 0")
        r, s = cmath.sqrt(w), cmath.sqrt(state.m - 1j * state.p)
    return np.array([r / s, s / r], dtype=complex)


def plane_wave(state: KinematicState, rep: GammaRepresentation) -> SpinorField:
    amplitude = plane_wave_amplitude(state, rep)

    def field(x, t):
        phase = np.exp(1j * (state.p * np.asarray(x) - state.E * np.asarray(t)))
        return amplitude.reshape((2,) + (1,) * np.ndim(phase)) * phase

    return field


def printed_complex_amplitude(state: KinematicState) -> np.ndarray:
    """Complex-representation amplitude (sqrt((E+mu)/(m-ip)), sqrt((m-ip)/(E+mu))) as displayed."""
    w = state.E + state.mu
    z = state.m - 1j * state.p
    return np.array([cmath.sqrt(w / z), cmath.sqrt(z / w)], dtype=complex)


def complex_component_residuals(state: KinematicState, amplitude: np.ndarray | None = None) -> tuple[complex, complex]:
    """Residuals of the two displayed complex-representation component equations,
    (m - d_x) psi1 + (i d_t + mu) psi2 and (i d_t + mu) psi2 + (m + d_x) psi1,
    in momentum space.  Defaults to the operator-kernel amplitude.
    """
    if amplitude is None:
        amplitude = plane_wave_amplitude(state, GammaRepresentation.COMPLEX)
    psi1, psi2 = amplitude
    i_dt = state.E  # i d_t e^{-iEt} = E
    first = (state.m - 1j * state.p) * psi1 + (i_dt + state.mu) * psi2
    second = (i_dt + state.mu) * psi2 + (state.m + 1j * state.p) * psi1
    return complex(first), complex(second)


def rapidity_amplitude(eta: float) -> np.ndarray:
    """(e^{-eta/2}, e^{eta/2}), the single-particle amplitude up to normalization."""
    return np.array([math.exp(-0.5 * eta), math.exp(0.5 * eta)], dtype=complex)


def trig_amplitude(phi: float) -> np.ndarray:
    """Half-angle amplitude (cos a, sin a) in the kernel of the trigonometric form.

    With phi measured from the mass axis (cos phi = m/(E+mu)) the kernel angle is
    a = pi/4 + phi/2, so the rest frame gives (1, 1)/sqrt(2).
    """
    a = 0.25 * math.pi + 0.5 * phi
    return np.array([math.cos(a), math.sin(a)], dtype=complex)


def boost_amplitude(amplitude: np.ndarray, delta: float) -> np.ndarray:
    """Spinor boost by rapidity delta: diag(e^{-delta/2}, e^{delta/2}).

    Maps the rapidity-eta amplitude onto the rapidity-(eta + delta) one.
    """
    return np.diag([math.exp(-0.5 * delta), math.exp(0.5 * delta)]) @ np.asarray(amplitude, dtype=complex)


def normalize(amplitude: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(amplitude)
    if norm == 0:
        raise DomainError("cannot normalize a zero amplitude")
    return np.asarray(amplitude, dtype=complex) / norm

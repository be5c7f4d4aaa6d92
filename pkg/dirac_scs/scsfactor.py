"""Spin-charge factorization of the dressed boost.

The dressed boost factor w = sqrt((E_+ + D)/(E_- - D)) splits into a kinematic
rapidity, a background rapidity shift, a magnitude factor and a phase:

    w = e^eta * e^zeta * phi_mag * e^{i beta}

The charge field carries the U(1) phase and the boost, the spin field carries the
background rapidity; `compose` recombines them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .algebra import Spinor
from .constants import SQRT2
from .errors import DomainError


class BetaConvention(Enum):
    """Sign between the two arctangents of the phase beta.

    RECONSTRUCTING (plus) reproduces the principal complex square root;
    PRINTED (minus) is the displayed form, kept for audit.
    """

    RECONSTRUCTING = "reconstructing"
    PRINTED = "printed"


@dataclass(frozen=True)
class FactorizedBoost:
    eta: float
    zeta: float
    phi_mag: float
    beta: float
    direct: complex = complex("nan")
    convention: BetaConvention = BetaConvention.RECONSTRUCTING

    def __post_init__(self):
        if not self.phi_mag > 0:
            raise DomainError(f"phi_mag must be positive, got {self.phi_mag}")

    def reconstruct(self) -> complex:
        return math.exp(self.eta + self.zeta) * self.phi_mag * cmath.exp(1j * self.beta)

    @property
    def reconstruction_error(self) -> float:
        """|reconstruct() - sqrt((E_+ + D)/(E_- - D))|, relative when the target exceeds 1."""
        return abs(self.reconstruct() - self.direct) / max(1.0, abs(self.direct))

    @classmethod
    def identity(cls) -> "FactorizedBoost":
        return cls(eta=0.0, zeta=0.0, phi_mag=1.0, beta=0.0, direct=1.0 + 0.0j)


@dataclass(frozen=True)
class ChargeField:
    phi1: complex
    phi2: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.phi1, self.phi2], dtype=complex)


@dataclass(frozen=True)
class SpinField:
    chi1: complex
    chi2: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.chi1, self.chi2], dtype=complex)


def _require_factor_domain(e_plus: float, e_minus: float, re: float) -> None:
    if not (e_plus > 0 and e_minus > 0 and e_minus - re > 0 and e_plus + re > 0):
        raise DomainError(
            "factorization domain: need E+ > 0, E- > 0, E- - Re D > 0, E+ + Re D > 0 "
            f"(E+={e_plus}, E-={e_minus}, Re D={re})"
        )


def direct_boost_factor(e_plus: float, e_minus: float, delta_bar: complex) -> complex:
    """Principal sqrt((E_+ + D)/(E_- - D))."""
    delta_bar = complex(delta_bar)
    return cmath.sqrt((e_plus + delta_bar) / (e_minus - delta_bar))


def factorize(
    e_plus: float,
    e_minus: float,
    delta_bar: complex,
    convention: BetaConvention = BetaConvention.RECONSTRUCTING,
) -> FactorizedBoost:
    delta_bar = complex(delta_bar)
    re, im = delta_bar.real, delta_bar.imag
    _require_factor_domain(e_plus, e_minus, re)
    eta = 0.5 * math.log(e_plus / e_minus)
    zeta = 0.5 * math.log((1.0 + re / e_plus) / (1.0 - re / e_minus))
    upper = im / (e_plus + re)
    lower = im / (e_minus - re)
    phi_mag = ((1.0 + upper * upper) / (1.0 + lower * lower)) ** 0.25
    if im == 0.0:
        beta = 0.0
    elif convention is BetaConvention.RECONSTRUCTING:
        beta = 0.5 * (math.atan(upper) + math.atan(lower))
    else:
        beta = 0.5 * (math.atan(upper) - math.atan(lower))
    return FactorizedBoost(
        eta=eta,
        zeta=zeta,
        phi_mag=1.0 if im == 0.0 else phi_mag,
        beta=beta,
        direct=direct_boost_factor(e_plus, e_minus, delta_bar),
        convention=convention,
    )


def factorize_sweep(
    e_plus: float,
    e_minus: float,
    delta_bars: Sequence[complex],
    unwrap: bool = True,
    convention: BetaConvention = BetaConvention.RECONSTRUCTING,
) -> list[FactorizedBoost]:
    """factorize along a path of D values, optionally making beta continuous."""
    factors = [factorize(e_plus, e_minus, d, convention) for d in delta_bars]
    if not unwrap or len(factors) < 2:
        return factors
    # beta is a half angle: unwrap 2 beta with period 2 pi
    betas = 0.5 * np.unwrap(2.0 * np.array([f.beta for f in factors]))
    return [
        FactorizedBoost(f.eta, f.zeta, f.phi_mag, float(b), f.direct, f.convention) for f, b in zip(factors, betas)
    ]


def dressed_components(factor: FactorizedBoost, base: Spinor) -> Spinor:
    """psi'_(+/-) = e^{-/+ zeta/2} e^{-/+ i beta/2} phi_mag^{-/+ 1/2} psi_(+/-)."""
    upper = math.exp(-0.5 * factor.zeta) * cmath.exp(-0.5j * factor.beta) / math.sqrt(factor.phi_mag)
    lower = math.exp(0.5 * factor.zeta) * cmath.exp(0.5j * factor.beta) * math.sqrt(factor.phi_mag)
    return Spinor(base.psi1 * upper, base.psi2 * lower)


def dressed_spinor(e_plus: float, e_minus: float, delta_bar: complex, rho: float, theta_N: float) -> Spinor:
    """sqrt(rho) e^{i theta} (w^{-1/2}, w^{1/2}) with w the principal dressed boost factor."""
    w = direct_boost_factor(e_plus, e_minus, delta_bar)
    if w == 0:
        raise DomainError("dressed spinor undefined at E_+ + D = 0")
    scale = math.sqrt(rho) * cmath.exp(1j * theta_N)
    half = cmath.sqrt(w)
    return Spinor(scale / half, scale * half)


def large_p_limit(delta_bar: complex, e_plus: float, rho: float, theta_N: float, power: float = 0.5) -> Spinor:
    """sqrt(rho) e^{i theta} (D/E_+)^{+/- power}; the displayed limit has power 1/2.

    The principal-branch dressed spinor approaches the power 1/4 in modulus.
    """
    delta_bar = complex(delta_bar)
    if delta_bar == 0:
        raise DomainError("degenerate limit: delta_bar = 0")
    ratio = delta_bar / e_plus
    scale = math.sqrt(rho) * cmath.exp(1j * theta_N)
    return Spinor(scale * ratio**power, scale * ratio ** (-power))


def _charge_ratio(x: float) -> float:
    if not abs(x) < 1.0:
        raise DomainError(f"prefactor domain: |d1 q_delta / rho0| = {abs(x)} must be < 1")
    return (1.0 + x) / (1.0 - x)


def small_p_expansion(
    d1: float, q_delta: float, a1: float, q_beta: float, rho0: float, c1: float, p: float
) -> Spinor:
    if rho0 <= 0:
        raise DomainError(f"prefactor domain: rho0 must be positive, got {rho0}")
    ratio = _charge_ratio(d1 * q_delta / rho0)
    common = math.sqrt(rho0) * cmath.exp(1j * c1 * p)
    spin = cmath.exp(-0.5j * a1 * q_beta)
    return Spinor(common * ratio**-0.5 * spin, common * ratio**0.5 / spin)


def small_p_exact(rho: float, delta_bar_re: float, beta_delta: float, theta_N: float) -> Spinor:
    """Unexpanded small-p form with x = Re D / rho, beta and theta at full order."""
    if rho <= 0:
        raise DomainError(f"prefactor domain: rho must be positive, got {rho}")
    ratio = _charge_ratio(delta_bar_re / rho)
    common = math.sqrt(rho) * cmath.exp(1j * theta_N)
    spin = cmath.exp(-0.5j * beta_delta)
    return Spinor(common * ratio**-0.5 * spin, common * ratio**0.5 / spin)


def charge_field(theta: float, eta: float, phi_mag: float, beta: float) -> ChargeField:
    """U(1)_N . SL(2,R)_boost . SL(2,R)_D . SU(2)_D applied to (1, 1)/sqrt(2)."""
    if not phi_mag > 0:
        raise DomainError(f"phi_mag must be positive, got {phi_mag}")
    u1 = cmath.exp(1j * theta) * np.eye(2)
    boost = np.diag([math.exp(-0.5 * eta), math.exp(0.5 * eta)])
    magnitude = np.diag([math.sqrt(phi_mag), 1.0 / math.sqrt(phi_mag)])
    su2 = np.diag([cmath.exp(-0.5j * beta), cmath.exp(0.5j * beta)])
    phi = u1 @ boost @ magnitude @ su2 @ (np.ones(2) / SQRT2)
    return ChargeField(complex(phi[0]), complex(phi[1]))


def spin_field(zeta: float, beta_shift: float = 0.0) -> SpinField:
    """(e^{-zeta/2}, e^{zeta/2})/sqrt(2), optionally carrying an SU(2) phase shift."""
    phase = cmath.exp(-0.5j * beta_shift)
    return SpinField(
        math.exp(-0.5 * zeta) * phase / SQRT2,
        math.exp(0.5 * zeta) / phase / SQRT2,
    )


def compose(spin: SpinField, charge: ChargeField) -> Spinor:
    """diag(sqrt(2) chi) . Phi . sqrt(2)."""
    psi = SQRT2 * spin.as_array() * charge.as_array() * SQRT2
    return Spinor(complex(psi[0]), complex(psi[1]))


def group_spinor(theta: float, eta: float, zeta: float, phi_mag: float, beta: float) -> Spinor:
    return compose(spin_field(zeta), charge_field(theta, eta, phi_mag, beta))


def factor_report(factor: FactorizedBoost) -> dict[str, float]:
    return {
        "eta": factor.eta,
        "zeta": factor.zeta,
        "phi_mag": factor.phi_mag,
        "beta": factor.beta,
        "reconstruction_error": factor.reconstruction_error,
    }

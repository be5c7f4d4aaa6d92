"""In-medium Dirac problem: the real 4x4 Fourier system, its dispersion roots,
Fourier components, dressed plane waves and condensate algebra.

The 4x4 matrix acts on (Re psi1, Im psi1, Re psi2, Im psi2) and commutes with
the complex structure, i.e. it is the realification of the 2x2 complex matrix

    Z = [[s, (E_- + Re D) - i Im D], [(E_+ - Re D) + i Im D, s]],  s = sigma - m.

Hence det(M) = |det Z|^2 >= 0 never changes sign.  Im det Z = -2 ImD (ReD - p)
does not depend on E, so roots are bracketed on Re det Z, read off the 4x4
entries, and accepted only when det(M) itself vanishes at the polished point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy import optimize

from . import logger as log_mod
from . import utils
from .algebra import SpinorField
from .constants import ENERGY_BRACKETS, ENERGY_WINDOW_SCALE, ROOT_ACCEPT_TOL, ROOT_DEDUP_TOL, ROOT_RTOL, ROOT_XTOL
from .errors import DomainError
from .kinematics import KinematicState


@dataclass(frozen=True)
class CondensateSet:
    rho: float
    sigma: float
    delta: complex
    delta_bar: complex

    def __post_init__(self):
        if self.rho < 0:
            raise DomainError(f"number density must be non-negative, got {self.rho}")

    @classmethod
    def from_delta_bar(cls, rho: float, sigma: float, delta_bar: complex) -> "CondensateSet":
        return cls(rho=rho, sigma=sigma, delta=-complex(delta_bar).conjugate(), delta_bar=complex(delta_bar))


@dataclass(frozen=True)
class DressedBoost:
    eta: float
    zeta: float
    eta_prime: float


@dataclass(frozen=True)
class EPair:
    e_plus: float
    e_minus: float

    @classmethod
    def from_state(cls, state: KinematicState) -> "EPair":
        return cls(state.e_plus, state.e_minus)

    @property
    def product(self) -> float:
        """(E + mu)^2 - p^2."""
        return self.e_plus * self.e_minus


class CondensateInversion(NamedTuple):
    phi_magnitude: float
    zeta_prime: float
    sign_branch: int


def fourier_matrix(E: float, p: float, mu: float, sigma: float, m: float, delta: complex) -> np.ndarray:
    """Real 4x4 system for the Fourier components, entries as displayed."""
    e_plus, e_minus = E + mu + p, E + mu - p
    s = sigma - m
    re, im = complex(delta).real, complex(delta).imag
    b, c = e_minus + re, e_plus - re
    return np.array(
        [
            [s, 0.0, b, im],
            [0.0, s, -im, b],
            [c, -im, s, 0.0],
            [im, c, 0.0, s],
        ]
    )


def _complex_block_det(matrix: np.ndarray) -> np.ndarray:
    """det of the 2x2 complex matrix whose realification is `matrix` (stack-aware)."""
    z00 = matrix[..., 0, 0] + 1j * matrix[..., 1, 0]
    z01 = matrix[..., 0, 2] + 1j * matrix[..., 1, 2]
    z10 = matrix[..., 2, 0] + 1j * matrix[..., 3, 0]
    z11 = matrix[..., 2, 2] + 1j * matrix[..., 3, 2]
    return z00 * z11 - z01 * z10


def _fourier_stack(energies: np.ndarray, p, mu, sigma, m, delta) -> np.ndarray:
    stack = np.empty((len(energies), 4, 4))
    for i, E in enumerate(energies):
        stack[i] = fourier_matrix(float(E), p, mu, sigma, m, delta)
    return stack


def determinant(E: float, p: float, mu: float, sigma: float, m: float, delta: complex) -> float:
    return float(np.linalg.det(fourier_matrix(E, p, mu, sigma, m, delta)))


def printed_dispersion_condition(E: float, p: float, mu: float, sigma: float, m: float, delta: complex) -> float:
    """The scalar dispersion condition exactly as displayed (leading (sigma-m)^2 term)."""
    s = sigma - m
    re, im = complex(delta).real, complex(delta).imag
    b = E + mu - p + re
    c = E + mu + p - re
    return (
        s**2
        - 2 * s**2 * im**2
        + b**2 * im**2
        + im**4
        - 2 * s**2 * b * c
        + b**2 * c**2
        + im**2 * c**2
    )


def condition_discrepancy(E: float, p: float, mu: float, sigma: float, m: float, delta: complex) -> float:
    """det(4x4) minus the printed condition; equals (sigma-m)^4 - (sigma-m)^2."""
    return determinant(E, p, mu, sigma, m, delta) - printed_dispersion_condition(E, p, mu, sigma, m, delta)


def default_energy_window(p: float, mu: float, m: float, delta: complex) -> tuple[float, float]:
    scale = ENERGY_WINDOW_SCALE * max(m, abs(delta), abs(p)) + 1.0
    return (-mu - scale, -mu + scale)


def dispersion_solve(
    p: float,
    mu: float,
    sigma: float,
    m: float,
    delta: complex,
    window: Optional[tuple[float, float]] = None,
    brackets: int = ENERGY_BRACKETS,
) -> list[float]:
    """Real energies where det(fourier_matrix) vanishes, sorted and deduplicated."""
    lo, hi = window if window is not None else default_energy_window(p, mu, m, delta)
    energies = np.linspace(lo, hi, brackets + 1)
    g = _complex_block_det(_fourier_stack(energies, p, mu, sigma, m, delta))

    def real_part(E: float) -> float:
        return complex(_complex_block_det(fourier_matrix(E, p, mu, sigma, m, delta))).real

    samples = g.real
    candidates: list[float] = []
    for i in range(brackets):
        a, b = samples[i], samples[i + 1]
        if a == 0.0:
            candidates.append(float(energies[i]))
        elif a * b < 0.0:
            root = optimize.brentq(real_part, energies[i], energies[i + 1], xtol=ROOT_XTOL, rtol=ROOT_RTOL)
            candidates.append(float(root))
    if samples[-1] == 0.0:
        candidates.append(float(energies[-1]))

    accepted = sorted(E for E in candidates if abs(determinant(E, p, mu, sigma, m, delta)) < ROOT_ACCEPT_TOL)
    roots: list[float] = []
    for E in accepted:
        if not roots or abs(E - roots[-1]) > ROOT_DEDUP_TOL:
            roots.append(E)
    return roots


def scan_dispersion(
    ps: Sequence[float],
    mu: float,
    sigma: float,
    m: float,
    delta: complex,
    jobs: int = 1,
    logger: Optional[log_mod.ScsLogger] = None,
) -> list[list[float]]:
    """dispersion_solve over a momentum list; output order follows `ps`."""
    log = log_mod.resolve(logger)
    log.debug(f"Scanning {len(ps)} momenta with jobs={jobs}")
    func = partial(_scan_point_kw, mu=mu, sigma=sigma, m=m, delta=complex(delta))
    return utils.ordered_map(func, [float(p) for p in ps], jobs)


def _scan_point_kw(p: float, *, mu: float, sigma: float, m: float, delta: complex) -> list[float]:
    return dispersion_solve(p, mu, sigma, m, delta)


def literal_fourier_components(E, p, mu, sigma, m, delta) -> tuple[complex, complex]:
    """Fourier components evaluated exactly as displayed (0/0 at dispersion roots)."""
    s = sigma - m
    re, im = complex(delta).real, complex(delta).imag
    b = E + mu - p + re
    c = E + mu + p - re
    inner = s**2 - im**2 - b * c
    denom = s * inner
    psi1 = (-(s**2) * b + b**2 * c + im**2 * c) / denom + 1j * im * (s**2 - c**2 - im**2) / denom
    psi2 = 1.0 + 1j * im * (b - c) / inner
    return complex(psi1), complex(psi2)


def fourier_components(E, p, mu, sigma, m, delta) -> tuple[complex, complex]:
    """Displayed Fourier components with the removable factor cancelled.

    With b = E_- + Re D, c = E_+ - Re D, Q = (sigma-m)^2 - ImD^2 - b c and
    k = ImD (b - c) / Q the displayed forms regroup to

        psi1 = -(b + ImD k) / (sigma-m) + i (ImD + c k) / (sigma-m)
        psi2 = 1 + i k

    Every term carrying 1/Q is proportional to ImD (b - c); when that product is
    exactly zero those terms vanish identically and no division by Q occurs.
    """
    s = sigma - m
    re, im = complex(delta).real, complex(delta).imag
    b = E + mu - p + re
    c = E + mu + p - re
    if s == 0:
        raise DomainError("degenerate component formula: sigma - m = 0")
    numerator = 2.0 * im * (re - p)  # ImD (b - c), exact zero when Re D == p
    if numerator == 0.0:
        k = 0.0
    else:
        inner = s**2 - im**2 - b * c
        if inner == 0.0:
            raise DomainError("degenerate component formula: vanishing denominator")
        k = numerator / inner
    psi1 = complex(-b / s - im * k / s, im / s + c * k / s)
    psi2 = complex(1.0, k)
    return psi1, psi2


def kernel_residual(E, p, mu, sigma, m, delta, components: Optional[tuple[complex, complex]] = None) -> float:
    """|M v| for v = (Re psi1, Im psi1, Re psi2, Im psi2)."""
    psi1, psi2 = components if components is not None else fourier_components(E, p, mu, sigma, m, delta)
    v = np.array([psi1.real, psi1.imag, psi2.real, psi2.imag])
    return float(np.linalg.norm(fourier_matrix(E, p, mu, sigma, m, delta) @ v))


def modified_dirac_operator(state: KinematicState, sigma: float, delta_bar: float) -> np.ndarray:
    """Momentum-space operator of i[g0(d_t - i mu) - g1(d_x + i D)] - (m - sigma), hyperbolic rep."""
    w = state.E + state.mu
    mass = state.m - sigma
    return np.array(
        [[-mass, w - state.p - delta_bar], [w + state.p + delta_bar, -mass]],
        dtype=complex,
    )


def dressed_energy(p: float, m: float, mu: float, sigma: float, delta_bar: float, branch: int = 1) -> float:
    """Energy on the dressed shell (E + mu)^2 = (p + D)^2 + (m - sigma)^2."""
    return -mu + branch * math.hypot(p + delta_bar, m - sigma)


def dressed_boost(state: KinematicState, delta_bar: float) -> DressedBoost:
    e_plus, e_minus = state.e_plus, state.e_minus
    if not (e_plus + delta_bar > 0 and e_minus - delta_bar > 0 and e_plus > 0 and e_minus > 0):
        raise DomainError(
            f"boost domain: need E+ + D > 0 and E- - D > 0 (E+={e_plus}, E-={e_minus}, D={delta_bar})"
        )
    eta = 0.5 * math.log(e_plus / e_minus)
    zeta = 0.5 * math.log((1.0 + delta_bar / e_plus) / (1.0 - delta_bar / e_minus))
    eta_prime = 0.5 * math.log((e_plus + delta_bar) / (e_minus - delta_bar))
    return DressedBoost(eta=eta, zeta=zeta, eta_prime=eta_prime)


def dressed_plane_wave(state: KinematicState, delta_bar: float) -> SpinorField:
    """e^{i(px - Et)} (e^{-eta'/2}, e^{eta'/2})."""
    boost = dressed_boost(state, delta_bar)
    amplitude = np.array([math.exp(-0.5 * boost.eta_prime), math.exp(0.5 * boost.eta_prime)], dtype=complex)

    def field(x, t):
        phase = np.exp(1j * (state.p * np.asarray(x) - state.E * np.asarray(t)))
        return amplitude.reshape((2,) + (1,) * np.ndim(phase)) * phase

    return field


def condensates_from_parameters(phi: complex, zeta_prime: float) -> CondensateSet:
    """rho = 2|phi|^2 cosh z, sigma = 2|phi|^2, delta_bar = -2 conj(phi)^2 sinh z.

    The overall sign of (delta, delta_bar) is the one for which the inversion
    e^z = (rho + delta_bar)/sigma closes the round trip; delta = -conj(delta_bar).
    """
    phi = complex(phi)
    mag2 = abs(phi) ** 2
    sh = math.sinh(zeta_prime)
    delta_bar = -2.0 * phi.conjugate() ** 2 * sh
    return CondensateSet(
        rho=2.0 * mag2 * math.cosh(zeta_prime),
        sigma=2.0 * mag2,
        delta=2.0 * phi**2 * sh,
        delta_bar=delta_bar,
    )


def invert_condensates(condensates: CondensateSet, imag_tol: float = 1e-12) -> CondensateInversion:
    """Recover (|phi|, zeta', sign) from (rho, sigma, delta_bar) on the real branch."""
    delta_bar = complex(condensates.delta_bar)
    rho, sigma = condensates.rho, condensates.sigma
    if abs(delta_bar.imag) > imag_tol * max(1.0, abs(delta_bar)):
        raise DomainError(f"no real-branch inversion: delta_bar = {delta_bar} is not real")
    d = delta_bar.real
    if rho <= abs(d):
        raise DomainError(f"no real-branch inversion: rho = {rho} <= |delta_bar| = {abs(d)}")
    if sigma == 0:
        raise DomainError("no real-branch inversion: sigma = 0")
    ratio = (rho + d) / sigma
    sign = 1 if ratio > 0 else -1
    return CondensateInversion(
        phi_magnitude=math.sqrt(abs(sigma) / 2.0),
        zeta_prime=math.log(abs(ratio)),
        sign_branch=sign,
    )


def phi_from_inversion(inversion: CondensateInversion) -> complex:
    """phi on the imaginary (phi -> i phi) branch used by the round trip."""
    return 1j * inversion.phi_magnitude * inversion.sign_branch


def in_medium_zeta(p_zero_state: KinematicState, delta_bar: float) -> float:
    """zeta at p = 0, the value that tends to zeta' of the condensate inversion."""
    return dressed_boost(p_zero_state, delta_bar).zeta


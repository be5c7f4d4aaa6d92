"""Emergent gauge potential built from the number phase theta_N and the
difermion phase beta_Delta, its field strength, effective chemical potentials,
gauge-fixing residuals and the regime classifier.

Grids are indexed [t, x].  Unit charge throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

import numpy as np

from . import stencils
from .constants import REGIME_MOLECULAR_RATIO, REGIME_NEGLIGIBLE, REGIME_SMALL_RATIO
from .errors import ValidationError


@dataclass(frozen=True)
class PhaseMode:
    """Plane-wave phase -omega t + k x."""

    omega: float
    k: float

    def sample(self, x: np.ndarray, t: np.ndarray) -> np.ndarray:
        tt, xx = np.meshgrid(np.asarray(t, dtype=float), np.asarray(x, dtype=float), indexing="ij")
        return -self.omega * tt + self.k * xx


@dataclass(frozen=True)
class PhasePair:
    theta_N: np.ndarray
    beta_Delta: np.ndarray

    def __post_init__(self):
        stencils.require_commensurate(self.theta_N, self.beta_Delta)

    @classmethod
    def from_modes(
        cls, omega_N: float, k_N: float, omega_Delta: float, k_Delta: float, x: np.ndarray, t: np.ndarray
    ) -> "PhasePair":
        return cls(PhaseMode(omega_N, k_N).sample(x, t), PhaseMode(omega_Delta, k_Delta).sample(x, t))

    @property
    def shape(self) -> tuple[int, ...]:
        return np.shape(self.theta_N)


@dataclass(frozen=True)
class GaugePotential:
    A0: np.ndarray
    A1: np.ndarray

    def __post_init__(self):
        stencils.require_commensurate(self.A0, self.A1)
        if not (np.all(np.isfinite(self.A0)) and np.all(np.isfinite(self.A1))):
            raise ValidationError("gauge potential must be finite")

    @classmethod
    def zeros(cls, shape: tuple[int, ...]) -> "GaugePotential":
        return cls(np.zeros(shape), np.zeros(shape))

    def square(self) -> np.ndarray:
        """A_mu A^mu."""
        return self.A0**2 - self.A1**2


@dataclass(frozen=True)
class ChemPotentials:
    mu1: float
    mu2: float
    mu5: float
    mu_bar: float

    @classmethod
    def from_components(cls, mu1: float, mu2: float) -> "ChemPotentials":
        return cls(mu1=mu1, mu2=mu2, mu5=0.5 * (mu1 - mu2), mu_bar=0.5 * (mu1 + mu2))

    @classmethod
    def from_chiral(cls, mu5: float, mu_bar: float) -> "ChemPotentials":
        return cls(mu1=mu_bar + mu5, mu2=mu_bar - mu5, mu5=mu5, mu_bar=mu_bar)


class RegimeLabel(Enum):
    IN_VACUUM = "InVacuum"
    IN_MEDIUM_MANIFEST = "InMediumManifest"
    BROKEN_LOW_ENERGY = "BrokenLowEnergy"
    BROKEN_HIGH_ENERGY = "BrokenHighEnergy"


class GaugeCondition(Enum):
    LORENTZ = "lorentz"
    COULOMB = "coulomb"
    WEYL = "weyl"
    DIRAC = "dirac"


@dataclass(frozen=True)
class DiracCondition:
    """A_mu A^mu = k^2."""

    k: float
    condition: GaugeCondition = field(default=GaugeCondition.DIRAC, init=False)


# ---------------------------------------------------------------------------------


def _phase_gradients(phases: PhasePair, dx: float, dt: float) -> tuple[np.ndarray, ...]:
    stencils.require_min_size(phases.theta_N, 3)
    d = stencils.first_derivative
    return (
        d(phases.theta_N, dt, stencils.T_AXIS),
        d(phases.theta_N, dx, stencils.X_AXIS),
        d(phases.beta_Delta, dt, stencils.T_AXIS),
        d(phases.beta_Delta, dx, stencils.X_AXIS),
    )


def gauge_transform(A: GaugePotential, phases: PhasePair, dx: float = 1.0, dt: float = 1.0) -> GaugePotential:
    """A0 -> A0 - (d_t theta + d_x beta), A1 -> A1 - (d_x theta + d_t beta)."""
    stencils.require_commensurate(A.A0, phases.theta_N)
    theta_t, theta_x, beta_t, beta_x = _phase_gradients(phases, dx, dt)
    return GaugePotential(A.A0 - (theta_t + beta_x), A.A1 - (theta_x + beta_t))


def pure_gauge(phases: PhasePair, dx: float, dt: float) -> GaugePotential:
    return gauge_transform(GaugePotential.zeros(phases.shape), phases, dx, dt)


def field_strength(beta_grid: np.ndarray, dx: float, dt: float) -> np.ndarray:
    """E = (d_t^2 - d_x^2) beta_Delta."""
    beta_grid = np.asarray(beta_grid, dtype=float)
    if beta_grid.ndim != 2:
        raise ValidationError(f"field_strength needs a [t, x] grid, got shape {beta_grid.shape}")
    stencils.require_min_size(beta_grid, 3)
    return stencils.dalembertian(beta_grid, dx, dt)


def field_strength_from_potential(A: GaugePotential, dx: float, dt: float) -> np.ndarray:
    """E = -(d_t A1 - d_x A0)."""
    stencils.require_min_size(A.A0, 3)
    return -(
        stencils.first_derivative(A.A1, dt, stencils.T_AXIS) - stencils.first_derivative(A.A0, dx, stencils.X_AXIS)
    )


def field_tensor(E: np.ndarray) -> np.ndarray:
    """F^{mu nu} with F^{01} = -E, F^{10} = E; shape (2, 2, *E.shape)."""
    E = np.asarray(E, dtype=float)
    F = np.zeros((2, 2) + E.shape)
    F[0, 1] = -E
    F[1, 0] = E
    return F


def chemical_potentials(mu: float, omega_Delta: float, k_Delta: float, omega_N: float, k_N: float) -> ChemPotentials:
    return ChemPotentials.from_chiral(mu5=omega_Delta - k_N, mu_bar=mu - omega_N + k_Delta)


def chemical_potentials_from_potential(
    mu: float, A: GaugePotential
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Pointwise (mu1, mu2, mu5, mu_bar) with mu1 = mu - (A0 - A1), mu2 = mu - (A0 + A1)."""
    mu1 = mu - (A.A0 - A.A1)
    mu2 = mu - (A.A0 + A.A1)
    return mu1, mu2, 0.5 * (mu1 - mu2), 0.5 * (mu1 + mu2)


def gauge_residual(
    condition: Union[GaugeCondition, DiracCondition], phases: PhasePair, dx: float, dt: float
) -> np.ndarray:
    """Pointwise residual of a gauge-fixing condition on the pure-gauge potential."""
    theta_t, theta_x, beta_t, beta_x = _phase_gradients(phases, dx, dt)
    if isinstance(condition, DiracCondition):
        A = pure_gauge(phases, dx, dt)
        return A.square() - condition.k**2
    match condition:
        case GaugeCondition.LORENTZ:
            A = pure_gauge(phases, dx, dt)
            return stencils.first_derivative(A.A0, dt, stencils.T_AXIS) - stencils.first_derivative(
                A.A1, dx, stencils.X_AXIS
            )
        case GaugeCondition.COULOMB:
            A = pure_gauge(phases, dx, dt)
            return stencils.first_derivative(A.A1, dx, stencils.X_AXIS)
        case GaugeCondition.WEYL:
            return theta_t + beta_x
        case GaugeCondition.DIRAC:
            raise ValidationError("Dirac gauge residual needs a DiracCondition carrying k")
    raise ValidationError(f"unknown gauge condition {condition}")


def highenergy_efield(u_bg: np.ndarray, theta_N: np.ndarray, dx: float) -> tuple[np.ndarray, np.ndarray]:
    """E = (d_x u_bg) theta_N and rho_E = d_x E, differentiated along the last axis."""
    u_bg = np.asarray(u_bg, dtype=float)
    theta_N = np.asarray(theta_N, dtype=float)
    stencils.require_commensurate(u_bg, theta_N)
    u_x = stencils.first_derivative(u_bg, dx)
    u_xx = stencils.second_derivative(u_bg, dx)
    theta_x = stencils.first_derivative(theta_N, dx)
    return u_x * theta_N, u_xx * theta_N + u_x * theta_x


# ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class RegimeThresholds:
    negligible: float = REGIME_NEGLIGIBLE
    small_ratio: float = REGIME_SMALL_RATIO
    molecular_ratio: float = REGIME_MOLECULAR_RATIO

    @property
    def ratio_split(self) -> float:
        """Geometric midpoint between 'much smaller' and 'approaches the molecular scale'."""
        return math.sqrt(self.small_ratio * self.molecular_ratio)


@dataclass(frozen=True)
class RegimeInputs:
    rho0: float
    condensate_fraction: float
    p: float
    q_beta: float
    q_delta: float
    mu: float
    m: float

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if not math.isfinite(value):
                raise ValidationError(f"regime input {name} must be finite, got {value}")
        for name in ("rho0", "condensate_fraction", "p", "q_beta", "q_delta", "m"):
            if getattr(self, name) < 0:
                raise ValidationError(f"regime input {name} must be non-negative")

    @property
    def scale(self) -> float:
        return max(self.m, self.p, self.q_beta, self.q_delta) or 1.0


def classify_regime(inputs: RegimeInputs, thresholds: Optional[RegimeThresholds] = None) -> RegimeLabel:
    t = thresholds or RegimeThresholds()
    if inputs.rho0 < t.negligible * inputs.scale and abs(inputs.mu) < t.negligible * inputs.scale:
        return RegimeLabel.IN_VACUUM
    if inputs.condensate_fraction < t.negligible:
        return RegimeLabel.IN_MEDIUM_MANIFEST
    if inputs.q_delta == 0:
        return RegimeLabel.BROKEN_HIGH_ENERGY
    ratio = max(inputs.p, inputs.q_beta) / inputs.q_delta
    if ratio <= t.ratio_split:
        return RegimeLabel.BROKEN_LOW_ENERGY
    return RegimeLabel.BROKEN_HIGH_ENERGY

"""Quasiparticle solutions in a pairing background.

Each spinor component is written psi_i = rho_i e^{i phi_i} and the Dirac
equation splits into four real transport equations, two along each light-cone
direction.  In the massless, zero-density limit those are solved by quadrature
against a traveling background rho_Delta(u), beta_Delta, and in closed form for
a cosine background.  Grids are indexed [t, x].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Union

import numpy as np
from scipy import integrate

from . import stencils
from .errors import DomainError, NotAllowedError, ValidationError
from .kinematics import KinematicState

# amplitudes at or below this fraction of their maximum are excluded from the phase equations
AMPLITUDE_EPSILON = 1e-12


class ArgumentConvention(Enum):
    LEADING = "leading"  # u = k x + omega t
    TRAILING = "trailing"  # u = k x - omega t

    @property
    def s(self) -> int:
        return 1 if self is ArgumentConvention.LEADING else -1


# Chosen by select_argument_convention on the reference background; see DESIGN.md.
DEFAULT_CONVENTION = ArgumentConvention.LEADING


class PrefactorSource(Enum):
    EQUATION = "equation"
    PRINTED = "printed"


@dataclass(frozen=True)
class Prefactors:
    rho1: float
    rho2: float
    phi1: float
    phi2: float


@dataclass(frozen=True)
class DecomposedState:
    rho1: np.ndarray
    rho2: np.ndarray
    phi1: np.ndarray
    phi2: np.ndarray

    def __post_init__(self):
        stencils.require_commensurate(self.rho1, self.rho2, self.phi1, self.phi2)

    def to_spinor(self) -> np.ndarray:
        """Array of shape (2, *grid) with psi_i = rho_i e^{i phi_i}."""
        return np.stack([self.rho1 * np.exp(1j * self.phi1), self.rho2 * np.exp(1j * self.phi2)])


@dataclass(frozen=True)
class QuasiParams:
    c1: float
    c2: float
    k_phi1: float
    k_phi2: float
    A_rho: float
    B_rho: float
    kappa: float
    k_rho: float
    omega_rho: float
    C_beta: float

    def __post_init__(self):
        if self.k_rho == 0:
            raise DomainError("k_rho must be non-zero")
        if not (math.isfinite(self.kappa) and self.kappa != 0):
            raise DomainError(f"kappa must be finite and non-zero, got {self.kappa}")

    @staticmethod
    def kappa_from_background(m_delta: float, g_delta: float, rho0: float, omega_rho: float, k_rho: float) -> float:
        """(m^2 + g rho0^2 / 2) / (omega^2 - k^2)."""
        gap = omega_rho**2 - k_rho**2
        if gap == 0:
            raise DomainError("light-like density mode: omega_rho^2 = k_rho^2")
        return (m_delta**2 + 0.5 * g_delta * rho0**2) / gap

    @property
    def speed(self) -> float:
        return self.omega_rho / self.k_rho


@dataclass
class Residuals:
    res1: np.ndarray
    res2: np.ndarray
    res3: np.ndarray
    res4: np.ndarray
    flagged: np.ndarray

    def as_tuple(self) -> tuple[np.ndarray, ...]:
        return (self.res1, self.res2, self.res3, self.res4)

    def norms(self) -> dict[str, float]:
        """RMS of each residual over unflagged points."""
        out = {}
        for name, grid in zip(("res1", "res2", "res3", "res4"), self.as_tuple()):
            valid = grid[np.isfinite(grid)]
            out[name] = float(np.sqrt(np.mean(valid**2))) if valid.size else 0.0
        return out

    def max_abs(self) -> float:
        return float(max(np.nanmax(np.abs(g)) if np.any(np.isfinite(g)) else 0.0 for g in self.as_tuple()))


# ------------------------------------ the decomposed equations ---------------------------


def decomposed_residuals(
    state: DecomposedState,
    rho_Delta: np.ndarray,
    beta_Delta: np.ndarray,
    m: float,
    mu: float,
    dx: float,
    dt: float,
    rho_Delta2: Optional[np.ndarray] = None,
    beta_Delta2: Optional[np.ndarray] = None,
) -> Residuals:
    """Pointwise residuals of the four transport equations.

    Component 2 may see its own background (rho_Delta2, beta_Delta2); by default
    it shares component 1's.
    """
    rho_Delta2 = rho_Delta if rho_Delta2 is None else rho_Delta2
    beta_Delta2 = beta_Delta if beta_Delta2 is None else beta_Delta2
    stencils.require_commensurate(state.rho1, rho_Delta, beta_Delta, rho_Delta2, beta_Delta2)
    if np.ndim(state.rho1) != 2:
        raise ValidationError(f"decomposed residuals need [t, x] grids, got shape {np.shape(state.rho1)}")
    stencils.require_min_size(state.rho1, 3)

    def dt_(f):
        return stencils.first_derivative(f, dt, stencils.T_AXIS)

    def dx_(f):
        return stencils.first_derivative(f, dx, stencils.X_AXIS)

    rho1, rho2, phi1, phi2 = state.rho1, state.rho2, state.phi1, state.phi2
    rel = phi2 - phi1
    scale = max(float(np.max(np.abs(rho1))), float(np.max(np.abs(rho2))), 1e-300)
    small1 = np.abs(rho1) <= AMPLITUDE_EPSILON * scale
    small2 = np.abs(rho2) <= AMPLITUDE_EPSILON * scale
    safe1 = np.where(small1, 1.0, rho1)
    safe2 = np.where(small2, 1.0, rho2)

    g1, h1 = np.cos(beta_Delta) * rho_Delta, np.sin(beta_Delta) * rho_Delta
    g2, h2 = np.cos(beta_Delta2) * rho_Delta2, np.sin(beta_Delta2) * rho_Delta2

    res1 = dt_(rho1) - dx_(rho1) + g1 * rho1 + m * rho2 * np.sin(rel)
    res2 = dt_(phi1) - dx_(phi1) - h1 - m * (rho2 / safe1) * np.cos(rel) + mu
    res3 = dt_(rho2) + dx_(rho2) - g2 * rho2 - m * rho1 * np.sin(rel)
    res4 = dt_(phi2) + dx_(phi2) + h2 - m * (rho1 / safe2) * np.cos(rel) + mu
    return Residuals(
        res1=res1,
        res2=np.where(small1, np.nan, res2),
        res3=res3,
        res4=np.where(small2, np.nan, res4),
        flagged=small1 | small2,
    )


def vacuum_state(state: KinematicState, x: np.ndarray, t: np.ndarray) -> DecomposedState:
    """Free massive state of the decomposed equations with phi2 - phi1 = pi.

    `state` must lie on the negative-energy branch; the decomposed equations
    describe the conjugate spinor, whose phase runs as -p x + E t.
    """
    if state.m <= 0:
        raise DomainError("vacuum state needs m > 0")
    state.require_on_shell(1, "vacuum")
    if state.E + state.mu >= 0:
        raise DomainError("vacuum state needs the negative-energy branch E + mu < 0")
    k, omega = -state.p, -state.E
    tt, xx = np.meshgrid(np.asarray(t, dtype=float), np.asarray(x, dtype=float), indexing="ij")
    ratio = (k + math.hypot(k, state.m)) / state.m
    phi1 = k * xx - omega * tt
    return DecomposedState(
        rho1=np.ones_like(xx),
        rho2=np.full_like(xx, ratio),
        phi1=phi1,
        phi2=phi1 + math.pi,
    )


# ------------------------------------ prefactors and quadrature --------------------------


def _require_not_lightlike(v: float) -> None:
    if v == 1.0 or v == -1.0:
        raise ValidationError(f"light-like ratio: omega/k = {v}")


def equation_prefactors(speed: float, convention: ArgumentConvention = DEFAULT_CONVENTION) -> Prefactors:
    """Prefactors of the x-integrals that solve the massless transport equations
    for a background of argument u = k x + s omega t, v = s omega/k."""
    v = convention.s * speed
    _require_not_lightlike(v)
    return Prefactors(rho1=1.0 / (1.0 - v), rho2=1.0 / (v + 1.0), phi1=1.0 / (v - 1.0), phi2=-1.0 / (v + 1.0))


def printed_prefactors(speed: float) -> Prefactors:
    """Prefactors as displayed: (w-1)^-1, -(w+1)^-1, (w-1)^-1, -(w+1)^-1."""
    _require_not_lightlike(speed)
    return Prefactors(
        rho1=1.0 / (speed - 1.0), rho2=-1.0 / (speed + 1.0), phi1=1.0 / (speed - 1.0), phi2=-1.0 / (speed + 1.0)
    )


@dataclass(frozen=True)
class QuadratureOffsets:
    """Values of ln(rho_i / c_i) and phi_i at the grid origin."""

    log_rho1: float = 0.0
    log_rho2: float = 0.0
    phi1: float = 0.0
    phi2: float = 0.0


def quadrature_solution(
    beta_Delta: np.ndarray,
    rho_Delta: np.ndarray,
    speeds: Union[float, Prefactors],
    c1: float,
    c2: float,
    dx: float,
    dt: float,
    convention: ArgumentConvention = DEFAULT_CONVENTION,
    offsets: QuadratureOffsets = QuadratureOffsets(),
) -> DecomposedState:
    """Massless solution by cumulative trapezoid along x from the grid origin.

    The t-dependence of the anchor follows each transport equation at x0, e.g.
    d_t ln rho1 = (alpha1 - 1) cos(beta) rho_Delta there.  `speeds` is the
    background omega/k or explicit per-component prefactors.
    """
    stencils.require_commensurate(beta_Delta, rho_Delta)
    if np.ndim(rho_Delta) != 2:
        raise ValidationError(f"quadrature needs [t, x] grids, got shape {np.shape(rho_Delta)}")
    pre = speeds if isinstance(speeds, Prefactors) else equation_prefactors(speeds, convention)
    g = np.cos(beta_Delta) * rho_Delta
    h = np.sin(beta_Delta) * rho_Delta
    along_x_g = integrate.cumulative_trapezoid(g, dx=dx, axis=-1, initial=0.0)
    along_x_h = integrate.cumulative_trapezoid(h, dx=dx, axis=-1, initial=0.0)

    def anchor(series: np.ndarray) -> np.ndarray:
        return integrate.cumulative_trapezoid(series, dx=dt, initial=0.0)[:, None]

    g0, h0 = g[:, 0], h[:, 0]
    log_rho1 = offsets.log_rho1 + pre.rho1 * along_x_g + anchor((pre.rho1 - 1.0) * g0)
    log_rho2 = offsets.log_rho2 + pre.rho2 * along_x_g + anchor((1.0 - pre.rho2) * g0)
    phi1 = offsets.phi1 + pre.phi1 * along_x_h + anchor((pre.phi1 + 1.0) * h0)
    phi2 = offsets.phi2 + pre.phi2 * along_x_h + anchor(-(pre.phi2 + 1.0) * h0)
    return DecomposedState(rho1=c1 * np.exp(log_rho1), rho2=c2 * np.exp(log_rho2), phi1=phi1, phi2=phi2)


# ------------------------------------ closed form ----------------------------------------


def background_argument(params: QuasiParams, x, t, convention: ArgumentConvention = DEFAULT_CONVENTION):
    return params.k_rho * np.asarray(x) + convention.s * params.omega_rho * np.asarray(t)


def cosine_background(params: QuasiParams, convention: ArgumentConvention = DEFAULT_CONVENTION):
    """(rho_fn, beta_fn) for rho_Delta = A cos(kappa u) + B sin(kappa u), beta_Delta = C_beta."""

    def rho_fn(x, t):
        u = params.kappa * background_argument(params, x, t, convention)
        return params.A_rho * np.cos(u) + params.B_rho * np.sin(u)

    def beta_fn(x, t):
        return np.full(np.broadcast(np.asarray(x), np.asarray(t)).shape, params.C_beta, dtype=float)

    return rho_fn, beta_fn


def _bracket(params: QuasiParams, x, t, convention: ArgumentConvention):
    """(kappa k)^-1 {A sin(kappa u) - B cos(kappa u)}, the x-antiderivative of rho_Delta."""
    u = params.kappa * background_argument(params, x, t, convention)
    return (params.A_rho * np.sin(u) - params.B_rho * np.cos(u)) / (params.kappa * params.k_rho)


def _prefactors(params: QuasiParams, convention: ArgumentConvention, source: PrefactorSource) -> Prefactors:
    if source is PrefactorSource.PRINTED:
        return printed_prefactors(params.speed)
    return equation_prefactors(params.speed, convention)


def closed_form_state(
    params: QuasiParams,
    x,
    t,
    convention: ArgumentConvention = DEFAULT_CONVENTION,
    source: PrefactorSource = PrefactorSource.EQUATION,
) -> DecomposedState:
    pre = _prefactors(params, convention, source)
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    bracket = _bracket(params, x, t, convention)
    cos_b, sin_b = math.cos(params.C_beta), math.sin(params.C_beta)
    shape = np.broadcast(x, t).shape
    return DecomposedState(
        rho1=np.broadcast_to(params.c1 * np.exp(pre.rho1 * cos_b * bracket), shape).copy(),
        rho2=np.broadcast_to(params.c2 * np.exp(pre.rho2 * cos_b * bracket), shape).copy(),
        phi1=np.broadcast_to(params.k_phi1 * (x + t) + pre.phi1 * sin_b * bracket, shape).copy(),
        phi2=np.broadcast_to(params.k_phi2 * (x - t) + pre.phi2 * sin_b * bracket, shape).copy(),
    )


def quasiparticle_spinor(
    params: QuasiParams,
    x,
    t,
    convention: ArgumentConvention = DEFAULT_CONVENTION,
    source: PrefactorSource = PrefactorSource.EQUATION,
) -> np.ndarray:
    """Two-component closed form, shape (2, *broadcast(x, t).shape)."""
    return closed_form_state(params, x, t, convention, source).to_spinor()


def closed_form_offsets(params: QuasiParams, x0: float, t0: float, convention=DEFAULT_CONVENTION) -> QuadratureOffsets:
    """Anchor values that make quadrature_solution reproduce closed_form_state."""
    origin = closed_form_state(params, np.array([[x0]]), np.array([[t0]]), convention)
    return QuadratureOffsets(
        log_rho1=float(np.log(origin.rho1[0, 0] / params.c1)) if params.c1 else 0.0,
        log_rho2=float(np.log(origin.rho2[0, 0] / params.c2)) if params.c2 else 0.0,
        phi1=float(origin.phi1[0, 0]),
        phi2=float(origin.phi2[0, 0]),
    )


def convention_residuals(
    params: QuasiParams, x: np.ndarray, t: np.ndarray, m: float = 0.0, mu: float = 0.0
) -> dict[ArgumentConvention, float]:
    """Total RMS residual of the displayed solution under each argument convention."""
    tt, xx = np.meshgrid(np.asarray(t, dtype=float), np.asarray(x, dtype=float), indexing="ij")
    dx, dt = float(x[1] - x[0]), float(t[1] - t[0])
    out = {}
    for convention in ArgumentConvention:
        state = closed_form_state(params, xx, tt, convention, PrefactorSource.PRINTED)
        rho_fn, beta_fn = cosine_background(params, convention)
        residuals = decomposed_residuals(state, rho_fn(xx, tt), beta_fn(xx, tt), m, mu, dx, dt)
        out[convention] = float(sum(residuals.norms().values()))
    return out


def select_argument_convention(
    params: QuasiParams, x: np.ndarray, t: np.ndarray, m: float = 0.0, mu: float = 0.0
) -> ArgumentConvention:
    scores = convention_residuals(params, x, t, m, mu)
    return min(scores, key=lambda c: (scores[c], c.value))


# ------------------------------------ first-order phases ---------------------------------


@dataclass(frozen=True)
class AffinePhase:
    """a_x x + a_t t + offset."""

    slope_x: float
    slope_t: float
    offset: float = 0.0

    def __call__(self, x, t):
        return self.slope_x * np.asarray(x) + self.slope_t * np.asarray(t) + self.offset

    def dalembertian(self) -> float:
        return 0.0


@dataclass(frozen=True)
class FirstOrderPhases:
    beta_Delta: AffinePhase
    theta_N: AffinePhase
    efield: float
    beta_from_components: AffinePhase
    theta_degenerate: bool

    @property
    def beta_discrepancy(self) -> AffinePhase:
        """beta_from_components - beta_Delta; its t slope is k_phi2."""
        b, p = self.beta_from_components, self.beta_Delta
        return AffinePhase(b.slope_x - p.slope_x, b.slope_t - p.slope_t, b.offset - p.offset)


def first_order_phases(params: QuasiParams) -> FirstOrderPhases:
    k1, k2 = params.k_phi1, params.k_phi2
    half_diff, half_sum = 0.5 * (k1 - k2), 0.5 * (k1 + k2)
    beta = AffinePhase(half_diff, half_diff, params.C_beta)
    # (k1+k2)/2 [1 + 2 sin(C) A/(k1+k2)] expanded so the degenerate sum stays finite
    theta = AffinePhase(half_sum, half_sum + math.sin(params.C_beta) * params.A_rho)
    # (phi1 - phi2)/2 with phi1 = k1 (x + t), phi2 = k2 (x - t)
    from_components = AffinePhase(half_diff, half_sum, params.C_beta)
    return FirstOrderPhases(
        beta_Delta=beta,
        theta_N=theta,
        efield=beta.dalembertian(),
        beta_from_components=from_components,
        theta_degenerate=(k1 + k2 == 0),
    )


# ------------------------------------ component boosts -----------------------------------

FieldFunction = Callable[[np.ndarray, np.ndarray], Union[np.ndarray, DecomposedState]]


def pull_back(x, t, rapidity: float) -> tuple[np.ndarray, np.ndarray]:
    """Lambda^{-1}(x, t): x' = cosh x - sinh t, t' = cosh t - sinh x."""
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    return ch * x - sh * t, ch * t - sh * x


def component_boost(field: FieldFunction, rapidity1: float, rapidity2: float) -> FieldFunction:
    """psi_i(x) -> e^{(-1)^i eta_i} psi_i(Lambda_i^{-1} x), independently per component.

    `field` returns either a spinor array (2, ...) or a DecomposedState.
    """
    w1, w2 = math.exp(-rapidity1), math.exp(rapidity2)

    def transformed(x, t):
        first = field(*pull_back(x, t, rapidity1))
        second = field(*pull_back(x, t, rapidity2))
        if isinstance(first, DecomposedState):
            assert isinstance(second, DecomposedState)
            return DecomposedState(
                rho1=w1 * first.rho1, rho2=w2 * second.rho2, phi1=first.phi1, phi2=second.phi2
            )
        return np.stack([w1 * np.asarray(first)[0], w2 * np.asarray(second)[1]])

    return transformed


def co_transformed_background(
    rho_fn: Callable, beta_fn: Callable, rapidity: float, component: int
) -> tuple[Callable, Callable]:
    """Background seen by one boosted component: density weighted by e^{+eta}
    (component 1) or e^{-eta} (component 2), both fields pulled back."""
    if component not in (1, 2):
        raise ValidationError(f"component must be 1 or 2, got {component}")
    weight = math.exp(rapidity if component == 1 else -rapidity)

    def rho(x, t):
        return weight * rho_fn(*pull_back(x, t, rapidity))

    def beta(x, t):
        return beta_fn(*pull_back(x, t, rapidity))

    return rho, beta


# ------------------------------------ weak nonlinearity ----------------------------------


@dataclass
class WeakLimitFields:
    u: np.ndarray
    rho: np.ndarray
    beta: np.ndarray
    efield: np.ndarray
    defined: np.ndarray
    exponent: float
    r: float


def weak_limit_fields(
    omega_rho: float, k_rho: float, omega_beta: float, k_beta: float, C: float, u: np.ndarray
) -> WeakLimitFields:
    """rho = (C K u)^{1/(2r)}, beta = ln(u)/K, E = k_beta beta' cos(beta) rho + sin(beta) rho',
    with K = 2r (1-2r)^{-1/2} sqrt((omega_beta^2 - k_beta^2)/(omega_rho^2 - k_rho^2))."""
    beta_gap = omega_beta**2 - k_beta**2
    rho_gap = omega_rho**2 - k_rho**2
    if beta_gap == 0 or rho_gap == 0:
        raise DomainError("light-like mode in weak-limit fields")
    r = (omega_beta * omega_rho - k_beta * k_rho) / beta_gap
    if not 0.0 < r < 0.5:
        raise NotAllowedError(r, "need 0 < r < 1/2")
    if beta_gap / rho_gap <= 0:
        raise DomainError("weak-limit fields need (omega_beta^2 - k_beta^2)/(omega_rho^2 - k_rho^2) > 0")
    if C == 0:
        raise DomainError("weak-limit phase undefined for C = 0")
    K = 2.0 * r / math.sqrt(1.0 - 2.0 * r) * math.sqrt(beta_gap / rho_gap)
    exponent = 1.0 / (2.0 * r)
    u = np.asarray(u, dtype=float)
    base = C * K * u
    defined = (base > 0) & (u > 0)
    safe_u = np.where(defined, u, 1.0)
    safe_base = np.where(defined, base, 1.0)
    rho = safe_base**exponent
    beta = np.log(safe_u) / K
    rho_p = exponent * C * K * safe_base ** (exponent - 1.0)
    beta_p = 1.0 / (K * safe_u)
    efield = k_beta * beta_p * np.cos(beta) * rho + np.sin(beta) * rho_p
    nan = np.nan
    return WeakLimitFields(
        u=u,
        rho=np.where(defined, rho, nan),
        beta=np.where(defined, beta, nan),
        efield=np.where(defined, efield, nan),
        defined=defined,
        exponent=exponent,
        r=r,
    )

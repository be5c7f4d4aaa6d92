"""Dynamics of the complex pairing field Delta.

The evolved equation is

    d_t^2 Delta = d_x^2 Delta - s m^2 Delta - (g/6) |Delta|^2 Delta

with s = +1 (manifest symmetry) or s = -1 (broken symmetry, kinks).  The field
itself is evolved; density and phase are post-processing, since the split
equations are singular where the density vanishes.

Also here: kinks and their asymptotes, the static-kink oracle, linearized
modes, the E-field coupling and the traveling-wave ODE systems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy import integrate, linalg, optimize, special

from . import logger as log_mod
from . import stencils
from .constants import (
    CFL_FACTOR,
    KINK_NEWTON_MAX_ITER,
    KINK_NEWTON_TOL,
    PHASE_EPSILON,
    TRAVEL_ATOL,
    TRAVEL_RTOL,
)
from .errors import ConvergenceError, DivergenceError, DomainError, NotAllowedError, ValidationError


class MassSign(Enum):
    MANIFEST = "manifest"
    BROKEN = "broken"

    @property
    def s(self) -> int:
        return 1 if self is MassSign.MANIFEST else -1


class Boundary(Enum):
    PERIODIC = "periodic"
    FIXED_ASYMPTOTE = "fixed_asymptote"


class TravelingVariant(Enum):
    GENERIC = "generic"
    LOGARITHMIC = "logarithmic"


class GridLengthError(ValidationError):
    def __init__(self, nx, *shapes):
        super().__init__(f"grid mismatch: nx = {nx} but arrays have shapes {list(shapes)}")


@dataclass
class FieldGrid:
    nx: int
    dx: float
    values: np.ndarray
    velocity: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        self.velocity = np.asarray(self.velocity, dtype=complex)
        if self.dx <= 0:
            raise ValidationError(f"dx must be positive, got {self.dx}")
        if self.values.shape != (self.nx,) or self.velocity.shape != (self.nx,):
            raise GridLengthError(self.nx, self.values.shape, self.velocity.shape)

    @classmethod
    def at_rest(cls, values: np.ndarray, dx: float) -> "FieldGrid":
        values = np.asarray(values, dtype=complex)
        return cls(len(values), dx, values, np.zeros_like(values))

    def copy(self) -> "FieldGrid":
        return FieldGrid(self.nx, self.dx, self.values.copy(), self.velocity.copy())


@dataclass(frozen=True)
class SolverConfig:
    dx: float
    dt: float
    steps: int
    m_delta: float = 1.0
    g_delta: float = 6.0
    boundary: Boundary = Boundary.PERIODIC
    sign: MassSign = MassSign.MANIFEST
    snapshot_every: int = 0
    rho_background: float = 0.0

    def __post_init__(self):
        if self.dx <= 0 or self.dt <= 0:
            raise ValidationError(f"dx and dt must be positive, got dx={self.dx}, dt={self.dt}")
        if self.dt > CFL_FACTOR * self.dx:
            raise ValidationError(f"CFL violated: dt = {self.dt} > {CFL_FACTOR} * dx = {CFL_FACTOR * self.dx}")
        if self.steps < 0:
            raise ValidationError(f"steps must be non-negative, got {self.steps}")
        if self.m_delta < 0 or self.g_delta < 0:
            raise ValidationError("m_delta and g_delta must be non-negative")


@dataclass(frozen=True)
class Snapshot:
    step: int
    t: float
    grid: FieldGrid


@dataclass
class Diagnostics:
    t: list[float] = field(default_factory=list)
    energy: list[float] = field(default_factory=list)
    charge: list[float] = field(default_factory=list)
    max_abs: list[float] = field(default_factory=list)
    efield_norm: list[float] = field(default_factory=list)

    def rows(self):
        return zip(self.t, self.energy, self.charge, self.max_abs, self.efield_norm)

    def relative_drift(self, name: str) -> float:
        series = np.asarray(getattr(self, name))
        reference = abs(series[0]) or 1.0
        return float(np.max(np.abs(series - series[0])) / reference)


@dataclass
class Trajectory:
    snapshots: list[Snapshot]
    diagnostics: Diagnostics

    @property
    def final(self) -> FieldGrid:
        return self.snapshots[-1].grid


def lattice(nx: int, dx: float) -> np.ndarray:
    """Symmetric lattice x_i = (i - (nx-1)/2) dx."""
    return (np.arange(nx) - 0.5 * (nx - 1)) * dx


# ------------------------------------ evolution ------------------------------------------


class _Dynamics:
    """Force, energy and diagnostics for one SolverConfig."""

    def __init__(self, cfg: SolverConfig):
        self.cfg = cfg
        self.s = cfg.sign.s
        self.m2 = cfg.m_delta**2
        self.g = cfg.g_delta
        self.rho0 = cfg.rho_background

    def _local_force(self, total: np.ndarray) -> np.ndarray:
        return -self.s * self.m2 * total - (self.g / 6.0) * np.abs(total) ** 2 * total

    def laplacian(self, values: np.ndarray) -> np.ndarray:
        lap = stencils.periodic_laplacian(values, self.cfg.dx)
        if self.cfg.boundary is Boundary.FIXED_ASYMPTOTE:
            lap[0] = lap[-1] = 0.0
        return lap

    def force(self, values: np.ndarray) -> np.ndarray:
        out = self.laplacian(values) + self._local_force(values + self.rho0)
        if self.rho0:
            out -= self._local_force(np.asarray(self.rho0, dtype=complex))
        if self.cfg.boundary is Boundary.FIXED_ASYMPTOTE:
            out[0] = out[-1] = 0.0
        return out

    def _potential(self, total: np.ndarray) -> np.ndarray:
        a2 = np.abs(total) ** 2
        density = 0.5 * self.s * self.m2 * a2 + (self.g / 24.0) * a2 * a2
        if self.cfg.sign is MassSign.BROKEN and self.g > 0:
            density = density + 1.5 * self.m2 * self.m2 / self.g
        return density

    def energy(self, grid: FieldGrid) -> float:
        dx = self.cfg.dx
        values = grid.values
        if self.cfg.boundary is Boundary.PERIODIC:
            grad = (np.roll(values, -1) - values) / dx
        else:
            grad = np.diff(values) / dx
        potential = self._potential(values + self.rho0)
        if self.rho0:
            background = self._potential(np.asarray([self.rho0], dtype=complex))[0]
            slope = self.s * self.m2 * self.rho0 + (self.g / 6.0) * self.rho0**3
            potential = potential - background - slope * values.real
        kinetic = 0.5 * np.abs(grid.velocity) ** 2
        return float((np.sum(kinetic) + 0.5 * np.sum(np.abs(grad) ** 2) + np.sum(potential)) * dx)

    def efield(self, grid: FieldGrid) -> np.ndarray:
        """-Im[(v^2 - Delta_x^2)/Delta^2], NaN where the phase is undefined."""
        total = grid.values + self.rho0
        if self.cfg.boundary is Boundary.PERIODIC:
            grad = stencils.periodic_gradient(total, self.cfg.dx)
        else:
            grad = np.gradient(total, self.cfg.dx, edge_order=2)
        undefined = phase_undefined(total)
        safe = np.where(undefined, 1.0, total)
        e = -np.imag((grid.velocity**2 - grad**2) / safe**2)
        return np.where(undefined, np.nan, e)

    def record(self, diagnostics: Diagnostics, grid: FieldGrid, t: float) -> None:
        e = self.efield(grid)
        diagnostics.t.append(t)
        diagnostics.energy.append(self.energy(grid))
        diagnostics.charge.append(charge(grid))
        diagnostics.max_abs.append(float(np.max(np.abs(grid.values))) if grid.nx else 0.0)
        diagnostics.efield_norm.append(float(math.sqrt(np.nansum(e * e) * self.cfg.dx)))


def charge(grid: FieldGrid) -> float:
    """Q = sum Im(conj(Delta) d_t Delta) dx."""
    return float(np.sum(np.imag(np.conj(grid.values) * grid.velocity)) * grid.dx)


def evolve(grid: FieldGrid, cfg: SolverConfig, logger: Optional[log_mod.ScsLogger] = None) -> Trajectory:
    """Position-Verlet leapfrog: half drift, kick, half drift."""
    log = log_mod.resolve(logger)
    if not math.isclose(grid.dx, cfg.dx, rel_tol=1e-12):
        raise ValidationError(f"grid mismatch: grid dx {grid.dx} != solver dx {cfg.dx}")
    dyn = _Dynamics(cfg)
    state = grid.copy()
    pinned = (state.values[0], state.values[-1])
    if cfg.boundary is Boundary.FIXED_ASYMPTOTE:
        state.velocity[0] = state.velocity[-1] = 0.0

    diagnostics = Diagnostics()
    dyn.record(diagnostics, state, 0.0)
    snapshots = [Snapshot(0, 0.0, state.copy())]
    half = 0.5 * cfg.dt
    log.debug(f"Evolving nx={grid.nx} for {cfg.steps} steps, dt={cfg.dt}, {cfg.sign.value}, {cfg.boundary.value}")

    for step in range(1, cfg.steps + 1):
        q = state.values + half * state.velocity
        v = state.velocity + cfg.dt * dyn.force(q)
        q = q + half * v
        if cfg.boundary is Boundary.FIXED_ASYMPTOTE:
            q[0], q[-1] = pinned
        state.values, state.velocity = q, v
        if not (np.all(np.isfinite(q)) and np.all(np.isfinite(v))):
            raise DivergenceError(step)
        t = step * cfg.dt
        dyn.record(diagnostics, state, t)
        if cfg.snapshot_every and step % cfg.snapshot_every == 0:
            snapshots.append(Snapshot(step, t, state.copy()))
            log.debug(f"step {step}: energy {diagnostics.energy[-1]:.12g} charge {diagnostics.charge[-1]:.12g}")
    if snapshots[-1].step != cfg.steps:
        snapshots.append(Snapshot(cfg.steps, cfg.steps * cfg.dt, state.copy()))
    return Trajectory(snapshots, diagnostics)


def initial_condition(ic: str, nx: int, dx: float, m_delta: float, g_delta: float) -> FieldGrid:
    """zero | kink | mode K A  (A cos(K x) at rest on the symmetric lattice)."""
    words = ic.split()
    if not words:
        raise ValidationError("empty initial condition")
    match words[0]:
        case "zero":
            return FieldGrid.at_rest(np.zeros(nx, dtype=complex), dx)
        case "kink":
            return FieldGrid.at_rest(static_kink_oracle(m_delta, g_delta, nx, dx), dx)
        case "mode":
            if len(words) != 3:
                raise ValidationError(f"mode initial condition needs 'mode K A', got {ic!r}")
            try:
                k, amplitude = float(words[1]), float(words[2])
            except ValueError as exc:
                raise ValidationError(f"malformed mode initial condition {ic!r}") from exc
            return FieldGrid.at_rest(amplitude * np.cos(k * lattice(nx, dx)), dx)
    raise ValidationError(f"unknown initial condition {words[0]!r}")


# ------------------------------------ density and phase ----------------------------------


@dataclass(frozen=True)
class PhaseSplit:
    rho: np.ndarray
    beta: np.ndarray
    undefined: np.ndarray  # |Delta| below the phase threshold
    jumps: np.ndarray  # indices i with an unresolvable pi jump between i and i+1

    def reconstruct(self) -> np.ndarray:
        return self.rho * np.exp(1j * np.where(self.undefined, 0.0, self.beta))


def phase_undefined(values: np.ndarray, epsilon: float = PHASE_EPSILON) -> np.ndarray:
    values = np.asarray(values)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    return np.abs(values) <= epsilon * scale


def density_phase_split(grid: FieldGrid, epsilon: float = PHASE_EPSILON) -> PhaseSplit:
    values = grid.values
    rho = np.abs(values)
    undefined = phase_undefined(values, epsilon)
    raw = np.angle(values)
    if np.any(~undefined):
        # carry the last defined phase across undefined samples before unwrapping
        idx = np.where(~undefined, np.arange(len(raw)), 0)
        np.maximum.accumulate(idx, out=idx)
        first = int(np.argmax(~undefined))
        idx[:first] = first
        raw = raw[idx]
    beta = np.unwrap(raw)
    jumps = np.nonzero(np.abs(np.diff(beta)) >= math.pi * (1.0 - 1e-12))[0]
    beta = np.where(undefined, np.nan, beta)
    if np.any(undefined):
        # a zero sample is itself the crossing
        jumps = np.union1d(jumps, np.nonzero(undefined)[0])
    return PhaseSplit(rho, beta, undefined, jumps)


def continuity_residual(rho: np.ndarray, beta: np.ndarray, dx: float, dt: float) -> np.ndarray:
    """d_t(rho d_t beta) - d_x(rho d_x beta) on [t, x] grids."""
    stencils.require_commensurate(rho, beta)
    d = stencils.first_derivative
    return d(rho * d(beta, dt, stencils.T_AXIS), dt, stencils.T_AXIS) - d(
        rho * d(beta, dx, stencils.X_AXIS), dx, stencils.X_AXIS
    )


def current_residual(rho: np.ndarray, beta: np.ndarray, dx: float, dt: float) -> np.ndarray:
    """Standard complex-field current d_mu(rho^2 d^mu beta)."""
    return continuity_residual(np.asarray(rho) ** 2, beta, dx, dt)


# ------------------------------------ kinks ----------------------------------------------


def _require_coupling(g_delta: float) -> None:
    if not g_delta > 0:
        raise DomainError(f"g_delta must be positive, got {g_delta}")


def vacuum_amplitude(m_delta: float, g_delta: float) -> float:
    """sqrt(6 m^2 / g), the broken-symmetry vacuum density."""
    _require_coupling(g_delta)
    return m_delta * math.sqrt(6.0 / g_delta)


def kink_profile(x, t, m_delta: float, g_delta: float, direction: int = 1):
    """(m/sqrt(g/3)) tanh[m (x +/- t)], as displayed."""
    _require_coupling(g_delta)
    return m_delta / math.sqrt(g_delta / 3.0) * np.tanh(m_delta * (np.asarray(x) + direction * np.asarray(t)))


def printed_kink_residual(m_delta: float, g_delta: float, x, t, direction: int = 1):
    """Broken-equation residual of kink_profile; the light-like d'Alembertian vanishes."""
    rho = kink_profile(x, t, m_delta, g_delta, direction)
    return -(m_delta**2) * rho + (g_delta / 6.0) * rho**3


def kink_asymptote(signs: tuple[int, int], C: float, omega: float, k: float, m_delta: float, g_delta: float) -> float:
    """+/- (m/sqrt(g/3)) [1 +/- sqrt(1 + 2g C(omega^2 - k^2)/(3 m^4))]^(1/2)."""
    _require_coupling(g_delta)
    outer, inner = signs
    if m_delta == 0:
        raise DomainError("kink asymptote needs m_delta != 0")
    radicand = 1.0 + 2.0 * g_delta * C * (omega**2 - k**2) / (3.0 * m_delta**4)
    if radicand < 0:
        raise DomainError(f"kink asymptote undefined: inner radicand {radicand} < 0")
    bracket = 1.0 + inner * math.sqrt(radicand)
    if bracket < 0:
        raise DomainError(f"kink asymptote undefined: outer radicand {bracket} < 0")
    return outer * m_delta / math.sqrt(g_delta / 3.0) * math.sqrt(bracket)


def kink_residual(profile: np.ndarray, m_delta: float, g_delta: float, dx: float) -> np.ndarray:
    """Interior residual of rho'' + m^2 rho - (g/6) rho^3 on the 3-point stencil."""
    u = np.asarray(profile, dtype=float)
    return (u[2:] - 2.0 * u[1:-1] + u[:-2]) / dx**2 + m_delta**2 * u[1:-1] - (g_delta / 6.0) * u[1:-1] ** 3


def static_kink_oracle(
    m_delta: float,
    g_delta: float,
    nx: int,
    dx: float,
    tol: float = KINK_NEWTON_TOL,
    max_iter: int = KINK_NEWTON_MAX_ITER,
    logger: Optional[log_mod.ScsLogger] = None,
) -> np.ndarray:
    """Odd static kink of the discrete broken-symmetry profile equation.

    Seeded with v tanh(m x / sqrt(2)) and polished by Newton steps; ends held at -v, +v.
    """
    log = log_mod.resolve(logger)
    v = vacuum_amplitude(m_delta, g_delta)
    if nx < 3:
        raise ValidationError(f"grid too small: nx = {nx}")
    u = v * np.tanh(m_delta * lattice(nx, dx) / math.sqrt(2.0))
    u[0], u[-1] = -v, v
    inv_h2 = 1.0 / dx**2
    best = math.inf
    for iteration in range(max_iter + 1):
        residual = kink_residual(u, m_delta, g_delta, dx)
        norm = float(np.max(np.abs(residual))) if residual.size else 0.0
        best = min(best, norm)
        if norm < tol:
            log.debug(f"static kink converged in {iteration} Newton steps, residual {norm:.3e}")
            return u
        if iteration == max_iter:
            break
        n = nx - 2
        ab = np.zeros((3, n))
        ab[0, 1:] = inv_h2
        ab[1, :] = -2.0 * inv_h2 + m_delta**2 - 0.5 * g_delta * u[1:-1] ** 2
        ab[2, :-1] = inv_h2
        u[1:-1] += linalg.solve_banded((1, 1), ab, -residual)
        u = 0.5 * (u - u[::-1])
    raise ConvergenceError("static kink Newton iteration did not converge", best)


def near_core_profile(x, C: float, C1: float):
    """C exp(erfi^{-1}(y)^2) with y = sqrt(2/pi)(C1 + x)."""

    def inverse_erfi(y: float) -> float:
        if y == 0.0:
            return 0.0
        bound = 1.0
        while special.erfi(bound) < abs(y):
            bound *= 2.0
        root = optimize.brentq(lambda z: special.erfi(z) - abs(y), 0.0, bound, xtol=1e-15)
        return math.copysign(root, y)

    y = math.sqrt(2.0 / math.pi) * (C1 + np.asarray(x, dtype=float))
    z = np.vectorize(inverse_erfi, otypes=[float])(y)
    return C * np.exp(z * z)


# ------------------------------------ linearized modes -----------------------------------


def linearized_dispersion(rho0: float, m_delta: float, g_delta: float, k: float) -> float:
    """omega = sqrt(k^2 + m^2 + g rho0^2 / 2), the density branch."""
    if rho0 < 0:
        raise DomainError(f"rho0 must be non-negative, got {rho0}")
    return math.sqrt(k * k + m_delta**2 + 0.5 * g_delta * rho0**2)


def phase_mode(k_beta: float, profile: Callable, direction: int = 1, constant: float = 0.0) -> Callable:
    """beta(x, t) = profile(k (x +/- t)) + constant."""

    def beta(x, t):
        return profile(k_beta * (np.asarray(x) + direction * np.asarray(t))) + constant

    return beta


def fit_mode_frequency(times: np.ndarray, series: np.ndarray) -> float:
    """Angular frequency of a single oscillating mode, zero-crossing guess refined by curve_fit."""
    times = np.asarray(times, dtype=float)
    series = np.asarray(series, dtype=float)
    offset = float(np.mean(series))
    centered = series - offset
    idx = np.nonzero(np.signbit(centered[:-1]) != np.signbit(centered[1:]))[0]
    if len(idx) < 2:
        raise ConvergenceError("too few zero crossings to estimate a frequency", float(len(idx)))
    crossings = times[idx] - centered[idx] * (times[idx + 1] - times[idx]) / (centered[idx + 1] - centered[idx])
    omega0 = math.pi / float(np.mean(np.diff(crossings)))

    def model(t, a, b, c, omega):
        return a * np.cos(omega * t) + b * np.sin(omega * t) + c

    p0 = (centered[0], 0.0, offset, omega0)
    params, _ = optimize.curve_fit(model, times, series, p0=p0, maxfev=20000)
    return abs(float(params[3]))


def efield_coupling(
    rho: np.ndarray, beta: np.ndarray, rho0: float, dx: float, dt: float
) -> tuple[np.ndarray, np.ndarray]:
    """(E, E_asymptotic) with E = d_mu ln(1 + rho/rho0)^{-1} d^mu beta and
    E_asymptotic = -(1/rho0) d_mu rho d^mu beta."""
    stencils.require_commensurate(rho, beta)
    rho = np.asarray(rho, dtype=float)
    if rho0 <= 0:
        raise DomainError(f"rho0 must be positive, got {rho0}")
    ratio = 1.0 + rho / rho0
    if np.any(ratio <= 0):
        raise DomainError("efield coupling domain: 1 + rho/rho0 must be positive")
    d = stencils.first_derivative
    log_term = -np.log(ratio)
    beta_t, beta_x = d(beta, dt, stencils.T_AXIS), d(beta, dx, stencils.X_AXIS)
    full = d(log_term, dt, stencils.T_AXIS) * beta_t - d(log_term, dx, stencils.X_AXIS) * beta_x
    asym = -(d(rho, dt, stencils.T_AXIS) * beta_t - d(rho, dx, stencils.X_AXIS) * beta_x) / rho0
    return full, asym


# ------------------------------------ traveling waves ------------------------------------


@dataclass(frozen=True)
class TravelingParams:
    omega_rho: float
    k_rho: float
    omega_beta: float
    k_beta: float
    C: float
    rho_init: float
    m_delta: float = 1.0
    variant: TravelingVariant = TravelingVariant.GENERIC

    def __post_init__(self):
        if not self.rho_init > 0:
            raise DomainError(f"rho_init must be positive, got {self.rho_init}")
        if self.omega_rho**2 == self.k_rho**2:
            raise DomainError("light-like density mode: omega_rho^2 = k_rho^2")

    @property
    def rho_gap(self) -> float:
        return self.omega_rho**2 - self.k_rho**2

    @property
    def r(self) -> float:
        denom = self.omega_beta**2 - self.k_beta**2
        if denom == 0:
            raise DomainError("light-like phase mode: omega_beta^2 = k_beta^2")
        return (self.omega_beta * self.omega_rho - self.k_beta * self.k_rho) / denom

    @classmethod
    def logarithmic(cls, omega_rho: float, k_rho: float, C: float, rho_init: float, m_delta: float = 1.0):
        return cls(omega_rho, k_rho, 2 * omega_rho, 2 * k_rho, C, rho_init, m_delta, TravelingVariant.LOGARITHMIC)


@dataclass(frozen=True)
class Allowedness:
    allowed: bool
    r: float


def allowedness(params: TravelingParams) -> Allowedness:
    r = params.r
    return Allowedness(0.0 < r < 0.5, r)


@dataclass
class TravelingSolution:
    u: np.ndarray
    rho: np.ndarray
    beta: np.ndarray
    efield: np.ndarray
    halted_at: Optional[float] = None
    halt_reason: str = ""


class _TravelingSystem:
    def __init__(self, params: TravelingParams):
        self.p = params
        self.mass_term = params.m_delta**2 / params.rho_gap
        if params.variant is TravelingVariant.GENERIC:
            self.r = params.r
            self.coupling = (
                params.C**2 / (1.0 - 2.0 * self.r) * (params.omega_beta**2 - params.k_beta**2) / params.rho_gap
            )
        else:
            self.r = 0.5

    def radicand(self, rho: float) -> float:
        base = self.mass_term * rho * rho
        if self.p.variant is TravelingVariant.LOGARITHMIC:
            return base + self.p.C**2 * math.log(rho * rho)
        return base + self.coupling * rho ** (2.0 - 4.0 * self.r)

    def beta_prime(self, rho: float) -> float:
        return self.p.C * rho ** (-2.0 * self.r)

    def efield_factor(self) -> float:
        if self.p.variant is TravelingVariant.LOGARITHMIC:
            return -2.0 * self.p.rho_gap
        return -(self.p.omega_rho * self.p.omega_beta - self.p.k_rho * self.p.k_beta)

    def rhs(self, u, y):
        rho = y[0]
        if rho <= 0:
            return [0.0, 0.0]
        return [math.sqrt(max(self.radicand(rho), 0.0)), self.beta_prime(rho)]


def traveling_integrate(
    params: TravelingParams, u_max: float, du: float, logger: Optional[log_mod.ScsLogger] = None
) -> TravelingSolution:
    """Integrate (rho, beta) in the traveling coordinate u; halts at rho = 0 or a zero radicand."""
    log = log_mod.resolve(logger)
    if du <= 0 or u_max <= 0:
        raise ValidationError(f"u_max and du must be positive, got u_max={u_max}, du={du}")
    if params.variant is TravelingVariant.GENERIC:
        status = allowedness(params)
        if not status.allowed:
            raise NotAllowedError(status.r, "need 0 < r < 1/2")
    system = _TravelingSystem(params)
    if system.radicand(params.rho_init) < 0:
        raise NotAllowedError(system.r, "radicand negative at u = 0")

    def radicand_event(u, y):
        return system.radicand(y[0]) if y[0] > 0 else -1.0

    def rho_event(u, y):
        return y[0]

    radicand_event.terminal = True  # type: ignore[attr-defined]
    radicand_event.direction = -1  # type: ignore[attr-defined]
    rho_event.terminal = True  # type: ignore[attr-defined]
    rho_event.direction = -1  # type: ignore[attr-defined]

    u_eval = np.arange(0.0, u_max + 0.5 * du, du)
    u_eval = u_eval[u_eval <= u_max]
    result = integrate.solve_ivp(
        system.rhs,
        (0.0, float(u_eval[-1])),
        [params.rho_init, 0.0],
        method="RK45",
        t_eval=u_eval,
        events=[radicand_event, rho_event],
        rtol=TRAVEL_RTOL,
        atol=TRAVEL_ATOL,
    )
    if not result.success:
        raise ConvergenceError(f"traveling-wave integration failed: {result.message}", math.nan)
    rho, beta = result.y
    efield = traveling_efield(params, rho)
    halted_at, reason = None, ""
    for events, name in zip(result.t_events, ("radicand", "rho")):
        if len(events):
            halted_at, reason = float(events[0]), f"{name} reached zero"
            log.warning(f"Traveling-wave integration halted at u = {halted_at:.12g}: {reason}")
    return TravelingSolution(result.t, rho, beta, efield, halted_at, reason)


def traveling_efield(params: TravelingParams, rho: np.ndarray) -> np.ndarray:
    """-(omega_rho omega_beta - k_rho k_beta) rho' beta' / rho along a traveling solution.

    NaN wherever rho is not positive.
    """
    system = _TravelingSystem(params)
    rho = np.asarray(rho, dtype=float)
    efield = np.full(rho.shape, np.nan)
    for i, value in enumerate(rho):
        if value > 0:
            rho_p = math.sqrt(max(system.radicand(value), 0.0))
            efield[i] = system.efield_factor() * rho_p * system.beta_prime(value) / value
    return efield


def decoupled_growth(params: TravelingParams, u: np.ndarray) -> np.ndarray:
    """C = 0 closed form rho_init exp(|m| u / sqrt(omega^2 - k^2))."""
    if params.rho_gap <= 0:
        raise DomainError("decoupled growth needs omega_rho^2 > k_rho^2")
    return params.rho_init * np.exp(abs(params.m_delta) * np.asarray(u) / math.sqrt(params.rho_gap))

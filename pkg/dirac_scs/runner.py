"""ScsRunner: dispatches a RunConfig to its workflow and writes the artifacts."""

from __future__ import annotations

from functools import partial
from pathlib import Path
from typing import Any

import numpy as np

from . import checks, gauge, meanfield, pairdyn, quasi, scsfactor, utils
from .config import RunConfig
from .constants import ALGEBRA_CHECK_SEED, MANIFEST_NAME, __version__
from .errors import GridMismatchError, NumericalError, ValidationError
from .kinematics import free_dispersion


class ScsRunner:
    """Runs one subcommand as a short list of steps."""

    def __init__(self, config: RunConfig):
        self.config = config
        if config.logger is None:
            raise RuntimeError("Logger not initialized in config")
        self.logger = config.logger
        self.params = config.parameters
        self.artifacts: list[Path] = []

    @property
    def output_dir(self) -> Path:
        return self.config.output_dir

    def main(self) -> int:
        """Run the configured subcommand; 0 ok, 1 invalid input, 2 numerical failure."""
        self.logger.debug(f"Starting run configuration: {self.config}")
        try:
            return 0 if self._main_uncaught_core() else 2
        except ValidationError as e:
            self.logger.exception(e, f"Invalid input: {e}")
            return 1
        except NumericalError as e:
            self.logger.exception(e, f"Numerical failure: {e}")
            return 2

    def _main_uncaught_core(self) -> bool:
        match self.config.subcommand:
            case "algebra-check":
                step = self._algebra_check
            case "dispersion":
                step = self._dispersion
            case "factorize":
                step = self._factorize
            case "evolve":
                step = self._evolve
            case "kink":
                step = self._kink
            case "travel":
                step = self._travel
            case "quasi":
                step = self._quasi
            case "regimes":
                step = self._regimes
            case "gauge":
                step = self._gauge
            case other:
                raise ValidationError(f"unknown subcommand {other!r}")
        return self.run_workflow(self.config.subcommand, [self._prepare_output, step, self._write_manifest])

    def run_workflow(self, name: str, steps: list) -> bool:
        self.logger.info("Running", name, "workflow")
        for step in steps:
            self.logger.debug(f"Running step {step.__name__}.")
            if not step():
                return self.logger.error(f"FAILED running step {step.__name__}.")
        return self.logger.info("Workflow", name, "completed.")

    # ------------------------------------------------------------------------

    def _prepare_output(self) -> bool:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return True

    def _artifact(self, name: str) -> Path:
        path = self.output_dir / name
        self.artifacts.append(path)
        return path

    def _write_csv(self, name: str, header, rows) -> Path:
        path = utils.write_csv(self._artifact(name), header, rows)
        self.logger.debug("Wrote", path)
        return path

    def _write_json(self, name: str, obj: Any) -> Path:
        path = utils.write_json(self._artifact(name), obj)
        self.logger.debug("Wrote", path)
        return path

    def _write_manifest(self) -> bool:
        """run.yaml: subcommand, version, resolved parameters and artifact digests."""
        manifest = {
            "subcommand": self.config.subcommand,
            "version": __version__,
            "parameters": {k: _plain(v) for k, v in self.params.items()},
            "artifacts": [{"name": p.name, "sha256": utils.sha256_file(p)} for p in self.artifacts],
        }
        (self.output_dir / MANIFEST_NAME).write_text(utils.yaml_dumps(manifest))
        return self.logger.info(f"Wrote {len(self.artifacts)} artifacts to {self.output_dir}")

    # ------------------------------------------------------------------------

    def _algebra_check(self) -> bool:
        seed = self.config.seed if self.config.seed is not None else ALGEBRA_CHECK_SEED
        checker = checks.AlgebraChecker(self.logger, int(self.params["samples"]), seed)
        records = checker.run()
        self._write_json("report.json", [r.to_dict() for r in records])
        failed = [r.name for r in records if not r.passed]
        if failed:
            return self.logger.error(f"{len(failed)} algebra checks failed:", ", ".join(failed))
        return self.logger.info(f"All {len(records)} algebra checks passed")

    def _dispersion(self) -> bool:
        p = self.params
        ps = np.linspace(p["p_min"], p["p_max"], int(p["p_steps"]))
        delta = complex(p["re_delta"], p["im_delta"])
        if delta == 0 and p["sigma"] == 0:
            self.logger.info("Free dispersion")
            rows_e = [list(free_dispersion(float(q), p["m"], p["mu"])) for q in ps]
        else:
            self.logger.info(f"In-medium dispersion over {len(ps)} momenta")
            rows_e = meanfield.scan_dispersion(
                ps, p["mu"], p["sigma"], p["m"], delta, jobs=self.config.threads, logger=self.logger
            )
        width = max((len(r) for r in rows_e), default=0)
        header = ["p"] + [f"E{i + 1}" for i in range(width)]
        rows = [[float(q)] + list(r) + [None] * (width - len(r)) for q, r in zip(ps, rows_e)]
        self._write_csv("dispersion.csv", header, rows)
        return True

    def _factorize(self) -> bool:
        p = self.params
        e_plus = p["E"] + p["mu"] + p["p"]
        e_minus = p["E"] + p["mu"] - p["p"]
        factor = scsfactor.factorize(e_plus, e_minus, complex(p["re_delta"], p["im_delta"]))
        self._write_json("factorize.json", scsfactor.factor_report(factor))
        return self.logger.info(f"Reconstruction error {factor.reconstruction_error:.3e}")

    def _initial_grid(self, cfg: pairdyn.SolverConfig) -> pairdyn.FieldGrid:
        p = self.params
        ic = str(p["ic"]).strip()
        parts = ic.split(maxsplit=1)
        if not parts or parts[0] != "file":
            return pairdyn.initial_condition(ic, int(p["nx"]), cfg.dx, cfg.m_delta, cfg.g_delta)
        if len(parts) != 2:
            raise ValidationError("file initial condition needs 'file PATH'")
        try:
            data = np.loadtxt(parts[1], delimiter=",", ndmin=2)
        except (OSError, ValueError) as exc:
            raise ValidationError(f"cannot read initial-condition file {parts[1]}: {exc}") from exc
        if data.shape[1] not in (1, 2):
            raise ValidationError(f"initial-condition file needs 1 or 2 columns (re[, im]), got {data.shape[1]}")
        values = data[:, 0] + (1j * data[:, 1] if data.shape[1] == 2 else 0.0)
        if len(values) != int(p["nx"]):
            raise GridMismatchError(f"initial-condition file has {len(values)} rows, nx = {p['nx']}")
        return pairdyn.FieldGrid.at_rest(values, cfg.dx)

    def _evolve(self) -> bool:
        p = self.params
        cfg = pairdyn.SolverConfig(
            dx=p["dx"],
            dt=p["dt"],
            steps=int(p["steps"]),
            m_delta=p["m_delta"],
            g_delta=p["g_delta"],
            boundary=_enum(pairdyn.Boundary, p["boundary"], "boundary"),
            sign=_enum(pairdyn.MassSign, p["sign"], "sign"),
            snapshot_every=int(p["snapshot_every"]),
            rho_background=p["rho_background"],
        )
        grid = self._initial_grid(cfg)
        trajectory = pairdyn.evolve(grid, cfg, self.logger)
        x = pairdyn.lattice(grid.nx, cfg.dx)
        rows = []
        for snap in trajectory.snapshots:
            split = pairdyn.density_phase_split(snap.grid)
            for xi, value, rho, beta, bad in zip(x, snap.grid.values, split.rho, split.beta, split.undefined):
                rows.append([snap.t, xi, value.real, value.imag, rho, None if bad else beta])
        self._write_csv("snapshots.csv", ["t", "x", "re_delta", "im_delta", "rho", "beta"], rows)
        self._write_csv(
            "diagnostics.csv", ["t", "energy", "charge", "max_abs", "efield_norm"], trajectory.diagnostics.rows()
        )
        d = trajectory.diagnostics
        return self.logger.info(
            f"Relative drift: energy {d.relative_drift('energy'):.3e}, charge {d.relative_drift('charge'):.3e}"
        )

    def _kink(self) -> bool:
        p = self.params
        m, g, nx, dx = p["m_delta"], p["g_delta"], int(p["nx"]), p["dx"]
        profile = pairdyn.static_kink_oracle(m, g, nx, dx, logger=self.logger)
        x = pairdyn.lattice(nx, dx)
        printed = pairdyn.kink_profile(x, 0.0, m, g)
        printed_residual = pairdyn.printed_kink_residual(m, g, x, 0.0)
        oracle_residual = pairdyn.kink_residual(profile, m, g, dx)
        self._write_csv(
            "kink.csv", ["x", "rho", "printed_rho", "printed_residual"], zip(x, profile, printed, printed_residual)
        )
        self._write_json(
            "kink.json",
            {
                "vacuum_amplitude": pairdyn.vacuum_amplitude(m, g),
                "oracle_residual": float(np.max(np.abs(oracle_residual))),
                "printed_residual": float(np.max(np.abs(printed_residual))),
            },
        )
        return True

    def _travel(self) -> bool:
        p = self.params
        variant = _enum(pairdyn.TravelingVariant, p["variant"], "variant")
        if variant is pairdyn.TravelingVariant.LOGARITHMIC:
            params = pairdyn.TravelingParams.logarithmic(p["omega_rho"], p["k_rho"], p["C"], p["rho_init"], p["m_delta"])
        else:
            params = pairdyn.TravelingParams(
                p["omega_rho"], p["k_rho"], p["omega_beta"], p["k_beta"], p["C"], p["rho_init"], p["m_delta"]
            )
        solution = pairdyn.traveling_integrate(params, p["u_max"], p["du"], self.logger)
        self._write_csv(
            "travel.csv", ["u", "rho", "beta", "efield"], zip(solution.u, solution.rho, solution.beta, solution.efield)
        )
        self._write_json(
            "travel.json",
            {
                "r": 0.5 if variant is pairdyn.TravelingVariant.LOGARITHMIC else params.r,
                "variant": variant.value,
                "halted_at": solution.halted_at,
                "halt_reason": solution.halt_reason,
            },
        )
        return True

    def _quasi(self) -> bool:
        p = self.params
        if p["background"] != "cosine":
            raise ValidationError(f"unknown quasiparticle background {p['background']!r}; expected 'cosine'")
        params = quasi.QuasiParams(
            **{key: p[key] for key in QUASI_FIELDS}  # type: ignore[arg-type]
        )
        x = np.linspace(p["x_min"], p["x_max"], int(p["nx"]))
        t = np.linspace(0.0, p["t_max"], int(p["nt"]))
        if len(x) < 3 or len(t) < 3:
            raise ValidationError("quasi grid needs nx >= 3 and nt >= 3")
        dx, dt = float(x[1] - x[0]), float(t[1] - t[0])
        tt, xx = np.meshgrid(t, x, indexing="ij")
        convention = quasi.DEFAULT_CONVENTION
        rho_fn, beta_fn = quasi.cosine_background(params, convention)
        rho_bg, beta_bg = rho_fn(xx, tt), beta_fn(xx, tt)
        offsets = quasi.closed_form_offsets(params, x[0], t[0], convention)
        state = quasi.quadrature_solution(
            beta_bg, rho_bg, params.speed, params.c1, params.c2, dx, dt, convention, offsets
        )
        residuals = quasi.decomposed_residuals(state, rho_bg, beta_bg, p["m"], p["mu"], dx, dt)
        closed = quasi.closed_form_state(params, xx, tt, convention)
        closed_error = float(np.max(np.abs(state.to_spinor() - closed.to_spinor())))
        columns = (tt, xx, state.rho1, state.rho2, state.phi1, state.phi2)
        self._write_csv(
            "quasi_fields.csv", ["t", "x", "rho1", "rho2", "phi1", "phi2"], zip(*(c.ravel() for c in columns))
        )
        report: dict[str, Any] = dict(residuals.norms())
        report.update(convention=convention.value, closed_form_error=closed_error)
        self._write_json("quasi_residuals.json", report)
        return self.logger.info(f"Quasiparticle residuals {residuals.norms()} ({convention.value})")

    def _regimes(self) -> bool:
        p = self.params
        names = (str(p["param1"]), str(p["param2"]))
        for name in names:
            if name not in REGIME_FIELDS:
                raise ValidationError(f"unknown regime parameter {name!r}; expected one of {REGIME_FIELDS}")
        if names[0] == names[1]:
            raise ValidationError("regime scan needs two different parameters")
        axis1 = np.linspace(p["min1"], p["max1"], int(p["steps1"]))
        axis2 = np.linspace(p["min2"], p["max2"], int(p["steps2"]))
        base = {key: float(p[key]) for key in REGIME_FIELDS}
        points = [(float(a), float(b)) for a in axis1 for b in axis2]
        labels = utils.ordered_map(partial(_classify_point, base=base, names=names), points, self.config.threads)
        self._write_csv("regimes.csv", ["param1", "param2", "label"], [(a, b, lab) for (a, b), lab in zip(points, labels)])
        return self.logger.info(f"Classified {len(points)} points over {names[0]} x {names[1]}")

    def _gauge(self) -> bool:
        p = self.params
        if not p["phases"]:
            raise ValidationError("gauge needs phases = PATH to a t,x,theta_N,beta_Delta CSV")
        t, x, phases = read_phase_csv(Path(str(p["phases"])))
        dt, dx = float(t[1] - t[0]), float(x[1] - x[0])
        A = gauge.pure_gauge(phases, dx, dt)
        efield = gauge.field_strength(phases.beta_Delta, dx, dt)
        _, _, mu5, mu_bar = gauge.chemical_potentials_from_potential(p["mu"], A)
        tt, xx = np.meshgrid(t, x, indexing="ij")
        columns = (tt, xx, A.A0, A.A1, efield, mu5, mu_bar)
        self._write_csv(
            "gauge.csv", ["t", "x", "A0", "A1", "efield", "mu5", "mu_bar"], zip(*(c.ravel() for c in columns))
        )
        report = {
            condition.value: _rms(gauge.gauge_residual(condition, phases, dx, dt))
            for condition in (gauge.GaugeCondition.LORENTZ, gauge.GaugeCondition.COULOMB, gauge.GaugeCondition.WEYL)
        }
        report["dirac"] = _rms(gauge.gauge_residual(gauge.DiracCondition(0.0), phases, dx, dt))
        report["efield_potential_mismatch"] = float(
            np.max(np.abs(efield - gauge.field_strength_from_potential(A, dx, dt))[1:-1, 1:-1])
        )
        self._write_json("gauge_residuals.json", report)
        return True


# ------------------------------------------------------------------------------

QUASI_FIELDS = ("c1", "c2", "k_phi1", "k_phi2", "A_rho", "B_rho", "kappa", "k_rho", "omega_rho", "C_beta")
REGIME_FIELDS = ("rho0", "condensate_fraction", "p", "q_beta", "q_delta", "mu", "m")


def _classify_point(point: tuple[float, float], *, base: dict[str, float], names: tuple[str, str]) -> str:
    values = dict(base)
    values[names[0]], values[names[1]] = point
    return gauge.classify_regime(gauge.RegimeInputs(**values)).value


def read_phase_csv(path: Path) -> tuple[np.ndarray, np.ndarray, gauge.PhasePair]:
    """Long-format t,x,theta_N,beta_Delta on a regular lattice -> [t, x] grids."""
    try:
        with open(path) as opened:
            header = [h.strip() for h in opened.readline().split(",")]
    except OSError as exc:
        raise ValidationError(f"cannot read phase file {path}: {exc}") from exc
    expected = ["t", "x", "theta_N", "beta_Delta"]
    if header != expected:
        raise ValidationError(f"phase file header must be {','.join(expected)}, got {','.join(header)}")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    t, x = np.unique(data[:, 0]), np.unique(data[:, 1])
    if len(t) * len(x) != len(data):
        raise GridMismatchError(f"phase file is not a full lattice: {len(data)} rows for {len(t)} x {len(x)}")
    if len(t) < 3 or len(x) < 3:
        raise ValidationError("phase file needs at least 3 times and 3 positions")
    for name, axis in (("t", t), ("x", x)):
        steps = np.diff(axis)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
            raise GridMismatchError(f"phase file {name} axis is not regularly spaced")
    order = np.lexsort((data[:, 1], data[:, 0]))
    shape = (len(t), len(x))
    theta = data[order, 2].reshape(shape)
    beta = data[order, 3].reshape(shape)
    return t, x, gauge.PhasePair(theta, beta)


def _rms(grid: np.ndarray) -> float:
    return float(np.sqrt(np.mean(np.asarray(grid) ** 2)))


def _enum(kind, value, name: str):
    try:
        return kind(str(value))
    except ValueError as exc:
        choices = [v.value for v in kind]
        raise ValidationError(f"{name} must be one of {choices}, got {value!r}") from exc


def _plain(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


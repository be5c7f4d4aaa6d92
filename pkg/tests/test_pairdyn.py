import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dirac_scs import pairdyn
from dirac_scs.errors import DomainError, NotAllowedError, ValidationError
from dirac_scs.pairdyn import (
    Boundary,
    FieldGrid,
    GridLengthError,
    MassSign,
    SolverConfig,
    TravelingParams,
    TravelingVariant,
)


class TestSolverConfig:
    def test_cfl_violation_rejected(self):
        with pytest.raises(ValidationError, match="CFL violated"):
            SolverConfig(dx=0.05, dt=0.03, steps=10)

    def test_negative_steps_rejected(self):
        with pytest.raises(ValidationError):
            SolverConfig(dx=0.05, dt=0.01, steps=-1)

    def test_grid_length_checked(self):
        with pytest.raises(GridLengthError, match="grid mismatch"):
            FieldGrid(4, 0.1, np.zeros(4), np.zeros(5))

    def test_grid_and_solver_spacing_must_agree(self):
        grid = FieldGrid.at_rest(np.zeros(8), 0.1)
        with pytest.raises(ValidationError, match="grid mismatch"):
            pairdyn.evolve(grid, SolverConfig(dx=0.2, dt=0.05, steps=1))


class TestZeroField:
    @pytest.mark.parametrize("sign", [MassSign.MANIFEST, MassSign.BROKEN])
    @pytest.mark.parametrize("boundary", [Boundary.PERIODIC, Boundary.FIXED_ASYMPTOTE])
    def test_zero_initial_condition_stays_zero(self, sign, boundary):
        grid = pairdyn.initial_condition("zero", 64, 0.1, 1.0, 6.0)
        cfg = SolverConfig(dx=0.1, dt=0.025, steps=200, sign=sign, boundary=boundary, snapshot_every=50)
        trajectory = pairdyn.evolve(grid, cfg)
        assert len(trajectory.snapshots) == 5
        for snapshot in trajectory.snapshots:
            assert not np.any(snapshot.grid.values)
            assert not np.any(snapshot.grid.velocity)
        assert not np.any(trajectory.diagnostics.charge)
        assert not np.any(trajectory.diagnostics.max_abs)


class TestConservation:
    @pytest.fixture(scope="class")
    def trajectory(self):
        nx, dx = 1024, 0.05
        x = pairdyn.lattice(nx, dx)
        values = 0.3 * np.exp(-(x**2) / 32.0) * np.exp(0.3j * x)
        grid = FieldGrid(nx, dx, values, -0.5j * values)
        cfg = SolverConfig(dx=dx, dt=0.25 * dx, steps=10_000, m_delta=0.3, g_delta=6.0)
        return pairdyn.evolve(grid, cfg)

    def test_energy_drift(self, trajectory):
        assert trajectory.diagnostics.relative_drift("energy") < 1e-4

    def test_charge_drift(self, trajectory):
        assert abs(trajectory.diagnostics.charge[0]) > 0.1
        assert trajectory.diagnostics.relative_drift("charge") < 1e-10

    def test_snapshots_include_final_step(self, trajectory):
        assert trajectory.snapshots[0].step == 0
        assert trajectory.snapshots[-1].step == 10_000
        assert trajectory.snapshots[-1].t == pytest.approx(125.0)
        assert len(trajectory.diagnostics.t) == 10_001


class TestLinearModes:
    @pytest.mark.parametrize("mode, rho0", [(1, 1.0), (2, 0.5), (1, 2.0)])
    def test_frequency_matches_linearized_dispersion(self, mode, rho0):
        nx, dx, dt = 64, 0.1, 0.025
        k = 2.0 * math.pi * mode / (nx * dx)
        grid = pairdyn.initial_condition(f"mode {k!r} 1e-4", nx, dx, 1.0, 2.0)
        cfg = SolverConfig(dx=dx, dt=dt, steps=1600, m_delta=1.0, g_delta=2.0, snapshot_every=1, rho_background=rho0)
        trajectory = pairdyn.evolve(grid, cfg)
        j = int(np.argmax(np.abs(grid.values)))
        times = np.array([s.t for s in trajectory.snapshots])
        series = np.array([s.grid.values[j].real for s in trajectory.snapshots])
        omega = pairdyn.fit_mode_frequency(times, series)
        assert omega == pytest.approx(pairdyn.linearized_dispersion(rho0, 1.0, 2.0, k), rel=1e-2)

    def test_linearized_dispersion_value(self):
        # omega^2 = k^2 + 2 for rho0 = 1, m = 1, g = 2
        assert pairdyn.linearized_dispersion(1.0, 1.0, 2.0, 0.5) ** 2 == pytest.approx(2.25)


def test_spatial_convergence_is_second_order():
    length, dt, steps = 2.0 * math.pi, 0.005, 200

    def run(nx):
        dx = length / nx
        x = np.arange(nx) * dx
        values = 0.5 * np.cos(x) + 0.3j * np.sin(2.0 * x)
        cfg = SolverConfig(dx=dx, dt=dt, steps=steps, m_delta=1.0, g_delta=6.0)
        return pairdyn.evolve(FieldGrid.at_rest(values, dx), cfg).final.values

    reference = run(512)
    errors = [np.max(np.abs(run(nx) - reference[:: 512 // nx])) for nx in (64, 128)]
    assert 3.5 <= errors[0] / errors[1] <= 5.0


class TestKinks:
    def test_oracle_solves_discrete_profile_equation(self):
        profile = pairdyn.static_kink_oracle(1.0, 6.0, 401, 0.05)
        assert np.max(np.abs(pairdyn.kink_residual(profile, 1.0, 6.0, 0.05))) < 1e-8
        assert_allclose(profile, -profile[::-1], atol=1e-14)
        assert profile[-1] == pytest.approx(pairdyn.vacuum_amplitude(1.0, 6.0))

    def test_oracle_on_fine_wide_lattice(self):
        profile = pairdyn.static_kink_oracle(1.0, 6.0, 4096, 0.01)
        assert len(profile) == 4096
        assert np.max(np.abs(pairdyn.kink_residual(profile, 1.0, 6.0, 0.01))) < 1e-8
        assert_allclose(profile, -profile[::-1], atol=1e-14)

    def test_static_kink_holds_under_evolution(self):
        nx, dx = 801, 0.05
        grid = pairdyn.initial_condition("kink", nx, dx, 1.0, 6.0)
        cfg = SolverConfig(
            dx=dx,
            dt=0.0125,
            steps=800,
            m_delta=1.0,
            g_delta=6.0,
            boundary=Boundary.FIXED_ASYMPTOTE,
            sign=MassSign.BROKEN,
        )
        final = pairdyn.evolve(grid, cfg).final.values
        assert math.sqrt(np.sum(np.abs(final - grid.values) ** 2) * dx) < 1e-3

    def test_displayed_profile_is_not_static(self):
        x = np.linspace(-3.0, 3.0, 61)
        assert np.max(np.abs(pairdyn.printed_kink_residual(1.0, 6.0, x, 0.0))) > 0.1

    def test_asymptote_reduces_to_vacuum(self):
        value = pairdyn.kink_asymptote((1, 1), 0.0, 0.5, 0.2, 1.5, 3.0)
        assert value == pytest.approx(1.5 * math.sqrt(6.0 / 3.0))
        assert value == pytest.approx(pairdyn.vacuum_amplitude(1.5, 3.0))

    def test_asymptote_domain(self):
        with pytest.raises(DomainError, match="radicand"):
            pairdyn.kink_asymptote((1, 1), -10.0, 1.0, 0.0, 1.0, 6.0)
        with pytest.raises(DomainError, match="g_delta"):
            pairdyn.vacuum_amplitude(1.0, 0.0)


class TestPhaseSplit:
    def test_zero_crossing_reported(self):
        grid = FieldGrid.at_rest(np.tanh(pairdyn.lattice(10, 0.5)), 0.5)
        split = pairdyn.density_phase_split(grid)
        assert list(split.jumps) == [4]
        assert_allclose(split.reconstruct(), grid.values, atol=1e-15)

    def test_exact_zero_is_undefined(self):
        grid = FieldGrid.at_rest(np.tanh(pairdyn.lattice(11, 0.5)), 0.5)
        split = pairdyn.density_phase_split(grid)
        assert split.undefined[5]
        assert math.isnan(split.beta[5])
        assert 5 in split.jumps

    def test_smooth_winding_is_unwrapped(self):
        x = np.linspace(0.0, 4.0 * math.pi, 200)
        split = pairdyn.density_phase_split(FieldGrid.at_rest(np.exp(1j * x), x[1] - x[0]))
        assert_allclose(split.beta, x, atol=1e-12)
        assert len(split.jumps) == 0

    def test_continuity_residual_of_plane_wave(self):
        t = np.linspace(0.0, 1.0, 21)
        x = np.linspace(0.0, 2.0, 41)
        tt, xx = np.meshgrid(t, x, indexing="ij")
        rho = np.full_like(xx, 0.7)
        beta = 0.8 * xx - 1.3 * tt
        residual = pairdyn.continuity_residual(rho, beta, x[1] - x[0], t[1] - t[0])
        assert np.max(np.abs(residual)) < 1e-10

    @staticmethod
    def _space_time_split(trajectory):
        t = np.array([s.t for s in trajectory.snapshots])
        values = np.array([s.grid.values for s in trajectory.snapshots])
        beta = np.unwrap(np.unwrap(np.angle(values), axis=-1), axis=0)
        return t, np.abs(values), beta

    def test_continuity_holds_along_evolved_plane_wave(self):
        nx, dx, dt, amplitude, m, g = 64, 0.1, 0.01, 0.5, 1.0, 6.0
        x = pairdyn.lattice(nx, dx)
        k = 2.0 * math.pi * 2 / (nx * dx)
        # discrete Laplacian eigenvalue keeps the wave an exact lattice solution
        k2 = (2.0 / dx * math.sin(0.5 * k * dx)) ** 2
        omega = math.sqrt(k2 + m**2 + g * amplitude**2 / 6.0)
        values = amplitude * np.exp(1j * k * x)
        grid = FieldGrid(nx, dx, values, -1j * omega * values)
        cfg = SolverConfig(dx=dx, dt=dt, steps=200, m_delta=m, g_delta=g, snapshot_every=1)
        t, rho, beta = self._space_time_split(pairdyn.evolve(grid, cfg))
        assert np.max(np.abs(rho - amplitude)) < 1e-3
        residual = pairdyn.continuity_residual(rho, beta, dx, t[1] - t[0])
        assert np.max(np.abs(residual)) < 5e-3

    def test_standard_current_conserved_along_evolved_packet(self):
        nx, dx, dt = 256, 0.1, 0.02
        x = pairdyn.lattice(nx, dx)
        values = 0.3 * np.exp(-(x**2) / 8.0) * np.exp(1j * x)
        grid = FieldGrid(nx, dx, values, -1j * math.sqrt(2.0) * values)
        cfg = SolverConfig(dx=dx, dt=dt, steps=250, m_delta=1.0, g_delta=6.0, snapshot_every=1)
        t, rho, beta = self._space_time_split(pairdyn.evolve(grid, cfg))
        residual = pairdyn.current_residual(rho, beta, dx, t[1] - t[0])
        assert np.max(np.abs(residual)) < 5e-3

    def test_printed_and_standard_currents_differ_on_sloped_density(self):
        t = np.linspace(0.0, 1.0, 11)
        x = np.linspace(0.0, 2.0, 41)
        tt, xx = np.meshgrid(t, x, indexing="ij")
        rho = 1.0 + 0.5 * xx
        beta = 0.8 * xx + 0.0 * tt
        dx, dt = x[1] - x[0], t[1] - t[0]
        assert_allclose(pairdyn.continuity_residual(rho, beta, dx, dt), -0.4, atol=1e-10)
        assert_allclose(pairdyn.current_residual(rho, beta, dx, dt), -0.8 * rho, atol=1e-10)


class TestInitialConditions:
    def test_mode(self):
        grid = pairdyn.initial_condition("mode 1.0 0.1", 16, 0.25, 1.0, 6.0)
        assert_allclose(grid.values, 0.1 * np.cos(pairdyn.lattice(16, 0.25)))
        assert not np.any(grid.velocity)

    @pytest.mark.parametrize("ic", ["", "mode 1.0", "mode a b", "gaussian"])
    def test_malformed(self, ic):
        with pytest.raises(ValidationError):
            pairdyn.initial_condition(ic, 16, 0.25, 1.0, 6.0)


def test_efield_suppressed_inversely_with_background():
    t = np.linspace(0.0, 1.0, 51)
    x = np.linspace(0.0, 2.0 * math.pi, 201)
    tt, xx = np.meshgrid(t, x, indexing="ij")
    rho = 0.5 + 0.1 * np.sin(xx - 0.3 * tt)
    beta = 0.2 * np.cos(xx + tt) + 0.5 * xx
    backgrounds = np.array([10.0, 30.0, 100.0, 300.0, 1000.0])
    norms = []
    for rho0 in backgrounds:
        full, asym = pairdyn.efield_coupling(rho, beta, rho0, x[1] - x[0], t[1] - t[0])
        norms.append(np.sqrt(np.mean(full**2)))
        assert np.max(np.abs(full - asym)) <= 0.1 * np.max(np.abs(asym))
    slope = np.polyfit(np.log(backgrounds), np.log(norms), 1)[0]
    assert slope == pytest.approx(-1.0, abs=0.05)


class TestTravelingWaves:
    @staticmethod
    def params(r, C=0.1):
        # k_rho = k_beta = 0 and omega_beta = 1 make r = omega_rho
        return TravelingParams(omega_rho=r, k_rho=0.0, omega_beta=1.0, k_beta=0.0, C=C, rho_init=1.0)

    @pytest.mark.parametrize("r", [0.1, 0.25, 0.3667])
    def test_allowed_window_integrates(self, r):
        solution = pairdyn.traveling_integrate(self.params(r), u_max=1.0, du=0.01)
        assert solution.halted_at is None
        assert len(solution.u) == 101
        assert np.all(np.diff(solution.rho) > 0)

    @pytest.mark.parametrize("r", [0.5, 0.75])
    def test_outside_window_rejected(self, r):
        with pytest.raises(NotAllowedError, match="not classically allowed"):
            pairdyn.traveling_integrate(self.params(r), u_max=1.0, du=0.01)

    def test_allowedness(self):
        assert pairdyn.allowedness(self.params(0.3)).allowed
        assert not pairdyn.allowedness(self.params(0.6)).allowed

    def test_decoupled_growth(self):
        params = self.params(0.3, C=0.0)
        solution = pairdyn.traveling_integrate(params, u_max=2.0, du=0.01)
        assert_allclose(solution.rho, pairdyn.decoupled_growth(params, solution.u), rtol=1e-8)
        assert not np.any(solution.beta)
        assert not np.any(solution.efield)

    def test_efield_masked_where_density_vanishes(self):
        params = self.params(0.25)
        rho = np.array([-0.5, 0.0, 1.0, 2.0])
        efield = pairdyn.traveling_efield(params, rho)
        assert np.isnan(efield[0]) and np.isnan(efield[1])
        # E = -(omega_rho omega_beta) rho' beta' / rho with beta' = C rho^(-2r)
        radicand = rho[2:] ** 2 / 0.25**2 + 0.1**2 / 0.5 * (1.0 / 0.25**2) * rho[2:] ** 1.0
        expected = -0.25 * np.sqrt(radicand) * 0.1 * rho[2:] ** -0.5 / rho[2:]
        assert_allclose(efield[2:], expected, rtol=1e-12)

    def test_solution_efield_matches_standalone_evaluation(self):
        params = self.params(0.3667)
        solution = pairdyn.traveling_integrate(params, u_max=1.0, du=0.1)
        assert_allclose(solution.efield, pairdyn.traveling_efield(params, solution.rho), rtol=1e-14)
        assert np.all(np.isfinite(solution.efield))

    def test_logarithmic_variant(self):
        params = TravelingParams.logarithmic(0.5, 0.1, 0.1, 1.0)
        assert params.variant is TravelingVariant.LOGARITHMIC
        assert params.r == pytest.approx(0.5)
        solution = pairdyn.traveling_integrate(params, u_max=1.0, du=0.05)
        assert np.all(np.diff(solution.rho) > 0)

    def test_light_like_mode_rejected(self):
        with pytest.raises(DomainError, match="light-like"):
            TravelingParams(omega_rho=0.5, k_rho=0.5, omega_beta=1.0, k_beta=0.0, C=0.1, rho_init=1.0)

    def test_near_core_profile_at_origin(self):
        assert pairdyn.near_core_profile(0.0, 2.0, 0.0) == pytest.approx(2.0)
        values = pairdyn.near_core_profile(np.array([-0.3, 0.3]), 1.0, 0.0)
        assert values[0] == pytest.approx(values[1])
        assert values[0] > 1.0


def test_displayed_kink_profile_travels_on_the_light_cone():
    x = np.linspace(-2.0, 2.0, 9)
    assert_allclose(pairdyn.kink_profile(x, 0.5, 1.0, 6.0), pairdyn.kink_profile(x + 0.5, 0.0, 1.0, 6.0))
    assert pairdyn.kink_profile(20.0, 0.0, 1.0, 6.0) == pytest.approx(1.0 / math.sqrt(2.0))


def test_phase_mode():
    beta = pairdyn.phase_mode(0.5, np.sin, direction=-1, constant=0.2)
    assert beta(1.0, 0.4) == pytest.approx(math.sin(0.3) + 0.2)

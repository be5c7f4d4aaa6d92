import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dirac_scs import meanfield
from dirac_scs.errors import DomainError
from dirac_scs.kinematics import KinematicState
from dirac_scs.meanfield import CondensateSet


def laplace_det(matrix):
    """Cofactor expansion along the first row, independent of LAPACK."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = 0.0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        total += (-1) ** j * matrix[0][j] * laplace_det(minor)
    return total


class TestFourierMatrix:
    def test_determinant_matches_cofactor_expansion(self, rng):
        for _ in range(50):
            E, p, mu, sigma, m = rng.uniform(-2, 2, size=5)
            delta = complex(*rng.uniform(-1, 1, size=2))
            matrix = meanfield.fourier_matrix(E, p, mu, sigma, m, delta)
            expected = laplace_det(matrix.tolist())
            got = meanfield.determinant(E, p, mu, sigma, m, delta)
            assert got == pytest.approx(expected, rel=1e-10, abs=1e-9)

    def test_determinant_is_squared_modulus(self, rng):
        for _ in range(50):
            E, p, mu, sigma, m = rng.uniform(-2, 2, size=5)
            re, im = rng.uniform(-1, 1, size=2)
            s = sigma - m
            b, c = E + mu - p + re, E + mu + p - re
            det_z = (s * s - im * im - b * c) - 1j * im * (b - c)
            got = meanfield.determinant(E, p, mu, sigma, m, complex(re, im))
            assert got >= -1e-9
            assert got == pytest.approx(abs(det_z) ** 2, rel=1e-9, abs=1e-9)

    def test_printed_condition_differs_by_leading_power(self, rng):
        E, p, mu, sigma, m = rng.uniform(-2, 2, size=5)
        s = sigma - m
        got = meanfield.condition_discrepancy(E, p, mu, sigma, m, 0.3 - 0.2j)
        assert got == pytest.approx(s**4 - s**2, rel=1e-9, abs=1e-9)


class TestDispersionSolve:
    @pytest.mark.parametrize("p", [-1.2, 0.0, 0.3, 2.5])
    def test_vanishing_pairing_gives_shifted_free_branches(self, p):
        mu, sigma, m = 0.2, 0.1, 1.0
        roots = meanfield.dispersion_solve(p, mu, sigma, m, 0.0)
        root = math.hypot(p, m - sigma)
        assert roots == pytest.approx([-mu - root, -mu + root], abs=1e-10)

    def test_roots_exist_when_real_part_matches_momentum(self):
        roots = meanfield.dispersion_solve(0.2, 0.0, 0.0, 1.0, 0.2 + 0.3j)
        assert roots == pytest.approx([-math.sqrt(0.91), math.sqrt(0.91)], abs=1e-10)

    def test_shifted_complex_pairing_roots_are_polished(self):
        roots = meanfield.dispersion_solve(0.2, 0.1, 0.05, 1.0, 0.2 + 0.3j)
        assert len(roots) == 2
        for E in roots:
            assert abs(meanfield.determinant(E, 0.2, 0.1, 0.05, 1.0, 0.2 + 0.3j)) < 1e-9

    def test_no_real_roots_for_generic_complex_pairing(self):
        assert meanfield.dispersion_solve(0.2, 0.0, 0.0, 1.0, 0.3j) == []

    def test_roots_annihilate_determinant(self):
        for E in meanfield.dispersion_solve(0.7, -0.3, 0.2, 1.1, 0.15):
            assert abs(meanfield.determinant(E, 0.7, -0.3, 0.2, 1.1, 0.15)) < 1e-9

    @pytest.mark.parametrize(
        "p, mu, sigma, m, delta",
        [
            (0.7, -0.3, 0.2, 1.1, 0.15),
            (0.2, 0.0, 0.0, 1.0, 0.2 + 0.3j),
            (-0.4, 0.1, 0.05, 0.8, -0.4 + 0.25j),
            (1.3, 0.2, 0.0, 1.0, 0.0),
        ],
    )
    def test_roots_symmetric_under_momentum_and_pairing_reflection(self, p, mu, sigma, m, delta):
        roots = meanfield.dispersion_solve(p, mu, sigma, m, delta)
        mirrored = meanfield.dispersion_solve(-p, mu, sigma, m, complex(-delta.real, delta.imag))
        assert roots
        assert mirrored == pytest.approx(roots, abs=1e-9)

    def test_scan_preserves_order(self):
        ps = [-0.5, 0.0, 0.5, 1.0]
        serial = meanfield.scan_dispersion(ps, 0.1, 0.0, 1.0, 0.2, jobs=1)
        assert serial == [meanfield.dispersion_solve(p, 0.1, 0.0, 1.0, 0.2) for p in ps]

    def test_scan_independent_of_worker_count(self):
        ps = [-0.5, 0.0, 0.5]
        serial = meanfield.scan_dispersion(ps, 0.1, 0.0, 1.0, 0.2, jobs=1)
        assert meanfield.scan_dispersion(ps, 0.1, 0.0, 1.0, 0.2, jobs=2) == serial


class TestFourierComponents:
    def test_components_lie_in_kernel_without_pairing(self):
        p, mu, sigma, m = 0.3, 0.2, 0.1, 1.0
        for E in meanfield.dispersion_solve(p, mu, sigma, m, 0.0):
            assert meanfield.kernel_residual(E, p, mu, sigma, m, 0.0) < 1e-9

    def test_components_lie_in_kernel_with_complex_pairing(self):
        delta = 0.2 + 0.3j
        for E in meanfield.dispersion_solve(0.2, 0.0, 0.0, 1.0, delta):
            psi1, psi2 = meanfield.fourier_components(E, 0.2, 0.0, 0.0, 1.0, delta)
            assert psi2 == 1.0
            assert meanfield.kernel_residual(E, 0.2, 0.0, 0.0, 1.0, delta) < 1e-9

    def test_regrouped_matches_literal_away_from_roots(self, rng):
        for _ in range(20):
            E, p, mu = rng.uniform(-2, 2, size=3)
            delta = complex(*rng.uniform(-1, 1, size=2))
            literal = meanfield.literal_fourier_components(E, p, mu, 0.3, 1.0, delta)
            regrouped = meanfield.fourier_components(E, p, mu, 0.3, 1.0, delta)
            assert_allclose(regrouped, literal, rtol=1e-9, atol=1e-10)

    def test_degenerate_mass_gap_rejected(self):
        with pytest.raises(DomainError, match="sigma - m"):
            meanfield.fourier_components(0.5, 0.1, 0.0, 1.0, 1.0, 0.2)


class TestDressedShell:
    def test_dressed_plane_wave_in_kernel(self, rng):
        for _ in range(100):
            p, mu, sigma, delta_bar = rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), *rng.uniform(-0.3, 0.3, size=2)
            m = rng.uniform(1.5, 2.5)
            E = meanfield.dressed_energy(p, m, mu, sigma, delta_bar)
            state = KinematicState(E=E, p=p, m=m, mu=mu)
            x, t = rng.uniform(-5.0, 5.0, size=2)
            amplitude = meanfield.dressed_plane_wave(state, delta_bar)(x, t)
            operator = meanfield.modified_dirac_operator(state, sigma, delta_bar)
            assert np.linalg.norm(operator @ amplitude) < 1e-12 * np.linalg.norm(amplitude) * m

    def test_boost_splits_into_kinematic_and_background_parts(self):
        state = KinematicState(E=1.2, p=0.3, m=1.0, mu=0.1)
        boost = meanfield.dressed_boost(state, 0.2)
        assert boost.eta + boost.zeta == pytest.approx(boost.eta_prime, abs=1e-14)

    def test_boost_domain(self):
        state = KinematicState(E=0.5, p=0.3, m=1.0)
        with pytest.raises(DomainError, match="boost domain"):
            meanfield.dressed_boost(state, 0.5)


class TestCondensates:
    def test_reference_values(self):
        cond = meanfield.condensates_from_parameters(1j * math.sqrt(2.0), math.log(2.0))
        assert cond.rho == pytest.approx(5.0)
        assert cond.sigma == pytest.approx(4.0)
        assert cond.delta_bar == pytest.approx(3.0)
        assert cond.delta == pytest.approx(-3.0)

    def test_reference_inversion(self):
        inversion = meanfield.invert_condensates(CondensateSet.from_delta_bar(5.0, 4.0, 3.0))
        assert inversion.phi_magnitude == pytest.approx(math.sqrt(2.0))
        assert inversion.zeta_prime == pytest.approx(math.log(2.0))
        assert inversion.sign_branch == 1
        assert meanfield.phi_from_inversion(inversion) == pytest.approx(1j * math.sqrt(2.0))

    def test_round_trip_on_imaginary_branch(self, rng):
        for _ in range(100):
            magnitude, zeta = rng.uniform(0.1, 3.0), rng.uniform(-2.0, 2.0)
            cond = meanfield.condensates_from_parameters(1j * magnitude, zeta)
            assert cond.rho**2 - abs(cond.delta_bar) ** 2 == pytest.approx(cond.sigma**2, rel=1e-12)
            inversion = meanfield.invert_condensates(cond)
            assert inversion.phi_magnitude == pytest.approx(magnitude, rel=1e-12)
            assert inversion.zeta_prime == pytest.approx(zeta, abs=1e-12)

    def test_complex_delta_bar_has_no_real_inversion(self):
        with pytest.raises(DomainError, match="not real"):
            meanfield.invert_condensates(CondensateSet.from_delta_bar(5.0, 4.0, 3.0 + 1.0j))

    def test_negative_density_rejected(self):
        with pytest.raises(DomainError):
            CondensateSet.from_delta_bar(-1.0, 1.0, 0.0)

    @pytest.mark.parametrize("rho, delta_bar", [(1.0, 1.0), (1.0, -2.0), (0.5, 0.7)])
    def test_density_must_exceed_pairing(self, rho, delta_bar):
        with pytest.raises(DomainError, match=r"rho = .* <= \|delta_bar\|"):
            meanfield.invert_condensates(CondensateSet.from_delta_bar(rho, 1.0, delta_bar))

    def test_zero_sigma_has_no_inversion(self):
        with pytest.raises(DomainError, match="sigma = 0"):
            meanfield.invert_condensates(CondensateSet.from_delta_bar(2.0, 0.0, 1.0))

    def test_in_medium_zeta_at_rest_matches_condensate_zeta(self, rng):
        # at p = 0 with E + mu = rho and D = delta_bar both reduce to artanh(delta_bar / rho)
        for _ in range(50):
            magnitude, zeta = rng.uniform(0.2, 2.0), rng.uniform(-2.0, 2.0)
            cond = meanfield.condensates_from_parameters(1j * magnitude, zeta)
            inversion = meanfield.invert_condensates(cond)
            state = KinematicState(E=cond.rho, p=0.0, m=cond.rho)
            got = meanfield.in_medium_zeta(state, complex(cond.delta_bar).real)
            assert got == pytest.approx(inversion.zeta_prime, abs=1e-12)
            assert got == pytest.approx(zeta, abs=1e-12)

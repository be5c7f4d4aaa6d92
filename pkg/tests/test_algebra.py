import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dirac_scs import algebra
from dirac_scs.algebra import (
    BilinearFamily,
    BilinearKind,
    DiscreteSymmetry,
    GammaIndex,
    GammaRepresentation,
    Spinor,
)
from dirac_scs.checks import AlgebraChecker, ReportRecord, run_algebra_checks
from dirac_scs.errors import DomainError, ValidationError
from dirac_scs.logger import ScsLogger

REPS = list(GammaRepresentation)


@pytest.mark.parametrize("rep", REPS)
def test_anticommutators_are_exact(rep):
    g = algebra.metric()
    for mu in range(2):
        for nu in range(2):
            got = algebra.anticommutator(algebra.gamma_upper(rep, mu), algebra.gamma_upper(rep, nu))
            assert np.array_equal(got, 2.0 * g[mu, nu] * algebra.IDENTITY)


@pytest.mark.parametrize("rep", REPS)
def test_gamma5_is_product_of_gammas(rep):
    g0 = algebra.gamma(rep, GammaIndex.G0)
    g1 = algebra.gamma(rep, GammaIndex.G1)
    g5 = algebra.gamma(rep, GammaIndex.G5)
    assert np.array_equal(g5, g0 @ g1)
    assert np.array_equal(g5 @ g5, algebra.IDENTITY)
    assert not np.any(algebra.anticommutator(g5, g0))
    assert not np.any(algebra.anticommutator(g5, g1))


def test_gamma_returns_copies():
    g = algebra.gamma(GammaRepresentation.HYPERBOLIC, GammaIndex.G0)
    g[0, 0] = 7
    assert algebra.gamma(GammaRepresentation.HYPERBOLIC, GammaIndex.G0)[0, 0] == 0


@pytest.mark.parametrize("rep", REPS)
def test_boost_group_law(rep, rng):
    for a, b in rng.uniform(-3, 3, size=(50, 2)):
        product = algebra.lorentz_matrix(rep, a) @ algebra.lorentz_matrix(rep, b)
        assert_allclose(product, algebra.lorentz_matrix(rep, a + b), rtol=1e-12, atol=1e-12)


def test_boost_rejects_non_finite_parameter():
    with pytest.raises(DomainError, match="finite"):
        algebra.lorentz_matrix(GammaRepresentation.HYPERBOLIC, math.inf)


def test_slash_squares_to_momentum_norm():
    for rep in REPS:
        p0, p1 = 1.7, -0.4
        s = algebra.slash(rep, p0, p1)
        assert_allclose(s @ s, (p0 * p0 - p1 * p1) * algebra.IDENTITY, atol=1e-14)


class TestSpinor:
    def test_relative_phase(self):
        psi = Spinor(1j, 1.0)
        assert psi.relative_phase == pytest.approx(math.pi / 2)

    def test_relative_phase_undefined_for_zero_component(self):
        assert Spinor(0.0, 1.0).relative_phase is None
        assert Spinor(1.0, 0.0).relative_phase is None

    def test_non_finite_rejected(self):
        with pytest.raises(DomainError, match="finite"):
            Spinor(complex("nan"), 1.0)
        with pytest.raises(DomainError):
            Spinor(1.0, complex("inf"))

    def test_array_round_trip(self):
        psi = Spinor(1 + 2j, -3j)
        assert Spinor.from_array(psi.as_array()) == psi


class TestBilinears:
    def test_unknown_kind_rejected(self):
        psi = Spinor(1.0, 1.0)
        with pytest.raises(ValidationError, match="unknown bilinear kind"):
            algebra.bilinear(GammaRepresentation.HYPERBOLIC, "tensor", psi)
        with pytest.raises(ValidationError, match="unknown bilinear family"):
            algebra.squared_bilinear(GammaRepresentation.HYPERBOLIC, "tensor", psi)

    def test_equal_components_in_hyperbolic_rep(self):
        psi = Spinor(1.0, 1.0)
        rep = GammaRepresentation.HYPERBOLIC
        assert algebra.bilinear(rep, BilinearKind.SCALAR, psi) == pytest.approx(2.0)
        assert algebra.bilinear(rep, BilinearKind.PSEUDOSCALAR, psi) == pytest.approx(0.0)
        assert algebra.bilinear(rep, BilinearKind.VECTOR0, psi) == pytest.approx(2.0)
        assert algebra.bilinear(rep, BilinearKind.VECTOR1, psi) == pytest.approx(0.0)
        assert algebra.bilinear(rep, BilinearKind.DIFERMION, psi) == pytest.approx(0.0)

    @pytest.mark.parametrize("family", list(BilinearFamily))
    def test_closed_forms_match_squares(self, family, spinor_factory):
        for _ in range(100):
            psi = spinor_factory()
            squared = algebra.squared_bilinear(GammaRepresentation.HYPERBOLIC, family, psi)
            scale = (abs(psi.psi1) ** 2 + abs(psi.psi2) ** 2) ** 2
            assert abs(squared - algebra.bilinear_identity(family, psi)) / scale < 1e-12

    def test_pairing_fields(self):
        fields = algebra.pairing_fields(Spinor(3.0, 4.0))
        assert fields["chiral"] == pytest.approx(24.0)
        assert fields["difermion"] == pytest.approx(-7.0)
        assert fields["density"] == pytest.approx(25.0)


class TestDiscreteSymmetries:
    @pytest.mark.parametrize("rep", REPS)
    def test_charge_conjugation_is_an_involution(self, rep, spinor_factory):
        psi = spinor_factory()
        twice = algebra.charge_conjugate(rep, algebra.charge_conjugate(rep, psi))
        assert_allclose(twice.as_array(), psi.as_array(), atol=1e-15)

    @staticmethod
    def _field(x, t):
        x, t = np.asarray(x, dtype=float), np.asarray(t, dtype=float)
        phase = np.exp(1j * (0.7 * x - 1.3 * t))
        return np.stack([(1.0 + 0.5j) * phase, (0.2 - 1.0j) * x * phase])

    @pytest.mark.parametrize("rep", REPS)
    def test_parity_g0_twice_is_identity(self, rep):
        x, t = np.linspace(-2, 2, 9), 0.4
        once = algebra.apply_discrete_symmetry(rep, DiscreteSymmetry.PARITY_G0, self._field)
        twice = algebra.apply_discrete_symmetry(rep, DiscreteSymmetry.PARITY_G0, once)
        assert_allclose(twice(x, t), self._field(x, t), atol=1e-15)

    @pytest.mark.parametrize("rep", REPS)
    def test_parity_g1_twice_flips_sign(self, rep):
        x, t = np.linspace(-2, 2, 9), 0.4
        once = algebra.apply_discrete_symmetry(rep, DiscreteSymmetry.PARITY_G1, self._field)
        twice = algebra.apply_discrete_symmetry(rep, DiscreteSymmetry.PARITY_G1, once)
        assert_allclose(twice(x, t), -self._field(x, t), atol=1e-15)

    @pytest.mark.parametrize("rep", REPS)
    def test_time_reversal_twice_is_identity(self, rep):
        x, t = np.linspace(-2, 2, 9), np.linspace(-1, 1, 9)
        once = algebra.apply_discrete_symmetry(rep, DiscreteSymmetry.TIME_REVERSAL, self._field)
        twice = algebra.apply_discrete_symmetry(rep, DiscreteSymmetry.TIME_REVERSAL, once)
        assert_allclose(twice(x, t), self._field(x, t), atol=1e-15)


class TestAlgebraChecker:
    def test_all_checks_pass(self):
        records = run_algebra_checks(samples=50)
        assert records
        assert all(r.passed for r in records), [r for r in records if not r.passed]

    def test_record_names_cover_both_representations(self):
        names = {r.name for r in run_algebra_checks(samples=5)}
        assert "anticommutator[hyperbolic]" in names
        assert "anticommutator[complex]" in names
        assert "parametrization_agreement" in names
        assert {f"bilinear_identity[{f.value}]" for f in BilinearFamily} <= names

    def test_seed_makes_runs_repeatable(self):
        first = [r.to_dict() for r in run_algebra_checks(samples=20, seed=7)]
        second = [r.to_dict() for r in run_algebra_checks(samples=20, seed=7)]
        assert first == second

    def test_checker_tracks_failures(self):
        checker = AlgebraChecker(ScsLogger(configure=False), samples=3)
        checker.run()
        assert checker.all_passed
        assert checker.logger.failed_checks == []

    def test_report_record_residual(self):
        assert ReportRecord.residual("x", -1e-13, 1e-12).passed
        assert not ReportRecord.residual("x", 2e-12, 1e-12).passed
        assert ReportRecord.residual("x", 0.0, 0.0).to_dict() == {
            "name": "x",
            "value": 0.0,
            "tolerance": 0.0,
            "pass": True,
        }

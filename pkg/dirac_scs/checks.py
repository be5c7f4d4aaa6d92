"""Numerical self-checks behind the `algebra-check` subcommand.

Every check produces a ReportRecord; randomized checks report the worst value
over their samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import algebra, kinematics
from .algebra import BilinearFamily, GammaIndex, GammaRepresentation, Spinor
from .constants import ALGEBRA_CHECK_SAMPLES, ALGEBRA_CHECK_SEED, IDENTITY_TOL
from .kinematics import KinematicState, OperatorForm, ParametrizationKind
from .logger import ScsLogger, resolve


@dataclass(frozen=True)
class ReportRecord:
    name: str
    value: float
    tolerance: float
    passed: bool

    @classmethod
    def residual(cls, name: str, value: float, tolerance: float) -> "ReportRecord":
        value = float(value)
        return cls(name, value, tolerance, bool(abs(value) <= tolerance))

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "tolerance": self.tolerance, "pass": self.passed}


class AlgebraChecker:
    """Clifford-algebra, bilinear and free-sector checks on seeded random inputs."""

    def __init__(
        self,
        logger: Optional[ScsLogger] = None,
        samples: int = ALGEBRA_CHECK_SAMPLES,
        seed: int = ALGEBRA_CHECK_SEED,
    ):
        self.logger = resolve(logger)
        self.samples = samples
        self.rng = np.random.default_rng(seed)
        self.records: list[ReportRecord] = []

    def run(self) -> list[ReportRecord]:
        self.logger.info(f"Running algebra checks on {self.samples} random samples")
        self._check_anticommutators()
        self._check_gamma5()
        self._check_boost_group_law()
        self._check_bilinears()
        self._check_plane_waves()
        self._check_parametrizations()
        return self.records

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.records)

    def _record(self, name: str, value: float, tolerance: float = IDENTITY_TOL) -> None:
        self.logger.check(name, value, tolerance)
        self.records.append(ReportRecord.residual(name, value, tolerance))

    # ------------------------------------------------------------------------

    def _check_anticommutators(self) -> None:
        g = algebra.metric()
        for rep in GammaRepresentation:
            worst = 0.0
            for mu in range(2):
                for nu in range(2):
                    diff = algebra.anticommutator(
                        algebra.gamma_upper(rep, mu), algebra.gamma_upper(rep, nu)
                    ) - 2.0 * g[mu, nu] * algebra.IDENTITY
                    worst = max(worst, float(np.max(np.abs(diff))))
            self._record(f"anticommutator[{rep.value}]", worst, 0.0)

    def _check_gamma5(self) -> None:
        for rep in GammaRepresentation:
            g0, g1, g5 = (algebra.gamma(rep, i) for i in (GammaIndex.G0, GammaIndex.G1, GammaIndex.G5))
            worst = max(
                float(np.max(np.abs(g5 @ g5 - algebra.IDENTITY))),
                float(np.max(np.abs(algebra.anticommutator(g5, g0)))),
                float(np.max(np.abs(algebra.anticommutator(g5, g1)))),
                float(np.max(np.abs(g5 - g0 @ g1))),
            )
            self._record(f"gamma5[{rep.value}]", worst)

    def _check_boost_group_law(self) -> None:
        for rep in GammaRepresentation:
            worst = 0.0
            for a, b in self.rng.uniform(-3.0, 3.0, size=(self.samples, 2)):
                product = algebra.lorentz_matrix(rep, a) @ algebra.lorentz_matrix(rep, b)
                combined = algebra.lorentz_matrix(rep, a + b)
                scale = max(1.0, float(np.max(np.abs(combined))))
                worst = max(worst, float(np.max(np.abs(product - combined))) / scale)
            self._record(f"boost_group_law[{rep.value}]", worst)

    def random_spinor(self) -> Spinor:
        re = self.rng.normal(size=2)
        im = self.rng.normal(size=2)
        return Spinor(complex(re[0], im[0]), complex(re[1], im[1]))

    def _check_bilinears(self) -> None:
        spinors = [self.random_spinor() for _ in range(self.samples)]
        for family in BilinearFamily:
            worst = 0.0
            for psi in spinors:
                squared = algebra.squared_bilinear(GammaRepresentation.HYPERBOLIC, family, psi)
                closed = algebra.bilinear_identity(family, psi)
                scale = (abs(psi.psi1) ** 2 + abs(psi.psi2) ** 2) ** 2
                worst = max(worst, abs(squared - closed) / scale)
            self._record(f"bilinear_identity[{family.value}]", worst)

    def random_state(self, mu_sign: int = 1) -> KinematicState:
        p = float(self.rng.uniform(-5.0, 5.0))
        m = float(self.rng.uniform(0.1, 3.0))
        mu = float(self.rng.uniform(-2.0, 2.0))
        return KinematicState(E=-mu_sign * mu + math.hypot(p, m), p=p, m=m, mu=mu)

    def _check_plane_waves(self) -> None:
        forms = (
            (GammaRepresentation.HYPERBOLIC, OperatorForm.LINEAR, 1),
            (GammaRepresentation.COMPLEX, OperatorForm.COMPLEX_LINEAR, -1),
        )
        for rep, form, mu_sign in forms:
            worst = 0.0
            for _ in range(self.samples):
                state = self.random_state(mu_sign)
                amplitude = kinematics.plane_wave_amplitude(state, rep)
                operator = kinematics.dirac_operator(state, form)
                scale = float(np.max(np.abs(operator))) * float(np.linalg.norm(amplitude))
                worst = max(worst, float(np.linalg.norm(operator @ amplitude)) / scale)
            self._record(f"plane_wave_residual[{rep.value}]", worst)

    def _check_parametrizations(self) -> None:
        worst = 0.0
        for _ in range(self.samples):
            state = self.random_state()
            eta = kinematics.parametrize(state, ParametrizationKind.RAPIDITY).value
            phi = kinematics.parametrize(state, ParametrizationKind.TRIG_ANGLE).value
            linear = kinematics.normalize(kinematics.plane_wave_amplitude(state, GammaRepresentation.HYPERBOLIC))
            rapidity = kinematics.normalize(kinematics.rapidity_amplitude(eta))
            trig = kinematics.normalize(kinematics.trig_amplitude(phi))
            worst = max(worst, float(np.max(np.abs(linear - rapidity))), float(np.max(np.abs(linear - trig))))
        self._record("parametrization_agreement", worst)


def run_algebra_checks(
    samples: int = ALGEBRA_CHECK_SAMPLES, seed: int = ALGEBRA_CHECK_SEED, logger: Optional[ScsLogger] = None
) -> list[ReportRecord]:
    return AlgebraChecker(logger, samples, seed).run()

import dataclasses
import logging
from unittest import TestCase

import numpy as np

from sparse_penalized.exceptions import ContractError
from sparse_penalized.models import CoxObjective, Dataset, GlmFamily, GlmObjective, SurvivalData
from sparse_penalized.penalties import PenaltyKind, PenaltySpec, per_coordinate_penalties, threshold_array
from sparse_penalized.solver import (
    InitKind,
    LqaConfig,
    fit,
    penalty_diagnostics,
    stationarity_residual,
)


def orthonormal_gaussian(n: int, d: int, seed: int, lam: float) -> tuple[Dataset, np.ndarray]:
    """Gaussian data with n^-1 X'X = I and z = n^-1 X'y spread around lam."""
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(n, d)))
    X = np.sqrt(n) * q
    beta = rng.uniform(-3 * lam, 3 * lam, size=d)
    y = X @ beta + rng.normal(scale=0.1, size=n)
    data = Dataset(X=X, y=y)
    return data, X.T @ y / n


class OrthonormalDesignTestCase(TestCase):
    def test_fit_equals_componentwise_threshold(self):
        lam = 0.5
        data, z = orthonormal_gaussian(n=256, d=32, seed=1, lam=lam)
        objective = GlmObjective(GlmFamily.GAUSSIAN, data)
        specs = (
            PenaltySpec(kind=PenaltyKind.L1, lam=lam),
            PenaltySpec(kind=PenaltyKind.L2, lam=lam),
            PenaltySpec(kind=PenaltyKind.SCAD, lam=lam),
            PenaltySpec(kind=PenaltyKind.HARD, lam=lam),
            PenaltySpec(kind=PenaltyKind.BRIDGE, lam=lam, q=0.5),
            PenaltySpec(kind=PenaltyKind.ENTROPY, lam=lam),
        )
        for spec in specs:
            with self.subTest(kind=spec.kind):
                result = fit(objective, [spec] * 32)
                self.assertTrue(result.converged)
                np.testing.assert_allclose(result.beta, threshold_array(spec, z), atol=1e-6)

                expected_active = tuple(int(j) for j in np.flatnonzero(threshold_array(spec, z)))
                self.assertEqual(result.active_set, expected_active)

                report = stationarity_residual(result, objective)
                self.assertLessEqual(report.max_norm, 1e-6 * data.n)

    def test_exhaustive_entropy_path(self):
        lam = 0.5
        data, z = orthonormal_gaussian(n=64, d=6, seed=2, lam=lam)
        objective = GlmObjective(GlmFamily.GAUSSIAN, data)
        spec = PenaltySpec(kind=PenaltyKind.ENTROPY, lam=lam)
        result = fit(objective, [spec] * 6)
        self.assertEqual(result.start, 'exhaustive')
        self.assertEqual(result.iterations, 2**6)
        np.testing.assert_allclose(result.beta, threshold_array(spec, z), atol=1e-10)

        backward = fit(objective, [spec] * 6, LqaConfig(exhaustive_max_d=3))
        self.assertEqual(backward.start, 'backward')
        self.assertEqual(backward.active_set, result.active_set)


class FitTestCase(TestCase):
    def test_zero_response(self):
        rng = np.random.default_rng(3)
        objective = GlmObjective(GlmFamily.GAUSSIAN, Dataset(X=rng.normal(size=(20, 4)), y=np.zeros(20)))
        result = fit(objective, [PenaltySpec(kind=PenaltyKind.SCAD, lam=0.1)] * 4)
        self.assertTrue(result.converged)
        np.testing.assert_array_equal(result.beta, 0)
        self.assertEqual(result.active_set, ())

    def test_entropy_two_coefficients_by_hand(self):
        rng = np.random.default_rng(4)
        X = rng.normal(size=(40, 2))
        y = X @ np.array([1.0, 0.15]) + rng.normal(scale=0.5, size=40)
        data = Dataset(X=X, y=y)
        lam = 0.2

        def criterion(support):
            if not support:
                rss = float(y @ y)
            else:
                coef = np.linalg.lstsq(X[:, support], y, rcond=None)[0]
                rss = float(np.sum((y - X[:, support] @ coef) ** 2))
            return rss / (2 * 40) + lam**2 * len(support) / 2

        best = min([[], [0], [1], [0, 1]], key=criterion)
        result = fit(GlmObjective(GlmFamily.GAUSSIAN, data), [PenaltySpec(kind=PenaltyKind.ENTROPY, lam=lam)] * 2)
        self.assertEqual(list(result.active_set), best)

    def test_unpenalized_gaussian_residual(self):
        rng = np.random.default_rng(5)
        X = rng.normal(size=(50, 3))
        data = Dataset(X=X, y=X @ np.array([1.0, -2.0, 0.5]) + rng.normal(size=50))
        objective = GlmObjective(GlmFamily.GAUSSIAN, data)
        penalties = [PenaltySpec(kind=PenaltyKind.L1, lam=0)] * 3
        result = fit(objective, penalties)
        ols = np.linalg.lstsq(X, data.y, rcond=None)[0]
        np.testing.assert_allclose(result.beta, ols, atol=1e-10)

        report = stationarity_residual(result, objective)
        np.testing.assert_allclose(report.residual, X.T @ (data.y - X @ result.beta), atol=1e-12)
        self.assertLess(report.max_norm, 1e-8)

        # The residual grows linearly with a perturbation of beta:
        norms = []
        for eps in (1e-3, 2e-3, 4e-3):
            perturbed = dataclasses.replace(result, beta=result.beta + eps)
            norms.append(stationarity_residual(perturbed, objective).max_norm)
        self.assertAlmostEqual(norms[1] / norms[0], 2, places=4)
        self.assertAlmostEqual(norms[2] / norms[0], 4, places=4)

    def test_glm_and_cox_stationarity(self):
        rng = np.random.default_rng(6)
        n, d = 200, 5
        X = rng.normal(size=(n, d))
        true_beta = np.array([1.0, -0.8, 0, 0, 0])
        eta = X @ true_beta
        objectives = (
            GlmObjective(GlmFamily.LOGISTIC, Dataset(X=X, y=(rng.uniform(size=n) < 1 / (1 + np.exp(-eta))) * 1.0)),
            GlmObjective(GlmFamily.POISSON, Dataset(X=X, y=rng.poisson(np.exp(eta / 2)) * 1.0)),
            CoxObjective(SurvivalData(X=X, time=rng.exponential(np.exp(-eta)), status=np.ones(n))),
        )
        for objective in objectives:
            for kind in (PenaltyKind.SCAD, PenaltyKind.L1):
                with self.subTest(objective=objective, kind=kind):
                    result = fit(objective, [PenaltySpec(kind=kind, lam=0.1)] * d)
                    self.assertTrue(result.converged)
                    self.assertIn(0, result.active_set)
                    self.assertIn(1, result.active_set)
                    self.assertLessEqual(stationarity_residual(result, objective).max_norm, 1e-6 * n)

                    # monotone ascent of the penalized objective:
                    self.assertTrue(np.all(np.diff(result.trace) >= -1e-8), result.trace)

                    inactive = [j for j in range(d) if j not in result.active_set]
                    np.testing.assert_array_equal(result.beta[inactive], 0)

    def test_unpenalized_intercept(self):
        rng = np.random.default_rng(7)
        X = np.column_stack([np.ones(60), rng.normal(size=(60, 3))])
        y = 5 + X[:, 1] + rng.normal(scale=0.3, size=60)
        objective = GlmObjective(GlmFamily.GAUSSIAN, Dataset(X=X, y=y))
        penalties = per_coordinate_penalties(PenaltyKind.L1, [100.0] * 4, unpenalized=[0])
        result = fit(objective, penalties)
        self.assertEqual(result.active_set, (0,))
        self.assertAlmostEqual(result.beta[0], y.mean(), places=8)

    def test_separated_logistic_uses_ridge_start(self):
        X = np.array([[1.0, -2.0], [1.0, -1.0], [1.0, 1.0], [1.0, 2.0]])
        objective = GlmObjective(GlmFamily.LOGISTIC, Dataset(X=X, y=[0.0, 0.0, 1.0, 1.0]))
        with self.assertLogs('sparse_penalized.solver', level=logging.WARNING) as logs:
            result = fit(objective, [PenaltySpec(kind=PenaltyKind.L1, lam=0.05)] * 2)
        self.assertIn('Unpenalized MLE unavailable', logs.output[0])
        self.assertEqual(result.start, 'ridge')
        self.assertGreater(result.beta[1], 0)

    def test_init_kinds_and_non_convergence(self):
        data, _ = orthonormal_gaussian(n=64, d=4, seed=8, lam=0.5)
        objective = GlmObjective(GlmFamily.GAUSSIAN, data)
        penalties = [PenaltySpec(kind=PenaltyKind.SCAD, lam=0.5)] * 4
        reference = fit(objective, penalties)

        user = fit(objective, penalties, LqaConfig().with_start(reference.beta + 0.01))
        self.assertEqual(user.start, 'user')
        np.testing.assert_allclose(user.beta, reference.beta, atol=1e-8)

        zeros = fit(objective, penalties, LqaConfig(init=InitKind.ZEROS))
        self.assertEqual(zeros.start, 'zeros')
        np.testing.assert_array_equal(zeros.beta, 0)  # zero coefficients can not leave zero

        with self.assertLogs('sparse_penalized.solver', level=logging.WARNING):
            result = fit(objective, penalties, LqaConfig(max_iter=1))
        self.assertFalse(result.converged)
        self.assertEqual(result.iterations, 1)

    def test_contract_errors(self):
        objective = GlmObjective(GlmFamily.GAUSSIAN, Dataset(X=np.eye(3), y=np.ones(3)))
        with self.assertRaisesRegex(ContractError, 'one penalty per coefficient'):
            fit(objective, [PenaltySpec(kind=PenaltyKind.L1, lam=1)] * 2)
        with self.assertRaisesRegex(ContractError, 'can not be mixed'):
            fit(
                objective,
                [PenaltySpec(kind=PenaltyKind.ENTROPY, lam=1)] + [PenaltySpec(kind=PenaltyKind.L1, lam=1)] * 2,
            )
        with self.assertRaisesRegex(ContractError, 'beta0 must have 3 entries'):
            fit(objective, [PenaltySpec(kind=PenaltyKind.L1, lam=1)] * 3, LqaConfig(init=InitKind.USER, beta0=(1.0,)))
        with self.assertRaises(ContractError):
            LqaConfig(tol=0)
        with self.assertRaises(ContractError):
            LqaConfig(init=InitKind.USER)


class PenaltyDiagnosticsTestCase(TestCase):
    def test_examples(self):
        scad = [PenaltySpec(kind=PenaltyKind.SCAD, lam=1)] * 2
        diagnostics = penalty_diagnostics(scad, [4.0, -5.0])
        self.assertEqual((diagnostics.a_n, diagnostics.b_n), (0, 0))

        diagnostics = penalty_diagnostics(scad, [2.0, 5.0])
        self.assertAlmostEqual(diagnostics.a_n, 1.7 / 2.7, places=12)
        self.assertAlmostEqual(diagnostics.b_n, 1 / 2.7, places=6)

        l1 = [PenaltySpec(kind=PenaltyKind.L1, lam=0.1)] * 3
        self.assertEqual(penalty_diagnostics(l1, [0.0, 0.3, -7.0]).a_n, 0.1)

        with self.assertRaisesRegex(ContractError, 'at least one nonzero'):
            penalty_diagnostics(l1, [0.0, 0.0, 0.0])

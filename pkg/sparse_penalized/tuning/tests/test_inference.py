from unittest import TestCase

import numpy as np

from sparse_penalized.exceptions import ContractError, SingularMatrixError
from sparse_penalized.models import Dataset, GlmFamily, GlmObjective
from sparse_penalized.penalties import PenaltyKind, PenaltySpec
from sparse_penalized.solver import fit
from sparse_penalized.tuning import effective_params, sandwich_cov, standard_errors


def gaussian_objective(n: int, d: int, seed: int, beta=None) -> GlmObjective:
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, d))
    beta = np.ones(d) if beta is None else np.asarray(beta, dtype=float)
    y = X @ beta + rng.standard_t(df=5, size=n) * (1 + np.abs(X[:, 0]))
    return GlmObjective(GlmFamily.GAUSSIAN, Dataset(X=X, y=y))


class EffectiveParamsTestCase(TestCase):
    def test_no_penalty(self):
        objective = gaussian_objective(n=40, d=4, seed=1)
        result = fit(objective, [PenaltySpec(kind=PenaltyKind.L1, lam=0)] * 4)
        self.assertEqual(result.active_set, (0, 1, 2, 3))
        self.assertAlmostEqual(effective_params(result, objective), 4.0, places=10)

    def test_orthonormal_ridge(self):
        n, d = 64, 5
        rng = np.random.default_rng(2)
        q, _ = np.linalg.qr(rng.normal(size=(n, d)))
        X = np.sqrt(n) * q
        objective = GlmObjective(GlmFamily.GAUSSIAN, Dataset(X=X, y=X @ np.arange(1.0, 6.0) + rng.normal(size=n)))
        previous = np.inf
        for lam in (0.01, 0.1, 0.5, 2.0):
            with self.subTest(lam=lam):
                result = fit(objective, [PenaltySpec(kind=PenaltyKind.L2, lam=lam)] * d)
                effective = effective_params(result, objective)
                self.assertAlmostEqual(effective, d / (1 + 2 * lam), places=8)
                self.assertLess(effective, previous)
                previous = effective

    def test_large_l1_penalty(self):
        objective = gaussian_objective(n=50, d=3, seed=3)
        values = []
        for lam in (0.01, 0.3, 1.0, 100.0):
            result = fit(objective, [PenaltySpec(kind=PenaltyKind.L1, lam=lam)] * 3)
            values.append(effective_params(result, objective))
        self.assertEqual(values[-1], 0.0)
        self.assertTrue(all(0 <= value <= 3 for value in values))
        self.assertEqual(values, sorted(values, reverse=True))

    def test_singular_bracket(self):
        objective = gaussian_objective(n=30, d=2, seed=4)
        result = fit(objective, [PenaltySpec(kind=PenaltyKind.L1, lam=0)] * 2)

        X = objective.data.X
        collinear = GlmObjective(
            GlmFamily.GAUSSIAN,
            Dataset(X=np.column_stack([X[:, 0], X[:, 0]]), y=objective.data.y),
        )
        with self.assertRaises(SingularMatrixError):
            effective_params(result, collinear)
        with self.assertRaises(SingularMatrixError):
            sandwich_cov(result, collinear)


class SandwichTestCase(TestCase):
    def test_robust_ols_covariance(self):
        objective = gaussian_objective(n=50, d=3, seed=5)
        result = fit(objective, [PenaltySpec(kind=PenaltyKind.L1, lam=0)] * 3)
        covariance = sandwich_cov(result, objective)

        X, y = objective.data.X, objective.data.y
        bread = np.linalg.inv(X.T @ X)
        residuals = y - X @ bread @ X.T @ y
        expected = bread @ (X.T * residuals**2) @ X @ bread
        np.testing.assert_allclose(covariance, expected, rtol=1e-8)

    def test_duplicated_rows_halve_covariance(self):
        objective = gaussian_objective(n=60, d=4, seed=6, beta=[2.0, 0.0, -1.5, 0.0])
        penalties = [PenaltySpec(kind=PenaltyKind.SCAD, lam=0.2)] * 4
        result = fit(objective, penalties)

        data = objective.data
        doubled = GlmObjective(GlmFamily.GAUSSIAN, Dataset(X=np.vstack([data.X, data.X]), y=np.tile(data.y, 2)))
        doubled_result = fit(doubled, penalties)
        self.assertEqual(doubled_result.active_set, result.active_set)
        np.testing.assert_allclose(
            sandwich_cov(doubled_result, doubled),
            sandwich_cov(result, objective) / 2,
            atol=1e-10,
        )

    def test_symmetric_positive_semidefinite(self):
        for seed in range(5):
            with self.subTest(seed=seed):
                objective = gaussian_objective(n=80, d=5, seed=seed, beta=[1.0, 0.5, 0.0, 0.0, 3.0])
                result = fit(objective, [PenaltySpec(kind=PenaltyKind.SCAD, lam=0.15)] * 5)
                covariance = sandwich_cov(result, objective)
                self.assertEqual(covariance.shape, (len(result.active_set),) * 2)
                np.testing.assert_allclose(covariance, covariance.T, atol=1e-12)
                self.assertGreaterEqual(np.linalg.eigvalsh(covariance).min(), -1e-10)
                self.assertTrue(np.all(standard_errors(covariance) >= 0))

    def test_empty_active_set(self):
        objective = gaussian_objective(n=20, d=2, seed=7)
        result = fit(objective, [PenaltySpec(kind=PenaltyKind.L1, lam=1000.0)] * 2)
        self.assertEqual(result.active_set, ())
        with self.assertRaises(ContractError):
            sandwich_cov(result, objective)

from unittest import TestCase

import numpy as np

from sparse_penalized.exceptions import ContractError, InvalidGeneratorParams
from sparse_penalized.harness import (
    ArParams,
    FactorParams,
    GeneratorKind,
    RegressionParams,
    SurvivalParams,
    generate,
    spawn_rngs,
)
from sparse_penalized.harness.generators import regression_generator
from sparse_penalized.models import Dataset, SurvivalData


class RegressionGeneratorTestCase(TestCase):
    def test_zero_signal_without_noise(self):
        data = generate(GeneratorKind.LINEAR, RegressionParams(n=20, beta=(0.0, 0.0, 0.0), sigma=0.0), seed=1)
        self.assertIsInstance(data, Dataset)
        self.assertEqual(data.X.shape, (20, 3))
        np.testing.assert_array_equal(data.y, np.zeros(20))

    def test_same_seed_same_draw(self):
        params = RegressionParams(n=30, beta=(1.0, -1.0), rho=0.5)
        first = generate(GeneratorKind.LINEAR, params, seed=7)
        second = generate(GeneratorKind.LINEAR, params, seed=7)
        other = generate(GeneratorKind.LINEAR, params, seed=8)
        np.testing.assert_array_equal(first.X, second.X)
        np.testing.assert_array_equal(first.y, second.y)
        self.assertFalse(np.array_equal(first.y, other.y))

    def test_glm_responses(self):
        logistic = generate(GeneratorKind.LOGISTIC, RegressionParams(n=200, beta=(1.0, 0.5)), seed=3)
        self.assertTrue(set(np.unique(logistic.y).tolist()) <= {0.0, 1.0})
        poisson = generate(GeneratorKind.POISSON, RegressionParams(n=200, beta=(0.3,)), seed=3)
        self.assertTrue(np.all(poisson.y >= 0))
        np.testing.assert_array_equal(poisson.y, np.round(poisson.y))

    def test_intercept_column(self):
        data = generate(GeneratorKind.LINEAR, RegressionParams(n=10, beta=(1.0,), sigma=0.0, intercept=2.0), seed=0)
        np.testing.assert_array_equal(data.X[:, 0], np.ones(10))
        np.testing.assert_allclose(data.y, 2.0 + data.X[:, 1], atol=1e-12)

    def test_design_correlation(self):
        params = RegressionParams(n=20_000, beta=(0.0, 0.0, 0.0), rho=0.6)
        data = generate(GeneratorKind.LINEAR, params, seed=11)
        np.testing.assert_allclose(np.corrcoef(data.X.T), params.design_covariance(), atol=0.03)

    def test_regression_generator(self):
        generator = regression_generator(RegressionParams(n=5, beta=(1.0, 2.0)))
        data = generator(17, np.random.default_rng(0))
        self.assertEqual((data.n, data.d), (17, 2))


class SurvivalGeneratorTestCase(TestCase):
    def test_no_censoring(self):
        data = generate(GeneratorKind.SURVIVAL, SurvivalParams(n=50, beta=(1.0, -1.0)), seed=2)
        self.assertIsInstance(data, SurvivalData)
        np.testing.assert_array_equal(data.status, np.ones(50))
        self.assertTrue(np.all(data.time > 0))

    def test_censoring_rate(self):
        params = SurvivalParams(n=4000, beta=(0.0,), baseline_hazard=1.0, censoring_rate=1.0)
        data = generate(GeneratorKind.SURVIVAL, params, seed=5)
        # Two competing unit rate exponentials: half of the records are censored.
        self.assertAlmostEqual(float(1 - data.status.mean()), 0.5, delta=0.03)


class CovarianceGeneratorTestCase(TestCase):
    def test_factor_without_idiosyncratic_noise(self):
        params = FactorParams(n=40, d=12, k=3, idiosyncratic_low=0.0, idiosyncratic_high=0.0)
        sample = generate(GeneratorKind.FACTOR, params, seed=4)
        self.assertEqual(sample.W.shape, (40, 12))
        self.assertEqual(sample.factors.shape, (40, 3))
        self.assertLessEqual(np.linalg.matrix_rank(np.cov(sample.W.T)), 3)

    def test_ar_truth(self):
        params = ArParams(n=10, d=4, coefficients=(0.5,))
        sample = generate(GeneratorKind.AR, params, seed=0)
        expected_phi = np.diag([0.5, 0.5, 0.5], k=-1)
        np.testing.assert_array_equal(sample.phi, expected_phi)
        L = np.eye(4) - expected_phi
        np.testing.assert_allclose(L @ sample.sigma @ L.T, np.eye(4), atol=1e-12)

    def test_ar_sample_covariance(self):
        sample = generate(GeneratorKind.AR, ArParams(n=50_000, d=3, coefficients=(0.5,)), seed=9)
        np.testing.assert_allclose(np.cov(sample.W.T), sample.sigma, atol=0.05)


class InvalidParamsTestCase(TestCase):
    def test_field_named(self):
        with self.assertRaises(InvalidGeneratorParams) as cm:
            RegressionParams(n=10, beta=(1.0,), rho=1.5)
        self.assertEqual(cm.exception.field, 'rho')
        self.assertIn('rho', str(cm.exception))

        with self.assertRaises(InvalidGeneratorParams) as cm:
            SurvivalParams(n=10, beta=(1.0,), censoring_rate=-1.0)
        self.assertEqual(cm.exception.field, 'censoring_rate')

        with self.assertRaises(InvalidGeneratorParams) as cm:
            FactorParams(n=10, d=5, idiosyncratic_low=2.0, idiosyncratic_high=1.0)
        self.assertEqual(cm.exception.field, 'idiosyncratic_high')

    def test_params_must_match_kind(self):
        with self.assertRaises(InvalidGeneratorParams) as cm:
            generate(GeneratorKind.SURVIVAL, RegressionParams(n=10, beta=(1.0,)), seed=0)
        self.assertEqual(cm.exception.field, 'params')

    def test_seed_required(self):
        with self.assertRaises(ContractError):
            generate(GeneratorKind.LINEAR, RegressionParams(n=10, beta=(1.0,)), seed=-1)


class SpawnTestCase(TestCase):
    def test_independent_streams(self):
        first, second = spawn_rngs(seed=1, count=2)
        again, _ = spawn_rngs(seed=1, count=2)
        a, b, c = first.random(5), second.random(5), again.random(5)
        np.testing.assert_array_equal(a, c)
        self.assertFalse(np.array_equal(a, b))

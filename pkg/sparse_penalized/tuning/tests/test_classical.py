from unittest import TestCase

import numpy as np

from sparse_penalized.exceptions import ContractError
from sparse_penalized.models import Dataset
from sparse_penalized.tuning import classical_criteria, criteria_table


class ClassicalCriteriaTestCase(TestCase):
    def test_null_subset(self):
        rng = np.random.default_rng(1)
        data = Dataset(X=rng.normal(size=(30, 3)), y=rng.normal(size=30))
        (row,) = classical_criteria(data, [()])
        self.assertEqual(row.m, 1)
        self.assertAlmostEqual(row.rss, float(np.sum((data.y - data.y.mean()) ** 2)), places=10)
        self.assertAlmostEqual(row.adjusted_r2, 0.0, places=12)
        self.assertEqual(row.pls, row.rss / 60)

    def test_saturated_noiseless(self):
        rng = np.random.default_rng(2)
        X = rng.normal(size=(20, 3))
        data = Dataset(X=X, y=1 + X @ np.array([1.0, -2.0, 0.5]))
        (row,) = classical_criteria(data, [(0, 1, 2)], lam=0.5, sigma2=1.0)
        self.assertAlmostEqual(row.rss, 0.0, places=20)
        self.assertAlmostEqual(row.adjusted_r2, 1.0, places=12)
        self.assertAlmostEqual(row.pls, 0.375, places=12)

    def test_all_subsets(self):
        rng = np.random.default_rng(3)
        X = rng.normal(size=(50, 4))
        data = Dataset(X=X, y=X[:, 1] * 2 + rng.normal(size=50))
        rows = classical_criteria(data, lam=0.2)
        self.assertEqual(len(rows), 16)
        self.assertEqual(rows[0].subset, ())
        self.assertEqual(rows[-1].subset, (0, 1, 2, 3))

        # Adding columns never increases the residual sum of squares:
        by_subset = {row.subset: row.rss for row in rows}
        for subset, rss in by_subset.items():
            for j in set(range(4)) - set(subset):
                self.assertLessEqual(by_subset[tuple(sorted(subset + (j,)))], rss + 1e-9)

        best = max(rows, key=lambda row: row.adjusted_r2)
        self.assertIn(1, best.subset)

        table = criteria_table(rows)
        self.assertEqual(list(table.columns), ['subset', 'm', 'rss', 'adjusted_r2', 'gcv', 'pls', 'taylor_gap'])
        self.assertEqual(table['subset'].iloc[5], '0 1')

    def test_taylor_expansion(self):
        rng = np.random.default_rng(4)
        n, d = 400, 8
        X = rng.normal(size=(n, d))
        data = Dataset(X=X, y=rng.normal(size=n))
        for row in classical_criteria(data):
            self.assertLessEqual(row.m / n, 0.05)
            self.assertLessEqual(abs(row.taylor_gap), 0.02)

    def test_contract_errors(self):
        rng = np.random.default_rng(5)
        data = Dataset(X=rng.normal(size=(30, 3)), y=rng.normal(size=30))
        with self.assertRaises(ContractError):
            classical_criteria(data, [(0, 3)])
        with self.assertRaises(ContractError):
            classical_criteria(data, [(1, 1)])

        wide = Dataset(X=rng.normal(size=(40, 16)), y=rng.normal(size=40))
        with self.assertRaises(ContractError):
            classical_criteria(wide)

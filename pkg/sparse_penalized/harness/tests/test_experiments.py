import tempfile
from pathlib import Path
from unittest import TestCase

import msgspec

from sparse_penalized.constants import RNG_NAME
from sparse_penalized.exceptions import ContractError
from sparse_penalized.harness import EXPERIMENTS, ExperimentConfig, ExperimentKind, run_experiment


def run_to_bytes(**kwargs) -> tuple[bytes, bytes]:
    with tempfile.TemporaryDirectory() as temp_dir:
        report = run_experiment(ExperimentConfig(out=Path(temp_dir), **kwargs))
        return report.replicates_path.read_bytes(), report.summary_path.read_bytes()


class ExperimentConfigTestCase(TestCase):
    def test_validation(self):
        config = ExperimentConfig(kind=ExperimentKind.ORACLE, seed=1)
        self.assertIsNone(config.replicates)
        self.assertEqual(config.grid_size, 50)
        with self.assertRaises(ContractError):
            ExperimentConfig(kind=ExperimentKind.ORACLE, seed=-1)
        with self.assertRaises(ContractError):
            ExperimentConfig(kind=ExperimentKind.ORACLE, seed=1, replicates=0)

    def test_every_kind_registered(self):
        self.assertEqual(set(EXPERIMENTS), set(ExperimentKind))


class RunExperimentTestCase(TestCase):
    def test_same_seed_byte_identical(self):
        first = run_to_bytes(kind=ExperimentKind.UNIVERSAL_THRESHOLD, seed=3, replicates=6, n=256, d=16, workers=1)
        second = run_to_bytes(kind=ExperimentKind.UNIVERSAL_THRESHOLD, seed=3, replicates=6, n=256, d=16, workers=3)
        self.assertEqual(first, second)
        other = run_to_bytes(kind=ExperimentKind.UNIVERSAL_THRESHOLD, seed=4, replicates=6, n=256, d=16, workers=1)
        self.assertNotEqual(first[0], other[0])

    def test_report_files(self):
        with tempfile.TemporaryDirectory() as temp_dir:
            report = run_experiment(
                ExperimentConfig(
                    kind=ExperimentKind.THRESHOLD_ORACLE, seed=0, replicates=5, workers=1, out=Path(temp_dir)
                )
            )
            self.assertEqual(report.replicates_path.name, 'threshold-oracle-replicates.json')
            self.assertEqual(report.summary_path.name, 'threshold-oracle-summary.json')
            rows = msgspec.json.decode(report.replicates_path.read_bytes())
            summary = msgspec.json.decode(report.summary_path.read_bytes())

        self.assertEqual(len(rows['rows']), 5)
        self.assertEqual([row['replicate'] for row in rows['rows']], [0, 1, 2, 3, 4])
        self.assertEqual(summary['rng'], RNG_NAME)
        self.assertEqual(summary['seed'], 0)
        self.assertEqual(summary['failed'], 0)
        for kind in ('hard', 'entropy', 'l1', 'l2', 'scad', 'bridge'):
            self.assertEqual(summary[kind]['matched_rate'], 1.0, kind)
        self.assertIs(summary['checks']['all_matched'], True)

    def test_failed_replicates_are_counted(self):
        with tempfile.TemporaryDirectory() as temp_dir, self.assertLogs('sparse_penalized', level='WARNING'):
            report = run_experiment(
                ExperimentConfig(
                    kind=ExperimentKind.CHOLESKY, seed=0, replicates=2, n=2, d=3, workers=1, out=Path(temp_dir)
                )
            )
        self.assertEqual(report.summary['failed'], 2)
        self.assertIs(report.summary['checks']['reconstruction'], False)

    def test_oracle_summary_metrics(self):
        with tempfile.TemporaryDirectory() as temp_dir:
            report = run_experiment(
                ExperimentConfig(
                    kind=ExperimentKind.ORACLE, seed=1, replicates=3, n=200, grid_size=10, workers=1, out=Path(temp_dir)
                )
            )
        summary = report.summary
        self.assertEqual(summary['failed'], 0)
        self.assertEqual(
            set(summary) - {'kind', 'seed', 'rng', 'n', 'd', 'penalty_kind', 'replicates', 'failed'},
            {'support_recovery_rate', 'median_oracle_distance', 'sandwich_tracking', 'checks'},
        )
        self.assertEqual(set(summary['checks']), {'support_recovery', 'oracle_distance'})
        self.assertLess(summary['median_oracle_distance'], 0.5)

    def test_small_runs(self):
        cases = (
            dict(kind=ExperimentKind.BEST_SUBSET, replicates=4, n=40, d=5),
            dict(kind=ExperimentKind.CHOLESKY, replicates=2, n=300, d=4, grid_size=8),
            dict(kind=ExperimentKind.FACTOR, replicates=3, n=60, d=10),
            dict(kind=ExperimentKind.PERSISTENCE, replicates=2, n=100, d=10),
            dict(kind=ExperimentKind.COX, replicates=2, n=120, grid_size=6),
        )
        for kwargs in cases:
            with self.subTest(kind=kwargs['kind']), tempfile.TemporaryDirectory() as temp_dir:
                report = run_experiment(ExperimentConfig(seed=5, workers=2, out=Path(temp_dir), **kwargs))
                self.assertEqual(report.summary['failed'], 0)
                self.assertEqual(report.summary['replicates'], kwargs['replicates'])
                self.assertIn('checks', report.summary)

        with tempfile.TemporaryDirectory() as temp_dir:
            summary = run_experiment(
                ExperimentConfig(kind=ExperimentKind.BEST_SUBSET, seed=5, replicates=4, n=40, d=5, out=Path(temp_dir))
            ).summary
        self.assertEqual(summary['match_rate'], 1.0)


class ReducedAcceptanceTestCase(TestCase):
    """
    The acceptance experiments at reduced replicate counts, with bounds loosened for the
    Monte Carlo error of the smaller runs.
    """

    def run_summary(self, **kwargs) -> dict:
        with tempfile.TemporaryDirectory() as temp_dir:
            summary = run_experiment(ExperimentConfig(seed=11, workers=2, out=Path(temp_dir), **kwargs)).summary
        self.assertEqual(summary['failed'], 0)
        return summary

    def test_oracle_support_recovery(self):
        summary = self.run_summary(kind=ExperimentKind.ORACLE, replicates=20)
        self.assertEqual((summary['n'], summary['d']), (400, 8))
        self.assertGreaterEqual(summary['support_recovery_rate'], 0.8)
        self.assertLessEqual(summary['median_oracle_distance'], 0.05)
        for tracking in summary['sandwich_tracking'].values():
            self.assertEqual(tracking['active_replicates'], 20)

    def test_sandwich_tracking(self):
        summary = self.run_summary(kind=ExperimentKind.SANDWICH, replicates=40)
        self.assertEqual(summary['n'], 800)
        self.assertEqual(set(summary['sandwich_tracking']), {'0', '1', '4'})
        for tracking in summary['sandwich_tracking'].values():
            self.assertLess(abs(tracking['ratio'] - 1), 0.5)

    def test_cox_support_recovery(self):
        summary = self.run_summary(kind=ExperimentKind.COX, replicates=20)
        self.assertEqual((summary['n'], summary['d']), (300, 6))
        self.assertGreaterEqual(summary['support_recovery_rate'], 0.75)
        self.assertLessEqual(summary['max_gradient_error'], 1e-6)

    def test_cholesky_off_band_rate(self):
        summary = self.run_summary(kind=ExperimentKind.CHOLESKY, replicates=6)
        self.assertEqual((summary['n'], summary['d']), (1000, 10))
        self.assertLessEqual(summary['mean_false_positive_rate'], 0.1)
        self.assertGreaterEqual(summary['mean_band_recovery_rate'], 0.95)
        self.assertIs(summary['checks']['reconstruction'], True)

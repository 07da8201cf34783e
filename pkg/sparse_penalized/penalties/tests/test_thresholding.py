import math
from unittest import TestCase

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from sparse_penalized.penalties import (
    PenaltyKind,
    PenaltySpec,
    RidgeConvention,
    grid_threshold,
    penalty_value,
    penalty_values,
    scalar_objective,
    soft_threshold,
    threshold,
    threshold_array,
)


def make_specs(lam: float) -> tuple[PenaltySpec, ...]:
    return (
        PenaltySpec(kind=PenaltyKind.HARD, lam=lam),
        PenaltySpec(kind=PenaltyKind.ENTROPY, lam=lam),
        PenaltySpec(kind=PenaltyKind.L1, lam=lam),
        PenaltySpec(kind=PenaltyKind.L2, lam=lam),
        PenaltySpec(kind=PenaltyKind.SCAD, lam=lam),
        PenaltySpec(kind=PenaltyKind.BRIDGE, lam=lam, q=0.5),
    )


CONTINUOUS_KINDS = (PenaltyKind.L1, PenaltyKind.L2, PenaltyKind.SCAD)


class ThresholdExamplesTestCase(TestCase):
    def test_examples(self):
        self.assertEqual(threshold(PenaltySpec(kind=PenaltyKind.L1, lam=1), 2), 1)

        hard = PenaltySpec(kind=PenaltyKind.HARD, lam=1)
        self.assertEqual(threshold(hard, 0.9), 0)
        # The global minimizer of the hard penalty objective keeps z only above sqrt(2) * lam:
        self.assertEqual(threshold(hard, 1.1), 0)
        self.assertEqual(threshold(hard, 1.5), 1.5)
        self.assertEqual(threshold(hard, -1.5), -1.5)

        entropy = PenaltySpec(kind=PenaltyKind.ENTROPY, lam=1)
        self.assertEqual(threshold(entropy, 1.1), 1.1)
        self.assertEqual(threshold(entropy, 1.0), 0)  # tie -> sparser

        scad = PenaltySpec(kind=PenaltyKind.SCAD, lam=1)
        self.assertAlmostEqual(threshold(scad, 3), (2.7 * 3 - 3.7) / 1.7, places=12)
        self.assertAlmostEqual(threshold(scad, 3), 2.588235, places=6)

        self.assertAlmostEqual(threshold(PenaltySpec(kind=PenaltyKind.L2, lam=1), 2), 2 / 3, places=15)
        half_l2 = PenaltySpec(kind=PenaltyKind.L2, lam=1, ridge=RidgeConvention.HALF_LAMBDA)
        self.assertEqual(threshold(half_l2, 2), 1)

    def test_zero_lambda_is_identity(self):
        for spec in make_specs(0.0):
            with self.subTest(spec=spec):
                self.assertEqual(threshold(spec, 1.234), 1.234)
                self.assertEqual(threshold(spec, -0.3), -0.3)
                self.assertEqual(threshold(spec, 0), 0)

    def test_scad_piecewise(self):
        scad = PenaltySpec(kind=PenaltyKind.SCAD, lam=0.7)
        for z in np.linspace(-1.4, 1.4, 101):
            self.assertAlmostEqual(threshold(scad, z), soft_threshold(float(z), 0.7), delta=1e-12)
        for z in (2.6, 3.0, -5.0, 10.0):
            self.assertEqual(threshold(scad, z), z)

    def test_threshold_array(self):
        spec = PenaltySpec(kind=PenaltyKind.L1, lam=1)
        np.testing.assert_array_equal(
            threshold_array(spec, np.array([[-3.0, 0.5], [2.0, 0.0]])),
            np.array([[-2.0, 0.0], [1.0, 0.0]]),
        )

    def test_vectorized_penalty_values(self):
        grid = np.linspace(0, 12, 241)
        for spec in make_specs(1.3) + (PenaltySpec(kind=PenaltyKind.BRIDGE, lam=0.4, q=1.5),):
            with self.subTest(spec=spec):
                expected = [penalty_value(spec, float(t)) for t in grid]
                np.testing.assert_allclose(penalty_values(spec, grid), expected, rtol=1e-14, atol=1e-14)

    def test_bridge(self):
        spec = PenaltySpec(kind=PenaltyKind.BRIDGE, lam=1, q=0.5)
        self.assertEqual(threshold(spec, 0.5), 0)  # below the inflection point
        big = threshold(spec, 5)
        self.assertGreater(big, 4.5)
        self.assertLess(big, 5)
        # The stationarity condition holds at the nonzero solution:
        self.assertAlmostEqual(big - 5 + 0.5 * big**-0.5, 0, delta=1e-8)

        convex = PenaltySpec(kind=PenaltyKind.BRIDGE, lam=1, q=1.5)
        self.assertGreater(threshold(convex, 0.2), 0)  # no sparsity for q > 1


class ThresholdOracleTestCase(TestCase):
    @given(
        lam=st.floats(min_value=0.01, max_value=3.0),
        z=st.floats(min_value=-10.0, max_value=10.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_matches_grid_minimization(self, lam, z):
        for spec in make_specs(lam):
            result = threshold(spec, z)
            oracle = grid_threshold(spec, z)

            # Never worse than the brute force minimum:
            self.assertLessEqual(
                scalar_objective(spec, z, result),
                scalar_objective(spec, z, oracle) + 1e-9,
                msg=f'{spec=} {z=} {result=} {oracle=}',
            )
            # Same minimizer, unless the keep-or-kill decision sits at a tie of both objective values:
            if abs(result - oracle) > 1e-4:
                self.assertAlmostEqual(
                    scalar_objective(spec, z, result),
                    scalar_objective(spec, z, oracle),
                    delta=1e-9,
                    msg=f'{spec=} {z=} {result=} {oracle=}',
                )

    @given(
        lam=st.floats(min_value=0.0, max_value=3.0),
        z=st.floats(min_value=-10.0, max_value=10.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_odd_and_shrinking(self, lam, z):
        for spec in make_specs(lam):
            result = threshold(spec, z)
            self.assertEqual(threshold(spec, -z), -result)
            self.assertLessEqual(abs(result), abs(z) + 1e-12)
            if result != 0:
                self.assertEqual(math.copysign(1, result), math.copysign(1, z))

    def test_monotone_magnitude(self):
        """|threshold(z)| is continuous for L1, L2 and SCAD but jumps for Hard and Entropy."""
        zs = np.linspace(0, 6, 6001)
        for spec in make_specs(1.0):
            values = np.abs(threshold_array(spec, zs))
            self.assertTrue(np.all(np.diff(values) >= -1e-12), spec)
            max_jump = float(np.max(np.diff(values)))
            if spec.kind in CONTINUOUS_KINDS:
                self.assertLess(max_jump, 0.01, spec)
            elif spec.kind in (PenaltyKind.HARD, PenaltyKind.ENTROPY):
                self.assertGreater(max_jump, 0.9, spec)

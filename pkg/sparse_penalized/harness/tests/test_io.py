import tempfile
from pathlib import Path
from unittest import TestCase

import msgspec
import numpy as np

from sparse_penalized.exceptions import ContractError
from sparse_penalized.harness import GeneratorKind, RegressionParams, SurvivalParams, generate
from sparse_penalized.harness.io import (
    encode_json,
    read_dataset,
    read_matrix,
    read_survival,
    write_dataset,
    write_json,
    write_matrix,
)
from sparse_penalized.models import Dataset


class CsvTestCase(TestCase):
    def test_dataset_round_trip(self):
        data = generate(GeneratorKind.LINEAR, RegressionParams(n=25, beta=(1.5, -0.25, 3.0), rho=0.3), seed=1)
        with tempfile.TemporaryDirectory() as temp_dir:
            path = write_dataset(data, Path(temp_dir) / 'data.csv')
            self.assertEqual(path.read_text().splitlines()[0], 'x1,x2,x3,y')
            loaded = read_dataset(path)
        np.testing.assert_array_equal(loaded.X, data.X)
        np.testing.assert_array_equal(loaded.y, data.y)
        self.assertIsNone(loaded.weights)

    def test_weights_round_trip(self):
        data = Dataset(
            X=np.array([[0.1], [0.2], [1 / 3]]), y=np.array([1.0, 0.0, 1.0]), weights=np.array([1.0, 2.0, 0.5])
        )
        with tempfile.TemporaryDirectory() as temp_dir:
            loaded = read_dataset(write_dataset(data, Path(temp_dir) / 'weighted.csv'))
        np.testing.assert_array_equal(loaded.X, data.X)
        np.testing.assert_array_equal(loaded.weights, data.weights)

    def test_survival_round_trip(self):
        data = generate(GeneratorKind.SURVIVAL, SurvivalParams(n=30, beta=(1.0, 0.0), censoring_rate=0.5), seed=2)
        with tempfile.TemporaryDirectory() as temp_dir:
            loaded = read_survival(write_dataset(data, Path(temp_dir) / 'survival.csv'))
        np.testing.assert_array_equal(loaded.X, data.X)
        np.testing.assert_array_equal(loaded.time, data.time)
        np.testing.assert_array_equal(loaded.status, data.status)

    def test_matrix_round_trip(self):
        matrix = np.random.default_rng(3).normal(size=(6, 4))
        with tempfile.TemporaryDirectory() as temp_dir:
            loaded, columns = read_matrix(write_matrix(matrix, Path(temp_dir) / 'matrix.csv'))
        np.testing.assert_array_equal(loaded, matrix)
        self.assertEqual(columns, ['x1', 'x2', 'x3', 'x4'])

    def test_missing_columns(self):
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / 'bad.csv'
            path.write_text('a,b\n1,2\n')
            with self.assertRaises(ContractError) as cm:
                read_dataset(path)
            self.assertIn("'y'", str(cm.exception))
            with self.assertRaises(ContractError):
                read_survival(path)

            path.write_text('y\n1\n')
            with self.assertRaises(ContractError):
                read_dataset(path)


class JsonTestCase(TestCase):
    def test_sorted_and_stable(self):
        payload = {'z': [np.float64(1.25), np.int64(2)], 'a': {'y': np.array([1.0, np.nan]), 'b': True}}
        encoded = encode_json(payload)
        self.assertEqual(encoded, b'{"a":{"b":true,"y":[1.0,"nan"]},"z":[1.25,2]}')
        self.assertEqual(encoded, encode_json(dict(reversed(list(payload.items())))))

    def test_full_precision(self):
        value = 0.1 + 0.2
        self.assertEqual(msgspec.json.decode(encode_json({'value': value}))['value'], value)

    def test_write_json(self):
        with tempfile.TemporaryDirectory() as temp_dir:
            path = write_json({'b': 1, 'a': Path('/tmp')}, Path(temp_dir) / 'sub' / 'report.json')
            self.assertEqual(path.read_bytes(), b'{"a":"/tmp","b":1}\n')

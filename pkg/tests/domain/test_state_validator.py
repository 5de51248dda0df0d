import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../')))

import unittest

import numpy as np

from domain.entities.density_matrix import DensityMatrix
from domain.state_validator import StateValidator


class TestStateValidator(unittest.TestCase):
    """Test cases for StateValidator."""

    def setUp(self):
        self.valid = DensityMatrix(1, np.array([[0.75, 0.25], [0.25, 0.25]]))

    def test_validate_valid_state(self):
        self.assertEqual(StateValidator.validate(self.valid), [])
        self.assertIsNone(StateValidator.validate_hermiticity(self.valid))
        self.assertIsNone(StateValidator.validate_trace(self.valid))
        self.assertIsNone(StateValidator.validate_positivity(self.valid))

    def test_validate_trace(self):
        rho = DensityMatrix(1, np.array([[0.5, 0.0], [0.0, 0.25]]))
        self.assertIn("traza", StateValidator.validate_trace(rho))

    def test_validate_hermiticity(self):
        rho = DensityMatrix(1, np.array([[0.5, 0.1j], [0.1j, 0.5]]))
        self.assertIsNotNone(StateValidator.validate_hermiticity(rho))

    def test_validate_positivity(self):
        rho = DensityMatrix(1, np.array([[1.2, 0.0], [0.0, -0.2]]))
        self.assertIsNotNone(StateValidator.validate_positivity(rho))
        self.assertEqual(len(StateValidator.validate(rho)), 1)

    def test_density_matrix_is_read_only(self):
        with self.assertRaises(ValueError):
            self.valid.data[0, 0] = 1.0


if __name__ == '__main__':
    unittest.main()

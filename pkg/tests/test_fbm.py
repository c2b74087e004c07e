"""
Test Suite for Fractional Brownian Motion

This module contains Monte-Carlo tests for the fractional Gaussian noise and
fractional Brownian motion generators, including the sequential fallback.
"""

import unittest
from unittest import mock
import sys
import os

import numpy as np

# Add parent directory to path to import src modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src import fbm
from src.errors import DomainError
from src.fbm import fgn_autocovariance, fgn_generate, fbm_generate, fbm_paths


class TestFgn(unittest.TestCase):
    """Test cases for fractional Gaussian noise."""

    def test_autocovariance_lag_zero(self):
        """Test the lag-zero covariance equals dt^(2H)."""
        self.assertAlmostEqual(float(fgn_autocovariance(0.7, 0, dt=0.5)), 0.5 ** 1.4)

    def test_autocovariance_white(self):
        """Test H=1/2 has no correlation at non-zero lags."""
        np.testing.assert_allclose(fgn_autocovariance(0.5, np.arange(1, 6)), 0.0, atol=1e-15)

    def test_white_noise_lag_one(self):
        """Test H=1/2 increments have zero lag-1 autocorrelation."""
        x = fgn_generate(0.5, 10000, seed=1, size=100)
        x = x - x.mean(axis=1, keepdims=True)
        rho = np.sum(x[:, 1:] * x[:, :-1]) / np.sum(x * x)
        self.assertLess(abs(rho), 0.01)

    def test_lag_one_matches_theory(self):
        """Test the pooled lag-1 autocorrelation for persistent noise."""
        H = 0.8
        x = fgn_generate(H, 4096, seed=2, size=200)
        rho = np.mean(x[:, 1:] * x[:, :-1]) / np.mean(x * x)
        self.assertAlmostEqual(rho, 2 ** (2 * H - 1) - 1, delta=0.02)

    def test_shape_and_reproducibility(self):
        """Test path shapes and seed determinism."""
        self.assertEqual(fgn_generate(0.6, 100, seed=3).shape, (100,))
        self.assertEqual(fgn_generate(0.6, 100, seed=3, size=4).shape, (4, 100))
        np.testing.assert_array_equal(fgn_generate(0.6, 50, seed=9), fgn_generate(0.6, 50, seed=9))

    def test_fallback(self):
        """Test the sequential fallback reproduces the covariance and warns."""
        H = 0.7
        with mock.patch.object(fbm, "EIGEN_TOL", -1.0):
            with self.assertLogs("src.fbm", level="WARNING"):
                x = fgn_generate(H, 16, seed=4, size=20000)
        self.assertAlmostEqual(np.mean(x[:, 0] ** 2), 1.0, delta=0.05)
        self.assertAlmostEqual(np.mean(x[:, 5] * x[:, 6]), float(fgn_autocovariance(H, 1)), delta=0.05)

    def test_rejects_bad_hurst(self):
        """Test Hurst exponents outside (0, 1) are rejected."""
        for bad in (0.0, 1.0, -0.1, float('nan')):
            with self.assertRaises(DomainError):
                fgn_generate(bad, 10)


class TestFbm(unittest.TestCase):
    """Test cases for fractional Brownian motion paths."""

    def test_starts_at_zero(self):
        """Test every path starts at B(0) = 0."""
        path = fbm_generate(0.3, 256, dt=0.01, seed=0)
        self.assertEqual(path.values[0], 0.0)
        self.assertEqual(len(path), 256)

    def test_variance_at_one(self):
        """Test Var[B(1)] = 1 for H=0.8."""
        paths = fbm_paths(0.8, 65, 1.0 / 64, seed=5, size=10000)
        self.assertAlmostEqual(np.var(paths[:, -1]), 1.0, delta=0.05)

    def test_self_affinity(self):
        """Test Var[B(2t)] / Var[B(t)] approaches 2^(2H)."""
        for H in (0.3, 0.7):
            paths = fbm_paths(H, 129, 1.0 / 64, seed=6, size=20000)
            ratio = np.var(paths[:, 128]) / np.var(paths[:, 64])
            self.assertAlmostEqual(ratio / 2 ** (2 * H), 1.0, delta=0.05)

    def test_rejects_short_path(self):
        """Test a path needs at least two samples."""
        with self.assertRaises(DomainError):
            fbm_generate(0.5, 1)


if __name__ == '__main__':
    unittest.main()

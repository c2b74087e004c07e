"""
Test Suite for Multifractal Analysis

This module contains tests for probability histograms, Renyi entropy,
generalized dimensions and the full dimension spectrum.
"""

import math
import unittest
import sys
import os

import numpy as np

# Add parent directory to path to import src modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.errors import ConfigurationError, DomainError
from src.fbm import fgn_generate
from src.fractal_analysis import (
    ProbabilityHistogram, build_histogram, renyi_entropy, default_resolutions,
    generalized_dimension, fractal_spectrum, q_grid, capacity_dimension,
    hurst_from_spectrum, spectrum_width
)
from src.timeseries import TimeSeries


def _uniform_histogram(bins):
    return ProbabilityHistogram(bins, 1.0, 0.0, float(bins), np.full(bins, 1.0 / bins))


class TestBuildHistogram(unittest.TestCase):
    """Test cases for value histograms."""

    def setUp(self):
        self.rng = np.random.default_rng(0)

    def test_constant_series(self):
        """Test a constant series gives one bin of probability one."""
        h = build_histogram(TimeSeries(np.full(50, 3.0), 0.01), 0.1)
        self.assertEqual(h.bin_count, 1)
        np.testing.assert_array_equal(h.probabilities, [1.0])

    def test_two_valued_series(self):
        """Test an alternating series splits evenly into two bins."""
        h = build_histogram(TimeSeries(np.tile([-1.0, 1.0], 10), 0.01), 1.0)
        np.testing.assert_array_equal(h.probabilities, [0.5, 0.5])

    def test_bin_count(self):
        """Test N equals ceil(range / dV)."""
        values = self.rng.normal(size=500)
        h = build_histogram(TimeSeries(values, 0.01), 0.3)
        self.assertEqual(h.bin_count, math.ceil(np.ptp(values) / 0.3))
        self.assertEqual(h.edges.size, h.bin_count + 1)

    def test_probabilities_sum_to_one(self):
        """Test probabilities are non-negative and sum to one."""
        h = build_histogram(TimeSeries(self.rng.normal(size=1000), 0.01), 0.05)
        self.assertAlmostEqual(h.probabilities.sum(), 1.0, delta=1e-12)
        self.assertTrue(np.all(h.probabilities >= 0))

    def test_shift_invariance(self):
        """Test shifting the whole series leaves the histogram unchanged."""
        values = self.rng.integers(0, 64, size=400).astype(float)
        a = build_histogram(TimeSeries(values, 0.01), 4.0)
        b = build_histogram(TimeSeries(values + 1000.0, 0.01), 4.0)
        np.testing.assert_array_equal(a.probabilities, b.probabilities)

    def test_rejects_bad_resolution(self):
        """Test non-positive resolutions are rejected."""
        ts = TimeSeries(np.arange(10.0), 0.1)
        with self.assertRaises(DomainError):
            build_histogram(ts, 0.0)
        with self.assertRaises(DomainError):
            build_histogram(ts, -1.0)


class TestRenyiEntropy(unittest.TestCase):
    """Test cases for Renyi entropy."""

    def test_uniform_is_q_independent(self):
        """Test the uniform 2^k-bin distribution has k bits for every q."""
        for k in (1, 3, 6):
            h = _uniform_histogram(2 ** k)
            for q in (-5.0, 0.0, 0.999999, 1.0, 2.0, 5.0):
                self.assertAlmostEqual(renyi_entropy(h, q), k, places=9)

    def test_single_bin(self):
        """Test a single occupied bin has zero entropy."""
        h = ProbabilityHistogram(1, 1.0, 0.0, 0.0, np.array([1.0]))
        for q in (-3.0, 1.0, 4.0):
            self.assertEqual(renyi_entropy(h, q), 0.0)

    def test_shannon(self):
        """Test the Shannon entropy of [0.75, 0.25]."""
        h = ProbabilityHistogram(2, 1.0, 0.0, 2.0, np.array([0.75, 0.25]))
        self.assertAlmostEqual(renyi_entropy(h, 1.0), 0.8112781244591328, places=12)

    def test_limit_matches_shannon(self):
        """Test orders approaching one converge to the Shannon form."""
        h = ProbabilityHistogram(3, 1.0, 0.0, 3.0, np.array([0.5, 0.3, 0.2]))
        shannon = renyi_entropy(h, 1.0)
        self.assertAlmostEqual(renyi_entropy(h, 1.0 + 1e-7), shannon, places=5)
        self.assertLess(abs(renyi_entropy(h, 1.0 + 5e-10) - shannon), 1e-9)

    def test_non_increasing_in_q(self):
        """Test entropy does not increase with q."""
        h = ProbabilityHistogram(4, 1.0, 0.0, 4.0, np.array([0.1, 0.2, 0.3, 0.4]))
        entropies = [renyi_entropy(h, q) for q in np.linspace(-10, 10, 81)]
        self.assertTrue(np.all(np.diff(entropies) <= 1e-12))

    def test_empty_bins_ignored(self):
        """Test empty bins do not affect negative orders."""
        h = ProbabilityHistogram(4, 1.0, 0.0, 4.0, np.array([0.5, 0.0, 0.5, 0.0]))
        self.assertAlmostEqual(renyi_entropy(h, -4.0), 1.0, places=12)


class TestGeneralizedDimension(unittest.TestCase):
    """Test cases for single-order generalized dimensions."""

    def setUp(self):
        rng = np.random.default_rng(42)
        self.noise = TimeSeries(rng.normal(size=4096), 1.0 / 256)

    def test_constant_series(self):
        """Test a constant series has dimension zero at every order."""
        ts = TimeSeries(np.full(100, -5.0), 0.01)
        for q in (-20.0, 0.0, 1.0, 20.0):
            self.assertEqual(generalized_dimension(ts, q)[0], 0.0)

    def test_equal_probability_series(self):
        """Test an equal-probability series has the same dimension at every order."""
        ts = TimeSeries(np.arange(4096, dtype=float), 1.0)
        ladder = [4096.0 / 2 ** k for k in range(3, 11)]
        n0, r2 = generalized_dimension(ts, 0.0, ladder)
        self.assertAlmostEqual(n0, 1.0, delta=1e-3)
        self.assertGreater(r2, 0.999)
        for q in (-20.0, -2.0, 1.0, 2.0, 20.0):
            self.assertAlmostEqual(generalized_dimension(ts, q, ladder)[0], n0, delta=0.02)

    def test_correlation_dimension_oracle(self):
        """Test N_2 against the pair-counting slope between the two finest resolutions."""
        values = self.noise.values
        span = np.ptp(values)

        def pair_entropy(delta_v):
            bins = math.ceil(span / delta_v)
            index = np.minimum(((values - values.min()) / delta_v).astype(int), bins - 1)
            same_bin = np.mean(index[:, None] == index[None, :])
            return -math.log2(same_bin)

        second, finest = default_resolutions(self.noise)[-2:]
        oracle = (pair_entropy(finest) - pair_entropy(second)) / math.log2(second / finest)
        self.assertAlmostEqual(generalized_dimension(self.noise, 2.0)[0], oracle, delta=0.1)
        self.assertAlmostEqual(generalized_dimension(self.noise, 2.0, anchored=False)[0], oracle, delta=0.1)

    def test_intercept_fit_converges(self):
        """Test the intercept fit of N_2 approaches one for long Gaussian series."""
        rng = np.random.default_rng(11)
        short = generalized_dimension(TimeSeries(rng.normal(size=2 ** 12), 1.0), 2.0, anchored=False)[0]
        long = generalized_dimension(TimeSeries(rng.normal(size=2 ** 17), 1.0), 2.0, anchored=False)[0]
        self.assertAlmostEqual(long, 1.0, delta=0.1)
        self.assertLess(abs(long - 1.0), abs(short - 1.0) + 0.02)

    def test_fits_agree_on_equal_probability_series(self):
        """Test both fits give one for a ramp, whose entropy has no offset."""
        ts = TimeSeries(np.arange(4096, dtype=float), 1.0)
        ladder = [4096.0 / 2 ** k for k in range(3, 11)]
        anchored, _ = generalized_dimension(ts, 0.0, ladder)
        free, r2 = generalized_dimension(ts, 0.0, ladder, anchored=False)
        self.assertAlmostEqual(anchored, 1.0, delta=1e-3)
        self.assertAlmostEqual(free, 1.0, delta=1e-3)
        self.assertGreater(r2, 0.999)

    def test_ladder_too_short(self):
        """Test fewer than five resolutions is a configuration error."""
        with self.assertRaises(ConfigurationError):
            generalized_dimension(self.noise, 2.0, [0.1, 0.05, 0.025, 0.0125])

    def test_ladder_too_narrow(self):
        """Test a ladder spanning less than two octaves is a configuration error."""
        with self.assertRaises(ConfigurationError):
            generalized_dimension(self.noise, 2.0, [0.10, 0.09, 0.08, 0.07, 0.06])

    def test_integer_ladder_depth(self):
        """Test an integer selects the depth of the default ladder."""
        self.assertEqual(len(default_resolutions(self.noise, 6)), 6)
        n_a, _ = generalized_dimension(self.noise, 0.0, 8)
        n_b, _ = generalized_dimension(self.noise, 0.0)
        self.assertEqual(n_a, n_b)


class TestFractalSpectrum(unittest.TestCase):
    """Test cases for the full dimension spectrum."""

    def setUp(self):
        rng = np.random.default_rng(3)
        self.series = {
            'white': TimeSeries(rng.normal(size=4096), 1.0 / 256),
            'fgn': TimeSeries(fgn_generate(0.79, 4096, seed=4), 1.0 / 256),
            'uniform': TimeSeries(rng.uniform(-1, 1, size=4096), 1.0 / 256),
            'sine': TimeSeries(np.sin(2 * np.pi * 34 * np.arange(2560) / 256), 1.0 / 256),
            'ramp': TimeSeries(np.linspace(0.0, 1.0, 2560), 1.0 / 256),
        }

    def test_q_grid(self):
        """Test the default grid runs from -20 to 20 in half steps."""
        grid = q_grid()
        self.assertEqual(grid.size, 81)
        self.assertEqual(grid[0], -20.0)
        self.assertEqual(grid[-1], 20.0)
        self.assertTrue(np.all(np.diff(grid) > 0))

    def test_q_grid_invalid(self):
        """Test inverted ranges and non-positive steps are rejected."""
        with self.assertRaises(ConfigurationError):
            q_grid(5.0, -5.0, 0.5)
        with self.assertRaises(ConfigurationError):
            q_grid(-5.0, 5.0, 0.0)

    def test_constant_series(self):
        """Test a constant series has a flat zero spectrum."""
        spectrum = fractal_spectrum(TimeSeries(np.full(256, 1.0), 0.01))
        np.testing.assert_array_equal(spectrum.dims, np.zeros(81))
        self.assertEqual(spectrum.width, 0.0)

    def test_monotone_for_every_series(self):
        """Test the anchored spectrum never increases with q and the extremes are ordered."""
        for name, ts in self.series.items():
            spectrum = fractal_spectrum(ts)
            self.assertTrue(spectrum.is_monotone(), name)
            self.assertGreaterEqual(spectrum.dims[0], spectrum.dims[-1], name)
            self.assertGreaterEqual(spectrum.n_minus_inf, spectrum.n_plus_inf, name)

    def test_extremes_bracket_grid(self):
        """Test the direct extremes bracket the finite-order dimensions."""
        spectrum = fractal_spectrum(self.series['white'])
        self.assertGreaterEqual(spectrum.n_minus_inf, spectrum.dims[0] - 1e-9)
        self.assertLessEqual(spectrum.n_plus_inf, spectrum.dims[-1] + 1e-9)

    def test_intercept_fit_loses_ordering_on_gaussian_tails(self):
        """Test the intercept fit inverts the extremes on short Gaussian noise."""
        spectrum = fractal_spectrum(self.series['white'], anchored=False)
        self.assertLess(spectrum.dims[0], spectrum.dims[-1])
        self.assertFalse(spectrum.is_monotone())
        self.assertTrue(fractal_spectrum(self.series['white']).is_monotone())

    def test_intercept_fit_r_squared_is_centred(self):
        """Test the intercept fit reports a centred R^2 close to one on Gaussian noise."""
        spectrum = fractal_spectrum(self.series['white'], 0.0, 2.0, 1.0, anchored=False)
        self.assertTrue(np.all(spectrum.r_squared <= 1.0))
        self.assertTrue(np.all(spectrum.r_squared > 0.9))

    def test_gaussian_wider_than_ramp(self):
        """Test Gaussian noise has a wider spectrum than an equal-probability ramp."""
        white = fractal_spectrum(self.series['white']).width
        self.assertGreater(white, fractal_spectrum(self.series['ramp']).width)
        self.assertGreater(white, 0.1)

    def test_rows_and_lookup(self):
        """Test tabular rows and nearest-order lookup."""
        spectrum = fractal_spectrum(self.series['uniform'], -2.0, 2.0, 1.0)
        rows = spectrum.rows()
        self.assertEqual([r[0] for r in rows], [-2.0, -1.0, 0.0, 1.0, 2.0])
        self.assertEqual(spectrum.dimension_at(0.2), rows[2][1])

    def test_spectrum_width_helper(self):
        """Test the two-point width helper matches the full spectrum."""
        ts = self.series['fgn']
        self.assertAlmostEqual(spectrum_width(ts), fractal_spectrum(ts).width, places=12)


class TestDerivedQuantities(unittest.TestCase):
    """Test cases for capacity dimension and the spectrum-to-Hurst map."""

    def test_capacity_dimension_full(self):
        """Test every bin occupied gives capacity dimension one."""
        ts = TimeSeries(np.arange(4096, dtype=float), 1.0)
        h = build_histogram(ts, 4096.0 / 64)
        self.assertAlmostEqual(capacity_dimension(h), 1.0, delta=1e-3)

    def test_capacity_dimension_constant(self):
        """Test a single-bin histogram has capacity dimension zero."""
        h = build_histogram(TimeSeries(np.zeros(8), 1.0), 1.0)
        self.assertEqual(capacity_dimension(h), 0.0)

    def test_hurst_from_spectrum(self):
        """Test a unit capacity dimension maps to H=1/2 in one dimension."""
        ts = TimeSeries(np.arange(4096, dtype=float), 1.0)
        spectrum = fractal_spectrum(ts, -2.0, 2.0, 0.5, [4096.0 / 2 ** k for k in range(3, 11)])
        self.assertAlmostEqual(hurst_from_spectrum(spectrum, d=1, q=0.0), 0.5, delta=1e-3)


if __name__ == '__main__':
    unittest.main()

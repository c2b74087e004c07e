"""
Test Suite for Stimulus Pulses and Trains

This module contains tests for Gaussian pulses, train superposition,
sampling and the Poisson and periodic train generators.
"""

import math
import unittest
import sys
import os

import numpy as np
from scipy import integrate

# Add parent directory to path to import src modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.errors import DomainError
from src.stimulus import (
    GaussianPulse, StimulusTrain, pulse_value, train_value, sample_train,
    poisson_train, periodic_train, train_from_lists
)


class TestGaussianPulse(unittest.TestCase):
    """Test cases for a single Gaussian pulse."""

    def setUp(self):
        self.pulse = GaussianPulse(phi0=1.0, t_star=0.002, sigma=0.001)

    def test_peak(self):
        """Test the flux at the peak equals phi0."""
        self.assertEqual(pulse_value(self.pulse, 0.002), 1.0)

    def test_one_width_away(self):
        """Test the flux one width from the peak is phi0 / e."""
        for t in (0.001, 0.003):
            self.assertAlmostEqual(pulse_value(self.pulse, t), math.exp(-1.0), places=12)

    def test_symmetry(self):
        """Test the pulse is symmetric about its peak."""
        delta = np.linspace(0.0, 0.005, 11)
        np.testing.assert_allclose(
            pulse_value(self.pulse, 0.002 + delta), pulse_value(self.pulse, 0.002 - delta)
        )

    def test_area(self):
        """Test the pulse integrates to phi0 * sigma * sqrt(pi)."""
        pulse = GaussianPulse(2.0, 0.5, 0.1)
        area, _ = integrate.quad(lambda t: pulse_value(pulse, t), -np.inf, np.inf)
        self.assertAlmostEqual(area, 2.0 * 0.1 * math.sqrt(math.pi), delta=1e-6)

    def test_invalid(self):
        """Test non-positive widths and non-finite fields are rejected."""
        with self.assertRaises(DomainError):
            GaussianPulse(1.0, 0.0, 0.0)
        with self.assertRaises(DomainError):
            GaussianPulse(float('inf'), 0.0, 1.0)
        with self.assertRaises(DomainError):
            GaussianPulse(1.0, float('nan'), 1.0)


class TestStimulusTrain(unittest.TestCase):
    """Test cases for train superposition and sampling."""

    def setUp(self):
        self.pulse = GaussianPulse(1.0, 0.05, 0.01)

    def test_empty_train(self):
        """Test an empty train has zero flux everywhere."""
        train = StimulusTrain()
        self.assertTrue(train.is_empty())
        self.assertEqual(train_value(train, 3.0), 0.0)
        np.testing.assert_array_equal(sample_train(train, 0.1, 4).values, np.zeros(4))

    def test_identical_pulses_double(self):
        """Test two identical pulses give twice the single-pulse flux."""
        train = StimulusTrain((self.pulse, self.pulse))
        t = np.linspace(0.0, 0.1, 21)
        np.testing.assert_allclose(train_value(train, t), 2.0 * pulse_value(self.pulse, t))

    def test_separated_pulses(self):
        """Test well separated pulses do not disturb each other's peaks."""
        other = GaussianPulse(1.0, 0.05 + 11 * 0.01, 0.01)
        train = StimulusTrain((self.pulse, other))
        self.assertLess(abs(train_value(train, 0.05) - 1.0), 1e-4)

    def test_merge(self):
        """Test merging concatenates pulses in order."""
        a = StimulusTrain((self.pulse,))
        b = StimulusTrain((GaussianPulse(2.0, 0.1, 0.01),))
        merged = a.merge(b)
        self.assertEqual(len(merged), 2)
        self.assertEqual(merged.pulses[1].phi0, 2.0)
        self.assertEqual(merged.min_sigma, 0.01)

    def test_sample_peak_location(self):
        """Test the sampled argmax lies at the sample nearest the peak."""
        dt = 0.003
        sampled = sample_train(StimulusTrain((self.pulse,)), dt, 40)
        self.assertEqual(int(np.argmax(sampled.values)), int(round(0.05 / dt)))
        bound = math.exp(-((dt / 2) ** 2) / 0.01 ** 2)
        self.assertGreaterEqual(sampled.values.max(), bound - 1e-12)

    def test_non_negative(self):
        """Test non-negative amplitudes give non-negative flux."""
        train = poisson_train(20.0, 15, 1.0, 0.01, seed=3)
        self.assertTrue(np.all(sample_train(train, 0.001, 2000).values >= 0.0))

    def test_sample_invalid(self):
        """Test invalid sampling arguments are rejected."""
        with self.assertRaises(DomainError):
            sample_train(StimulusTrain(), 0.0, 4)
        with self.assertRaises(DomainError):
            sample_train(StimulusTrain(), 0.1, 0)

    def test_from_lists_broadcast(self):
        """Test length-one phi0 and sigma lists broadcast over t_star."""
        train = train_from_lists([1.0], [0.1, 0.2, 0.3], [0.01])
        self.assertEqual(len(train), 3)
        self.assertTrue(all(p.sigma == 0.01 for p in train))

    def test_from_lists_mismatch(self):
        """Test mismatched list lengths are rejected."""
        with self.assertRaises(DomainError):
            train_from_lists([1.0, 2.0], [0.1, 0.2, 0.3], [0.01])


class TestTrainGenerators(unittest.TestCase):
    """Test cases for the Poisson and periodic generators."""

    def test_poisson_reproducible(self):
        """Test the same seed yields the same train."""
        a = poisson_train(10.0, 20, 1.0, 0.001, seed=11)
        b = poisson_train(10.0, 20, 1.0, 0.001, seed=11)
        self.assertEqual(a, b)
        self.assertEqual(len(a), 20)

    def test_poisson_ordered(self):
        """Test Poisson peak times increase and start after t_start."""
        train = poisson_train(5.0, 50, 1.0, 0.001, seed=1, t_start=2.0)
        peaks = np.array([p.t_star for p in train])
        self.assertTrue(np.all(np.diff(peaks) > 0))
        self.assertGreater(peaks[0], 2.0)

    def test_poisson_rate(self):
        """Test the mean gap approaches 1/rate."""
        train = poisson_train(8.0, 4000, 1.0, 0.001, seed=5)
        peaks = np.array([p.t_star for p in train])
        self.assertAlmostEqual(np.mean(np.diff(peaks)), 1.0 / 8.0, delta=0.01)

    def test_periodic_without_jitter(self):
        """Test an unjittered train places peaks at mid-period instants."""
        template = GaussianPulse(1.0, 0.0, 0.001)
        train = periodic_train(template, rate=4.0, duration=1.0)
        np.testing.assert_allclose([p.t_star for p in train], [0.125, 0.375, 0.625, 0.875])

    def test_periodic_jitter_reproducible(self):
        """Test jittered trains depend only on the seed."""
        template = GaussianPulse(1.0, 0.0, 0.001)
        a = periodic_train(template, 34.0, 2.0, jitter=0.05, seed=9)
        b = periodic_train(template, 34.0, 2.0, jitter=0.05, seed=9)
        self.assertEqual(a, b)
        self.assertEqual(len(a), 68)

    def test_generators_reject_bad_rate(self):
        """Test non-positive rates are rejected."""
        with self.assertRaises(DomainError):
            poisson_train(0.0, 3, 1.0, 0.01, seed=0)
        with self.assertRaises(DomainError):
            periodic_train(GaussianPulse(1.0, 0.0, 0.01), -1.0, 1.0)


if __name__ == '__main__':
    unittest.main()

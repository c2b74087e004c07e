"""
Fractional Brain-Response Toolkit

This package contains implementations of:
- Fractional integration with product quadrature
- Gaussian stimulus pulses and pulse trains
- The fractional-diffusion brain response model and EEG-like signal synthesis
- Fractional Brownian motion and fractional Gaussian noise generation
- Multifractal (generalized dimension) spectra and R/S Hurst estimation
- Periodogram-based amplitude and frequency validation
- Signal files, run configuration and the command line
"""

__version__ = "1.0.0"

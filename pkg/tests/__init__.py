"""
Test Suite for the Fractional Brain-Response Toolkit

This package contains tests for:
- Fractional integration and the classical diffusion kernel
- Stimulus pulses and trains
- The response model, parameter relations and signal synthesis
- Fractional Brownian motion generation
- Multifractal spectra and Hurst estimation
- Spectral validation, signal files, configuration, comparison and the CLI
"""

"""Higher-order EPR bounds: spectral minimizers, wave functions, state families, Gaussian scans, criteria."""

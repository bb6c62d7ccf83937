"""Subspace codes for beamspace sensing with a single RF chain.

Modules
-------
grid      spatial grid, sensor sets, steering vectors, subspace distance
golomb    GF(p^2) arithmetic and Bose-Chowla Sidon sets
chancode  Reed-Muller codes, BPSK mapping, Hamming-to-subspace distance
beamform  BPSK-induced, antenna-selection and convolutional beamformers
subcode   beamspace codes, distance bounds, equivalence checks
sim       measurement model, ML decoding, error bounds, Monte Carlo
cli       command-line front end
"""

__version__ = "0.1.0"

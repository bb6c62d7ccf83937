"""Beamformer families: BPSK-code induced, antenna selection, convolutional.

A beamformer is a ``T x N_a`` complex matrix ``W`` applied to the outputs of
a ULA ``{0, ..., N_a - 1}``; measurement ``t`` is ``w_t^H a(f)``, i.e. row
``t`` of ``W`` times the steering vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import SensorSet, SpatialGrid, steering_matrix

ROW_NORM_TOL = 1e-9
FILTER_NORM_TOL = 1e-6
# Gains below this fraction of T count as nulls (A3 violations).
NULL_GAIN_RTOL = 1e-12


@dataclass(frozen=True)
class Filter:
    """Unit-norm FIR filter ``w`` of length P used by convolutional beamspaces."""

    taps: np.ndarray

    def __post_init__(self):
        taps = np.atleast_1d(np.asarray(self.taps, dtype=np.complex128))
        if taps.ndim != 1 or taps.size < 1:
            raise ValueError("filter taps must be a non-empty 1-D sequence")
        norm = np.linalg.norm(taps)
        if abs(norm - 1.0) > FILTER_NORM_TOL:
            raise ValueError(f"filter must have unit norm, got {norm:.6g}")
        taps.setflags(write=False)
        object.__setattr__(self, "taps", taps)

    @classmethod
    def boxcar(cls, P: int) -> "Filter":
        """All-ones filter of length P, scaled to unit norm."""
        return cls(np.ones(P) / np.sqrt(P))

    @classmethod
    def normalized(cls, taps) -> "Filter":
        taps = np.asarray(taps, dtype=np.complex128)
        return cls(taps / np.linalg.norm(taps))

    def __len__(self):
        return self.taps.size

    def response(self, freqs) -> np.ndarray:
        """``B(f; w) = sum_n conj(w_n) exp(j pi n f)`` (n from 0)."""
        f = np.atleast_1d(np.asarray(freqs, dtype=float))
        n = np.arange(self.taps.size)
        return np.exp(1j * np.pi * f[:, None] * n[None, :]) @ self.taps.conj()


@dataclass(frozen=True)
class Beamformer:
    """Beamforming matrix with its construction recipe.

    ``kind`` is one of ``"bpsk"``, ``"antenna-selection"``, ``"conv"``.
    ``shifts`` holds the antenna subset (selection) or shift set (conv);
    ``filter`` is set for convolutional beamspaces.
    """

    matrix: np.ndarray
    kind: str
    shifts: SensorSet | None = None
    filter: Filter | None = None
    source: str = ""
    null_points: tuple = field(default=(), repr=False)

    def __post_init__(self):
        W = np.asarray(self.matrix, dtype=np.complex128)
        if W.ndim != 2:
            raise ValueError("beamformer must be a matrix")
        norms = np.linalg.norm(W, axis=1)
        bad = np.flatnonzero(np.abs(norms - 1.0) > ROW_NORM_TOL)
        if bad.size:
            raise ValueError(f"row {bad[0]} has norm {norms[bad[0]]:.12g}, expected 1")
        W.setflags(write=False)
        object.__setattr__(self, "matrix", W)

    @property
    def T(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_antennas(self) -> int:
        return self.matrix.shape[1]

    def apply(self, freqs) -> np.ndarray:
        """Noiseless beamspace outputs ``W a_U(f)``, one column per frequency."""
        return self.matrix @ steering_matrix(np.arange(self.n_antennas), freqs)


def _nulls(W: Beamformer, grid: SpatialGrid) -> tuple:
    gains = np.sum(np.abs(W.apply(grid.points)) ** 2, axis=0)
    return tuple(int(i) for i in np.flatnonzero(gains <= NULL_GAIN_RTOL * W.T))


def _require_no_nulls(W: Beamformer, grid: SpatialGrid, allow_nulls: bool) -> Beamformer:
    nulls = _nulls(W, grid)
    if nulls and not allow_nulls:
        raise ValueError(
            f"beamformer has zero gain at grid index {nulls[0]} "
            f"(f = {grid.points[nulls[0]]:.6g}); every grid point must be identifiable"
        )
    return Beamformer(W.matrix, W.kind, W.shifts, W.filter, W.source, nulls)


def bpsk_beamformer(bpsk: np.ndarray, grid: SpatialGrid) -> Beamformer:
    """``W = B A_U^H / N_a`` for a ``T x N_g`` BPSK codebook with N_a = N_g.

    On the uniform grid the ULA manifold is a scaled DFT matrix, so
    ``W a_U(f_n) = b_n`` for every grid point.
    """
    B = np.asarray(bpsk)
    if B.ndim != 2 or not np.all(np.abs(B) == 1) or not np.all(np.isreal(B)):
        raise ValueError("codebook must be a 2-D array over {-1, +1}")
    if B.shape[1] != grid.n_points:
        raise ValueError(
            f"codebook has {B.shape[1]} columns but the grid has {grid.n_points} points; "
            "the construction requires N_a = N_g"
        )
    n_a = grid.n_points
    A = steering_matrix(np.arange(n_a), grid.points)
    W = B.astype(np.complex128) @ A.conj().T / n_a
    bf = Beamformer(W, "bpsk", source=f"bpsk T={B.shape[0]} N_g={B.shape[1]}")
    return _require_no_nulls(bf, grid, False)


def antenna_selection_beamformer(omega, n_antennas: int) -> Beamformer:
    """Row-selection matrix picking antennas ``omega`` out of ``n_antennas``."""
    omega = omega if isinstance(omega, SensorSet) else SensorSet(tuple(omega))
    if omega.aperture >= n_antennas:
        raise ValueError(f"position {omega.aperture} outside array of {n_antennas} antennas")
    W = np.zeros((len(omega), n_antennas), dtype=np.complex128)
    W[np.arange(len(omega)), omega.array] = 1.0
    return Beamformer(W, "antenna-selection", shifts=omega, source="antenna selection")


def conv_beamformer(filt: Filter, shifts, n_antennas: int) -> Beamformer:
    """Convolutional beamspace: row ``t`` is ``[0_{k_t}, w^H, 0_{N_a - P - k_t}]``."""
    shifts = shifts if isinstance(shifts, SensorSet) else SensorSet(tuple(shifts))
    P = len(filt)
    if shifts.aperture + P > n_antennas:
        raise ValueError(
            f"largest shift {shifts.aperture} plus filter length {P} exceeds "
            f"{n_antennas} antennas"
        )
    W = np.zeros((len(shifts), n_antennas), dtype=np.complex128)
    wh = filt.taps.conj()
    for t, k in enumerate(shifts):
        W[t, k:k + P] = wh
    return Beamformer(W, "conv", shifts=shifts, filter=filt, source=f"conv P={P}")


def validate_on_grid(W: Beamformer, grid: SpatialGrid, allow_nulls: bool = False) -> Beamformer:
    """Check every grid point has nonzero gain; returns a copy recording any nulls.

    With ``allow_nulls`` the offending indices are kept in ``null_points``
    instead of raising.
    """
    return _require_no_nulls(W, grid, allow_nulls)


def beampattern(filt: Filter, grid: SpatialGrid) -> np.ndarray:
    """``|B(f_n; w)|^2`` on every grid point."""
    return np.abs(filt.response(grid.points)) ** 2


@dataclass(frozen=True)
class IsotropyReport:
    max_deviation: float
    isotropic: bool
    T: int


def check_isotropy(W: Beamformer, grid: SpatialGrid, rtol: float = 1e-6) -> IsotropyReport:
    """Compare the gain ``|W a_U(f_n)|^2`` with T over the whole grid."""
    gains = np.sum(np.abs(W.apply(grid.points)) ** 2, axis=0)
    dev = float(np.max(np.abs(gains - W.T)))
    return IsotropyReport(dev, dev <= rtol * W.T, W.T)


def format_matrix(W) -> str:
    """Plain-text matrix: one row per line, entries as ``re+imj`` tokens."""
    M = W.matrix if isinstance(W, Beamformer) else np.asarray(W)
    lines = []
    for row in M:
        lines.append(" ".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    """Inverse of :func:`format_matrix`."""
    rows = [[complex(tok) for tok in line.split()] for line in text.splitlines() if line.strip()]
    return np.array(rows, dtype=np.complex128)

"""Spatial grid, steering vectors and one-dimensional subspace distance.

Sensor positions are integers in units of half a wavelength, so the
steering vector of a position set ``d`` at spatial frequency ``f`` is
``exp(j*pi*d*f)``.  All indices are zero-based.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform grid of spatial frequencies ``f_n = -1 + 2n/N_g``, n = 0..N_g-1."""

    n_points: int

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.n_points}")

    @property
    def points(self) -> np.ndarray:
        return -1.0 + 2.0 * np.arange(self.n_points) / self.n_points

    def __len__(self):
        return self.n_points

    def indices_in(self, lo: float, hi: float) -> np.ndarray:
        """Indices of grid points with ``lo <= f_n <= hi``."""
        f = self.points
        return np.flatnonzero((f >= lo) & (f <= hi))


def make_grid(n_points: int) -> SpatialGrid:
    return SpatialGrid(int(n_points))


@dataclass(frozen=True)
class SensorSet:
    """Strictly increasing non-negative integer positions (antennas or shifts)."""

    positions: tuple

    def __post_init__(self):
        pos = tuple(int(p) for p in self.positions)
        if not pos:
            raise ValueError("sensor set is empty")
        if pos[0] < 0:
            raise ValueError("sensor positions must be non-negative")
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise ValueError("sensor positions must be strictly increasing")
        object.__setattr__(self, "positions", pos)

    @classmethod
    def ula(cls, n: int) -> "SensorSet":
        """Uniform set {0, 1, ..., n-1}."""
        return cls(tuple(range(n)))

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.positions, dtype=np.int64)

    @property
    def aperture(self) -> int:
        return self.positions[-1]


def _positions(sensors) -> np.ndarray:
    if isinstance(sensors, SensorSet):
        return sensors.array
    return np.asarray(sensors, dtype=np.int64)


def steering_vector(sensors, f: float) -> np.ndarray:
    """Steering vector ``[exp(j*pi*d_i*f)]_i`` of a sensor set at frequency ``f``."""
    if not -1.0 <= f < 1.0:
        raise ValueError(f"spatial frequency must lie in [-1, 1), got {f}")
    return np.exp(1j * np.pi * _positions(sensors) * f)


def steering_matrix(sensors, freqs) -> np.ndarray:
    """Array manifold: column n is the steering vector at ``freqs[n]``."""
    d = _positions(sensors)[:, None]
    return np.exp(1j * np.pi * d * np.asarray(freqs, dtype=float)[None, :])


def _as_vector(u) -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128).ravel()
    if u.size == 0:
        raise ValueError("empty vector")
    if not np.all(np.isfinite(u)):
        raise ValueError("vector has non-finite entries")
    return u


def subspace_distance(u, v) -> float:
    """Distance ``1 - |u^H v|^2 / (|u|^2 |v|^2)`` between the spans of u and v."""
    u, v = _as_vector(u), _as_vector(v)
    if u.shape != v.shape:
        raise ValueError(f"length mismatch: {u.size} vs {v.size}")
    nu, nv = np.vdot(u, u).real, np.vdot(v, v).real
    if nu == 0.0 or nv == 0.0:
        raise ValueError("zero vector has no span")
    d = 1.0 - abs(np.vdot(u, v)) ** 2 / (nu * nv)
    return float(min(max(d, 0.0), 1.0))


# Values closer than this are treated as equal when picking the achieving pair.
TIE_TOL = 1e-12


def normalize_columns(vectors: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=0)
    if np.any(norms == 0.0):
        raise ValueError(f"zero codeword at column {int(np.flatnonzero(norms == 0)[0])}")
    return vectors / norms


def min_subspace_distance(codewords) -> tuple[float, tuple[int, int]]:
    """Minimum pairwise subspace distance of a set of vectors.

    Parameters
    ----------
    codewords : array_like or sequence of vectors
        Either a 2-D array whose *columns* are the codewords, or a sequence
        of equal-length 1-D vectors.

    Returns
    -------
    (float, (int, int))
        The minimum distance and the lexicographically smallest pair
        ``(i, j)``, ``i < j``, attaining it (values within ``TIE_TOL`` of the
        minimum count as ties).

    Every pair is evaluated; the Gram matrix of the normalized codewords is
    formed in one product.
    """
    if isinstance(codewords, np.ndarray) and codewords.ndim == 2:
        X = np.asarray(codewords, dtype=np.complex128)
    else:
        X = np.column_stack([_as_vector(c) for c in codewords])
    n = X.shape[1]
    if n < 2:
        raise ValueError("need at least two codewords")
    if not np.all(np.isfinite(X)):
        raise ValueError("codewords have non-finite entries")
    U = normalize_columns(X)
    corr = np.abs(U.conj().T @ U) ** 2
    iu, ju = np.triu_indices(n, k=1)
    d = np.clip(1.0 - corr[iu, ju], 0.0, 1.0)
    dmin = d.min()
    k = int(np.flatnonzero(d <= dmin + TIE_TOL)[0])
    return float(dmin), (int(iu[k]), int(ju[k]))

"""Beamspace subspace codes and their distance bounds."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import golomb
from .beamform import Beamformer, Filter, NULL_GAIN_RTOL, conv_beamformer
from .grid import SensorSet, SpatialGrid, min_subspace_distance, steering_matrix

DIST_TOL = 1e-10


@dataclass(frozen=True)
class SubspaceCode:
    """Normalized codewords ``b_n / |b_n|`` with ``b_n = W a_U(f_n)``.

    ``raw`` keeps the un-normalized outputs and ``gains`` their squared norms,
    which the error bounds need.  ``null_points`` lists grid indices where the
    beamformer has no gain; their codewords are taken from the continuous
    extension of the span (see :func:`build_code`).
    """

    codewords: np.ndarray
    raw: np.ndarray = field(repr=False)
    gains: np.ndarray = field(repr=False)
    grid: SpatialGrid
    label: str = ""
    null_points: tuple = ()
    _dmin: list = field(default_factory=list, repr=False, compare=False)

    @property
    def T(self) -> int:
        return self.codewords.shape[0]

    @property
    def size(self) -> int:
        return self.codewords.shape[1]

    def min_distance(self) -> tuple[float, tuple[int, int]]:
        if not self._dmin:
            self._dmin.append(min_subspace_distance(self.codewords))
        return self._dmin[0]


def _freeze(*arrays):
    for a in arrays:
        a.setflags(write=False)


def build_code(W: Beamformer, grid: SpatialGrid, allow_nulls: bool = False,
               label: str = "") -> SubspaceCode:
    """Subspace code of beamformer ``W`` on ``grid``.

    A grid point where ``W a_U(f_n)`` vanishes has no span and raises, unless
    ``allow_nulls`` is set.  That only makes sense for convolutional
    beamspaces: their outputs factor as ``B(f; w) a_S(f)``, so the codeword
    at a filter null is taken as the limiting span ``a_S(f_n)``.
    """
    raw = W.apply(grid.points)
    gains = np.sum(np.abs(raw) ** 2, axis=0)
    nulls = np.flatnonzero(gains <= NULL_GAIN_RTOL * W.T)
    codewords = raw / np.where(gains > 0, np.sqrt(gains), 1.0)[None, :]
    if nulls.size:
        if not allow_nulls:
            raise ValueError(
                f"zero codeword at grid index {nulls[0]} (f = {grid.points[nulls[0]]:.6g})"
            )
        if W.kind != "conv":
            raise ValueError("nulls can only be resolved for convolutional beamspaces")
        # what is left of W a_U(f_n) at a filter null is rounding noise
        codewords[:, nulls] = steering_matrix(W.shifts, grid.points[nulls]) / np.sqrt(W.T)
        gains = gains.copy()
        gains[nulls] = 0.0
    _freeze(codewords, raw, gains)
    return SubspaceCode(codewords, raw, gains, grid, label or W.source,
                        tuple(int(i) for i in nulls))


def antenna_space_code(sensors, grid: SpatialGrid, label: str = "") -> SubspaceCode:
    """Code ``C(I, S)`` of plain steering vectors on sensor set ``S``."""
    raw = steering_matrix(sensors, grid.points)
    T = raw.shape[0]
    gains = np.full(grid.n_points, float(T))
    codewords = raw / np.sqrt(T)
    _freeze(codewords, raw, gains)
    return SubspaceCode(codewords, raw, gains, grid, label or "antenna space")


def code_min_distance(code: SubspaceCode) -> tuple[float, tuple[int, int]]:
    return code.min_distance()


def welch_upper_bound(T: int, n_codewords: int) -> float:
    """Upper bound on d_min of any ``n_codewords`` lines in C^T (Welch)."""
    if n_codewords <= T:
        raise ValueError(f"Welch bound is vacuous for N_g={n_codewords} <= T={T}")
    return 1.0 - (n_codewords - T) / (T * (n_codewords - 1))


def c_of_T(T: int) -> float:
    return (1 - 1 / T - 1 / T ** 2) / (1 - 2 / T ** 2)


@dataclass(frozen=True)
class DistanceBounds:
    lower: float | None
    upper: float | None
    source: str

    def contains(self, value: float, slack: float = 1e-9) -> bool:
        lo_ok = self.lower is None or value >= self.lower - slack
        hi_ok = self.upper is None or value <= self.upper + slack
        return lo_ok and hi_ok


def theorem3_bounds(T: int, n_grid: int) -> DistanceBounds:
    """Sandwich ``[1 - 2/T, 1 - c(T)/T]`` for a Bose-Chowla selection, N_g = T^2 - 1."""
    if not golomb.is_prime(T):
        raise ValueError(f"T={T} must be prime")
    if n_grid != T * T - 1:
        raise ValueError(f"bounds hold for N_g = T^2 - 1 = {T * T - 1}, got {n_grid}")
    return DistanceBounds(1 - 2 / T, 1 - c_of_T(T) / T, "theorem3")


def theorem4_ula_bound() -> float:
    """Upper bound ``1 - 4/pi^2`` on d_min of uniform shifts, N_g = T^2 - 1."""
    return 1.0 - 4.0 / np.pi ** 2


def bc_beats_ula(T: int) -> bool:
    """Whether the Bose-Chowla lower bound exceeds the ULA upper bound."""
    return 1 - 2 / T > theorem4_ula_bound()


@dataclass(frozen=True)
class InvarianceReport:
    reference: float
    per_filter: tuple
    max_deviation: float
    passed: bool


def verify_filter_invariance(shifts, filters, grid: SpatialGrid, n_antennas: int,
                             tol: float = DIST_TOL) -> InvarianceReport:
    """d_min of conv beamspaces for several filters vs. the plain shift-set code."""
    shifts = shifts if isinstance(shifts, SensorSet) else SensorSet(tuple(shifts))
    ref = antenna_space_code(shifts, grid).min_distance()[0]
    values = []
    for filt in filters:
        filt = filt if isinstance(filt, Filter) else Filter(filt)
        W = conv_beamformer(filt, shifts, n_antennas)
        values.append(build_code(W, grid, allow_nulls=True).min_distance()[0])
    dev = max(abs(v - ref) for v in values) if values else 0.0
    return InvarianceReport(ref, tuple(values), dev, dev <= tol)


def format_report(record: dict) -> str:
    """``key=value`` lines; floats with 10 significant digits."""
    out = []
    for k, v in record.items():
        if isinstance(v, (bool, np.bool_)):
            v = "pass" if v else "fail"
        elif isinstance(v, (float, np.floating)):
            v = f"{v:.10g}"
        elif isinstance(v, (tuple, list)):
            v = ",".join(str(x) for x in v)
        out.append(f"{k}={v}")
    return "\n".join(out) + "\n"

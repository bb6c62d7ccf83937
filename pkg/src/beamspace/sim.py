"""Measurement synthesis, ML decoding, error bounds and Monte Carlo runs.

Measurements follow ``y = alpha * W a_U(f_k) + z`` with ``z`` circularly
symmetric complex Gaussian of variance ``sigma^2`` per entry.  SNR in dB is
``-20 log10(sigma)`` (unit-modulus ``alpha``).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .beamform import Beamformer, Filter
from .grid import SpatialGrid, steering_vector
from .subcode import SubspaceCode

# trials per decoding batch; fixed so results do not depend on worker count
BLOCK_SIZE = 500


@dataclass(frozen=True)
class ChannelRealization:
    alpha: complex
    f_index: int


@dataclass(frozen=True)
class Measurement:
    y: np.ndarray
    truth: ChannelRealization


def snr_to_sigma(snr_db: float) -> float:
    return 0.0 if math.isinf(snr_db) and snr_db > 0 else 10.0 ** (-snr_db / 20.0)


def complex_noise(rng: np.random.Generator, sigma: float, size) -> np.ndarray:
    """CN(0, sigma^2) samples: real and imaginary parts each N(0, sigma^2 / 2)."""
    re = rng.standard_normal(size)
    im = rng.standard_normal(size)
    return (sigma / math.sqrt(2.0)) * (re + 1j * im)


def synthesize(W: Beamformer, grid: SpatialGrid, truth: ChannelRealization, sigma: float,
               rng: np.random.Generator | None = None) -> Measurement:
    """One noisy beamspace snapshot for the given ground truth."""
    f = grid.points[truth.f_index]
    clean = truth.alpha * (W.matrix @ steering_vector(np.arange(W.n_antennas), f))
    if sigma == 0:
        return Measurement(clean, truth)
    if rng is None:
        raise ValueError("a random generator is required when sigma > 0")
    return Measurement(clean + complex_noise(rng, sigma, W.T), truth)


def ml_decode(y, code: SubspaceCode) -> int:
    """Grid index maximizing ``|y^H b_n|^2``; the smallest index wins ties."""
    y = y.y if isinstance(y, Measurement) else np.asarray(y)
    return int(ml_decode_batch(y[None, :], code)[0])


def ml_decode_batch(Y: np.ndarray, code: SubspaceCode) -> np.ndarray:
    """Decode each row of ``Y`` (one measurement per row)."""
    scores = np.abs(Y.conj() @ code.codewords) ** 2
    return np.argmax(scores, axis=1)


def theorem1_bound(gain: float, alpha_mag: float, sigma: float, d_min: float,
                   n_grid: int) -> float:
    """Union bound on the ML error probability, clipped to 1.

    ``N_g exp(-|alpha|^2 gain (1 - sqrt(1 - d_min))^2 / (4 sigma^2))``
    """
    if not (0.0 <= d_min <= 1.0):
        raise ValueError(f"d_min must lie in [0, 1], got {d_min}")
    margin = alpha_mag ** 2 * gain * (1.0 - math.sqrt(1.0 - d_min)) ** 2
    if sigma == 0:
        return 0.0 if margin > 0 else 1.0
    return min(1.0, n_grid * math.exp(-margin / (4.0 * sigma ** 2)))


def corollary_bound_cbs(filt: Filter, f_k: float, shifts_dmin: float | None, alpha_mag: float,
                        sigma: float, n_grid: int, T: int, bc_lower: bool = False) -> float:
    """Error bound for a convolutional beamspace, with gain ``|B(f_k; w)|^2 T``.

    With ``bc_lower`` the distance term uses the Bose-Chowla guarantee
    ``1 - d_min <= 2/T`` instead of ``shifts_dmin``.
    """
    gain = float(np.abs(filt.response(f_k)[0]) ** 2) * T
    d_min = 1.0 - 2.0 / T if bc_lower else shifts_dmin
    if d_min is None:
        raise ValueError("shifts_dmin is required unless bc_lower is set")
    return theorem1_bound(gain, alpha_mag, sigma, d_min, n_grid)


@dataclass(frozen=True)
class SimConfig:
    """Monte Carlo settings.

    ``region`` restricts the ground truth to grid points with
    ``lo <= f_n <= hi`` (``None`` means the whole grid).  ``d_min`` overrides
    the code's measured minimum distance in the bound.
    """

    code: SubspaceCode
    snr_db: tuple = tuple(range(-10, 11))
    n_trials: int = 10_000
    seed: int = 0
    region: tuple | None = None
    workers: int = 1
    d_min: float | None = None

    def __post_init__(self):
        if self.n_trials < 1:
            raise ValueError("n_trials must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        object.__setattr__(self, "snr_db", tuple(float(s) for s in np.atleast_1d(self.snr_db)))
        if len(self.candidates()) < 2:
            raise ValueError(f"region {self.region} contains fewer than 2 grid points")

    def candidates(self) -> np.ndarray:
        if self.region is None:
            return np.arange(self.code.size)
        lo, hi = self.region
        return self.code.grid.indices_in(lo, hi)


@dataclass(frozen=True)
class PePoint:
    snr_db: float
    empirical_pe: float
    bound_pe: float
    n_trials: int
    n_errors: int


@dataclass(frozen=True)
class PeCurve:
    points: tuple
    label: str = ""

    def to_dat(self) -> str:
        lines = ["SNR Pe Peub"]
        for p in self.points:
            lines.append(f"{p.snr_db:.10g} {p.empirical_pe:.10g} {p.bound_pe:.10g}")
        return "\n".join(lines) + "\n"

    @property
    def pe(self) -> np.ndarray:
        return np.array([p.empirical_pe for p in self.points])

    @property
    def bound(self) -> np.ndarray:
        return np.array([p.bound_pe for p in self.points])


def _run_block(code: SubspaceCode, cand: np.ndarray, sigma: float, seed: int, snr_index: int,
               start: int, stop: int):
    n = stop - start
    T = code.T
    truth = np.empty(n, dtype=np.int64)
    Y = np.empty((n, T), dtype=np.complex128)
    for i, trial in enumerate(range(start, stop)):
        rng = np.random.default_rng([seed, snr_index, trial])
        k = int(cand[rng.integers(cand.size)])
        alpha = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        y = alpha * code.raw[:, k]
        if sigma > 0:
            y = y + complex_noise(rng, sigma, T)
        truth[i] = k
        Y[i] = y
    decoded = ml_decode_batch(Y, code)
    return truth, decoded


def monte_carlo(cfg: SimConfig) -> PeCurve:
    """Empirical ML error rate and mean error bound at each SNR.

    Trial ``t`` at SNR index ``s`` uses its own stream seeded by
    ``(seed, s, t)`` and draws, in order: the grid index, the phase of
    ``alpha``, then the noise.  Trials are decoded in fixed blocks, so the
    result is identical for any number of workers.
    """
    code = cfg.code
    cand = cfg.candidates()
    d_min = code.min_distance()[0] if cfg.d_min is None else cfg.d_min
    blocks = [(s, min(s + BLOCK_SIZE, cfg.n_trials)) for s in range(0, cfg.n_trials, BLOCK_SIZE)]
    points = []
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        for s_idx, snr in enumerate(cfg.snr_db):
            sigma = snr_to_sigma(snr)
            results = list(pool.map(
                lambda b: _run_block(code, cand, sigma, cfg.seed, s_idx, *b), blocks))
            truth = np.concatenate([r[0] for r in results])
            decoded = np.concatenate([r[1] for r in results])
            n_err = int(np.count_nonzero(truth != decoded))
            bounds = np.array([theorem1_bound(code.gains[k], 1.0, sigma, d_min, code.size)
                               for k in truth])
            points.append(PePoint(snr, n_err / cfg.n_trials, float(bounds.mean()),
                                  cfg.n_trials, n_err))
    return PeCurve(tuple(points), code.label)


def binomial_margin(p: float, n: int, k: float = 3.0) -> float:
    return k * math.sqrt(max(p * (1.0 - p), 0.0) / n)

"""Binary linear codes, BPSK mapping and Hamming vs. subspace distance.

Codebooks are stored column-wise: a ``T x N`` array of bits whose column
``n`` is the codeword assigned to grid point ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

MAX_RM_M = 16


@dataclass(frozen=True)
class BinaryCodebook:
    """``T x N`` matrix over {0, 1}; columns are codewords.

    ``messages`` records the message integer of each column when the code
    was produced by :func:`reed_muller` (``None`` otherwise), and ``linear``
    marks a codebook that is a full linear code.
    """

    bits: np.ndarray
    linear: bool = False
    m: int | None = None
    r: int | None = None
    messages: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.uint8)
        if bits.ndim != 2:
            raise ValueError("codebook must be a 2-D array")
        if bits.shape[1] < 2:
            raise ValueError("codebook needs at least two codewords")
        if np.any(bits > 1):
            raise ValueError("codebook entries must be 0 or 1")
        if len(np.unique(bits, axis=1).T) != bits.shape[1]:
            raise ValueError("codebook has duplicate columns")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @property
    def length(self) -> int:
        return self.bits.shape[0]

    @property
    def size(self) -> int:
        return self.bits.shape[1]

    def subset(self, columns) -> "BinaryCodebook":
        columns = np.asarray(columns)
        msgs = None if self.messages is None else self.messages[columns]
        linear = self.linear and len(columns) == self.size
        return BinaryCodebook(self.bits[:, columns], linear, self.m, self.r, msgs)


@dataclass(frozen=True)
class HammingStats:
    d_min: int
    d_max: int

    @property
    def rho(self) -> float:
        return self.d_min / self.d_max


def _monomials(m: int, r: int) -> list[tuple[int, ...]]:
    """Variable subsets of size <= r, degree ascending, lexicographic within degree."""
    return [s for deg in range(r + 1) for s in combinations(range(m), deg)]


def rm_generator(m: int, r: int) -> np.ndarray:
    """Generator matrix of RM(m, r): rows are monomial evaluations.

    Evaluation point ``j`` assigns bit ``i`` of ``j`` to variable ``x_i``.
    Row 0 is the constant (all-ones) monomial.
    """
    if not (0 <= r <= m):
        raise ValueError(f"need 0 <= r <= m, got m={m}, r={r}")
    if m > MAX_RM_M:
        raise ValueError(f"m={m} exceeds supported maximum {MAX_RM_M}")
    j = np.arange(1 << m)
    xs = (j[None, :] >> np.arange(m)[:, None]) & 1
    rows = [np.prod(xs[list(s)], axis=0) if s else np.ones(1 << m, dtype=np.int64)
            for s in _monomials(m, r)]
    return np.array(rows, dtype=np.uint8)


def reed_muller(m: int, r: int) -> BinaryCodebook:
    """All ``2^k`` codewords of RM(m, r), column ``n`` encoding message integer ``n``.

    Message bit ``k-1-i`` (counting from the least significant bit) multiplies
    generator row ``i``, so the constant row is driven by the most significant
    bit.  The first half of the columns therefore never contains a codeword
    together with its complement.
    """
    G = rm_generator(m, r)
    k = G.shape[0]
    if k > 24:
        raise ValueError(f"RM({m},{r}) has 2^{k} codewords; too many to enumerate")
    msgs = np.arange(1 << k, dtype=np.int64)
    U = (msgs[None, :] >> np.arange(k - 1, -1, -1)[:, None]) & 1
    bits = (G.T.astype(np.int64) @ U) & 1
    return BinaryCodebook(bits.astype(np.uint8), linear=True, m=m, r=r, messages=msgs)


def rm_dimension(m: int, r: int) -> int:
    return sum(comb(m, i) for i in range(r + 1))


def pairwise_hamming(bits: np.ndarray) -> np.ndarray:
    """Matrix of Hamming distances between all columns."""
    b = np.asarray(bits, dtype=np.int64)
    ones = b.sum(axis=0)
    agree = b.T @ b
    return ones[:, None] + ones[None, :] - 2 * agree


def hamming_stats(code: BinaryCodebook, method: str = "auto") -> HammingStats:
    """Minimum and maximum Hamming distance between distinct codewords.

    For a full linear code the distances are the weights of the nonzero
    codewords (``method="weights"``); any codebook can be handled pairwise
    (``method="pairwise"``).
    """
    if method == "auto":
        method = "weights" if code.linear else "pairwise"
    if method == "weights":
        if not code.linear:
            raise ValueError("weight enumeration requires a full linear code")
        w = code.bits.sum(axis=0, dtype=np.int64)
        w = w[w > 0]
        return HammingStats(int(w.min()), int(w.max()))
    if method != "pairwise":
        raise ValueError(f"unknown method {method!r}")
    D = pairwise_hamming(code.bits)
    iu = np.triu_indices(code.size, k=1)
    d = D[iu]
    return HammingStats(int(d.min()), int(d.max()))


def to_bpsk(code) -> np.ndarray:
    """Map bits 0 -> +1, 1 -> -1."""
    bits = code.bits if isinstance(code, BinaryCodebook) else np.asarray(code)
    return 1 - 2 * bits.astype(np.int64)


def bpsk_inner_product_identity(u, v) -> int:
    """Return ``u^T v`` for BPSK words, checking ``u^T v == T - 2 d_Ham(u, v)``."""
    u, v = np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)
    if u.shape != v.shape:
        raise ValueError(f"length mismatch: {u.shape} vs {v.shape}")
    if not (np.all(np.abs(u) == 1) and np.all(np.abs(v) == 1)):
        raise ValueError("entries must be +1 or -1")
    ip = int(u @ v)
    d_ham = int(np.count_nonzero(u != v))
    if ip != u.size - 2 * d_ham:
        raise AssertionError("BPSK inner-product identity violated")
    return ip


def theorem2_min_subspace(stats: HammingStats, T: int) -> float:
    """Closed-form minimum subspace distance of a BPSK codebook.

    Parameters
    ----------
    stats : HammingStats
        Minimum and maximum Hamming distances of the binary codebook.
    T : int
        Codeword length.

    Returns
    -------
    float
        ``1 - max(1 - 2 d_min / T, 2 d_max / T - 1)^2``
    """
    if not (1 <= stats.d_min <= stats.d_max <= T):
        raise ValueError(f"Hamming stats {stats} inconsistent with T={T}")
    worst = max(1 - 2 * stats.d_min / T, 2 * stats.d_max / T - 1)
    return 1.0 - worst ** 2


def optimal_hamming_target(rho: float, T: int) -> tuple[float, float]:
    """Hamming target ``T / (1 + rho)`` and the best subspace distance for ratio ``rho``.

    The two terms of the closed form balance when ``d_min + d_max = T``.
    With ``d_min = rho d_max`` that pair is ``d_max = T / (1 + rho)`` and
    ``d_min = rho T / (1 + rho)``; the returned target is the former.
    """
    if not (0 < rho <= 1):
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    return T / (1 + rho), 1.0 - ((1 - rho) / (1 + rho)) ** 2


def bpsk_min_subspace(bits: np.ndarray) -> float:
    """Minimum subspace distance of BPSK columns via the integer Gram matrix."""
    B = to_bpsk(bits)
    T = B.shape[0]
    G = np.abs(B.T @ B)
    np.fill_diagonal(G, -1)
    worst = G.max() / T
    return float(1.0 - worst ** 2)


def prune_deterministic(code: BinaryCodebook, n: int) -> BinaryCodebook:
    """Keep the first ``n`` columns (message integers 0..n-1)."""
    if not (2 <= n <= code.size):
        raise ValueError(f"n must lie in [2, {code.size}], got {n}")
    return code.subset(np.arange(n))


def _abs_gram(code: BinaryCodebook) -> np.ndarray:
    B = to_bpsk(code)
    G = np.abs(B.T @ B)
    return G.astype(np.int8 if code.length < 128 else np.int64)


def _prefix_min_distance(absgram: np.ndarray, order: np.ndarray, T: int) -> np.ndarray:
    """Entry ``j`` is d_min of the first ``j + 1`` columns of ``order`` (entry 0 is nan)."""
    G = absgram[np.ix_(order, order)]
    # worst correlation of column j against all earlier columns
    G = np.tril(G, k=-1)
    worst = np.maximum.accumulate(G.max(axis=1))
    out = 1.0 - (worst / T) ** 2
    out[0] = np.nan
    return out


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for the stream identified by ``(seed, *key)``."""
    return np.random.default_rng([int(seed), *map(int, key)])


def lower_median(values) -> float:
    """Lower-middle order statistic (the plain median for odd counts)."""
    v = np.sort(np.asarray(values, dtype=float))
    return float(v[(len(v) - 1) // 2])


def prune_random_sweep(code: BinaryCodebook, trials: int, seed: int) -> np.ndarray:
    """Median ``d_min`` of random ``n``-column subsets, for all ``n`` at once.

    Trial ``t`` draws a uniform permutation from its own stream; its first
    ``n`` entries are a uniform ``n``-subset, so one permutation serves every
    ``n``.  Returns an array indexed by ``n`` (entries 0 and 1 are nan).
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    absgram = _abs_gram(code)
    T = code.length
    per_trial = np.empty((trials, code.size))
    for t in range(trials):
        order = trial_rng(seed, t).permutation(code.size)
        per_trial[t] = _prefix_min_distance(absgram, order, T)
    med = np.sort(per_trial, axis=0)[(trials - 1) // 2]
    return np.concatenate([[np.nan], med])


def prune_random(code: BinaryCodebook, n: int, trials: int, seed: int) -> float:
    """Median ``d_min`` over ``trials`` uniformly drawn ``n``-column subsets.

    Uses the same per-trial streams as :func:`prune_random_sweep`, so the two
    agree exactly.
    """
    if not (2 <= n <= code.size):
        raise ValueError(f"n must lie in [2, {code.size}], got {n}")
    if trials < 1:
        raise ValueError("need at least one trial")
    values = []
    for t in range(trials):
        cols = trial_rng(seed, t).permutation(code.size)[:n]
        values.append(bpsk_min_subspace(code.bits[:, cols]))
    return lower_median(values)


def deterministic_sweep(code: BinaryCodebook) -> np.ndarray:
    """``d_min`` of the first ``n`` columns for every ``n`` (index = n)."""
    absgram = _abs_gram(code)
    out = _prefix_min_distance(absgram, np.arange(code.size), code.length)
    return np.concatenate([[np.nan], out])

import math

import numpy as np
import pytest

from beamspace.beamform import Filter, antenna_selection_beamformer, conv_beamformer
from beamspace.golomb import bose_chowla
from beamspace.grid import SpatialGrid, subspace_distance
from beamspace.sim import (
    ChannelRealization, SimConfig, binomial_margin, complex_noise, corollary_bound_cbs,
    ml_decode, monte_carlo, snr_to_sigma, synthesize, theorem1_bound,
)
from beamspace.subcode import Beamformer, build_code

GRID = SpatialGrid(48)
OMEGA = bose_chowla(7).marks


@pytest.fixture(scope="module")
def bc_setup():
    W = antenna_selection_beamformer(OMEGA, 48)
    return W, build_code(W, GRID, label="bc7")


def test_snr_to_sigma():
    assert snr_to_sigma(0) == 1.0
    assert snr_to_sigma(20) == pytest.approx(0.1)
    assert snr_to_sigma(-6) == pytest.approx(10 ** 0.3)
    assert snr_to_sigma(math.inf) == 0.0


def test_noiseless_synthesis(bc_setup):
    W, code = bc_setup
    alpha = np.exp(0.7j)
    m = synthesize(W, GRID, ChannelRealization(alpha, 11), 0.0)
    assert np.allclose(m.y, alpha * code.raw[:, 11])
    with pytest.raises(ValueError):
        synthesize(W, GRID, ChannelRealization(alpha, 11), 0.5)


def test_identity_at_broadside(rng):
    W = Beamformer(np.eye(4), "antenna-selection")
    grid = SpatialGrid(8)
    m = synthesize(W, grid, ChannelRealization(1.0, 4), 0.3, rng)  # f_4 = 0
    z = m.y - 1.0
    assert m.y.shape == (4,)
    assert np.all(np.abs(z) > 0)


def test_noise_variance(rng):
    for sigma in (0.3, 1.0, 2.5):
        z = complex_noise(rng, sigma, 100_000)
        assert np.mean(np.abs(z) ** 2) == pytest.approx(sigma ** 2, rel=0.02)
        assert np.var(z.real) == pytest.approx(sigma ** 2 / 2, rel=0.02)
        assert abs(np.mean(z.real * z.imag)) < 0.02 * sigma ** 2


def test_noiseless_exhaustive_recovery(bc_setup):
    _, code = bc_setup
    for k in range(GRID.n_points):
        assert ml_decode(np.exp(1j * k) * code.raw[:, k], code) == k


def test_noiseless_recovery_cbs():
    grid = SpatialGrid(1024)
    shifts = (*bose_chowla(31).marks, max(bose_chowla(31).marks) + 1)
    for P in (1, 3):
        code = build_code(conv_beamformer(Filter.boxcar(P), shifts, 1024), grid)
        ks = np.arange(0, 1024, 7)
        from beamspace.sim import ml_decode_batch
        assert np.array_equal(ml_decode_batch(code.raw[:, ks].T, code), ks)


def test_orthogonal_measurement_picks_index():
    grid = SpatialGrid(4)
    W = Beamformer(np.eye(4), "antenna-selection")
    code = build_code(W, grid)
    # columns of the 4-point ULA code on this grid are mutually orthogonal
    assert ml_decode(code.codewords[:, 3], code) == 3


def test_ml_equals_min_distance(bc_setup, rng):
    _, code = bc_setup
    for _ in range(100):
        k = int(rng.integers(GRID.n_points))
        y = code.raw[:, k] + complex_noise(rng, 1.0, code.T)
        d = [subspace_distance(y, code.codewords[:, n]) for n in range(code.size)]
        assert ml_decode(y, code) == int(np.argmin(d))


def test_alpha_invariance(bc_setup, rng):
    _, code = bc_setup
    for _ in range(50):
        y = code.raw[:, int(rng.integers(48))] + complex_noise(rng, 2.0, code.T)
        phase = np.exp(2j * np.pi * rng.uniform())
        assert ml_decode(phase * y, code) == ml_decode(y, code)


def test_theorem1_examples():
    assert theorem1_bound(32, 1, 1.0, 0.0, 1024) == 1.0
    sigma = 0.2
    assert theorem1_bound(32, 1, sigma, 1.0, 1024) == pytest.approx(
        1024 * math.exp(-32 / sigma ** 2 / 4))
    raw = 1024 * math.exp(-8 * (1 - math.sqrt(0.13)) ** 2)
    assert raw > 1
    assert theorem1_bound(32, 1, 1.0, 0.87, 1024) == 1.0
    assert theorem1_bound(32, 1, 0.0, 0.87, 1024) == 0.0
    with pytest.raises(ValueError):
        theorem1_bound(32, 1, 1.0, 1.5, 1024)


def test_corollary_examples():
    T, sigma = 8, 0.15
    flat = corollary_bound_cbs(Filter([1.0]), 0.4, 0.6, 1, sigma, 64, T)
    assert flat == pytest.approx(theorem1_bound(T, 1, sigma, 0.6, 64))
    box = Filter.boxcar(3)
    assert corollary_bound_cbs(box, 0.0, 0.6, 1, sigma, 64, T) == pytest.approx(
        theorem1_bound(3 * T, 1, sigma, 0.6, 64))
    # near the first null at f = 2/3 the gain falls below T
    assert corollary_bound_cbs(box, 0.6, 0.6, 1, sigma, 64, T) > flat
    bc = corollary_bound_cbs(box, 0.0, None, 1, sigma, 64, T, bc_lower=True)
    assert bc == pytest.approx(theorem1_bound(3 * T, 1, sigma, 1 - 2 / T, 64))
    with pytest.raises(ValueError):
        corollary_bound_cbs(box, 0.0, None, 1, sigma, 64, T)


def test_noiseless_monte_carlo(bc_setup):
    _, code = bc_setup
    curve = monte_carlo(SimConfig(code, snr_db=[math.inf], n_trials=300))
    assert curve.points[0].n_errors == 0 and curve.points[0].bound_pe == 0.0


def test_reproducible_across_workers(bc_setup):
    _, code = bc_setup
    a = monte_carlo(SimConfig(code, snr_db=[-6, 0], n_trials=1200, seed=4, workers=1))
    b = monte_carlo(SimConfig(code, snr_db=[-6, 0], n_trials=1200, seed=4, workers=8))
    assert a.to_dat() == b.to_dat()
    c = monte_carlo(SimConfig(code, snr_db=[-6, 0], n_trials=1200, seed=5))
    assert c.to_dat() != a.to_dat()


def test_bound_dominance_and_monotonicity(bc_setup):
    _, code = bc_setup
    M = 2000
    curve = monte_carlo(SimConfig(code, snr_db=range(-10, 11, 2), n_trials=M, seed=1))
    for p in curve.points:
        assert p.empirical_pe == p.n_errors / p.n_trials
        assert 0 <= p.bound_pe <= 1
        assert p.empirical_pe <= p.bound_pe + binomial_margin(p.bound_pe, M)
    pe = curve.pe
    for i in range(len(pe) - 3):  # 6 dB apart
        assert pe[i + 3] <= pe[i] + binomial_margin(pe[i], M)


def test_region_restriction(bc_setup):
    _, code = bc_setup
    cfg = SimConfig(code, snr_db=[0], n_trials=10, region=(-0.2, 0.2))
    assert np.all(np.abs(GRID.points[cfg.candidates()]) <= 0.2)
    with pytest.raises(ValueError):
        SimConfig(code, region=(0.301, 0.31))
    with pytest.raises(ValueError):
        SimConfig(code, n_trials=0)


def test_pe_curve_dat(bc_setup):
    _, code = bc_setup
    text = monte_carlo(SimConfig(code, snr_db=[0, 5], n_trials=20)).to_dat()
    lines = text.splitlines()
    assert lines[0] == "SNR Pe Peub" and len(lines) == 3
    assert [float(x) for x in lines[1].split()][0] == 0

import numpy as np

from beamspace.beamform import (
    Filter, antenna_selection_beamformer, beampattern, bpsk_beamformer, check_isotropy,
    conv_beamformer,
)
from beamspace.chancode import prune_deterministic, reed_muller, to_bpsk
from beamspace.golomb import bose_chowla, extend_ruler
from beamspace.grid import SensorSet, SpatialGrid
from beamspace.subcode import (
    antenna_space_code, build_code, theorem3_bounds, theorem4_ula_bound,
    verify_filter_invariance, welch_upper_bound,
)

# ### Three ways to get T = 32 measurements from 1024 antennas
#
# grid of N_g = 1024 spatial frequencies in [-1, 1)

grid = SpatialGrid(1024)
bc = extend_ruler(bose_chowla(31), 1)

W_rm = bpsk_beamformer(to_bpsk(prune_deterministic(reed_muller(5, 2), 1024)), grid)
W_bc = antenna_selection_beamformer(bc, 1024)
W_ula = antenna_selection_beamformer(SensorSet.ula(32), 1024)

for name, W in [("RM BPSK", W_rm), ("Bose-Chowla", W_bc), ("ULA", W_ula)]:
    code = build_code(W, grid)
    d, pair = code.min_distance()
    iso = check_isotropy(W, grid)
    print(f"{name:12s} d_min={d:.5f} worst pair={pair} isotropic={iso.isotropic}")

print("Welch bound for 1024 lines in C^32:", round(welch_upper_bound(32, 1024), 5))

# The ULA's worst pair is two neighbouring grid points: its steering vectors
# barely change between f_n and f_{n+1}.

# ### Distance bounds at N_g = T^2 - 1

print(" T  lower   BC      upper   ULA     ULA bound")
for T in (5, 7, 11, 13, 31):
    g = SpatialGrid(T * T - 1)
    b = theorem3_bounds(T, g.n_points)
    d_bc = antenna_space_code(SensorSet(bose_chowla(T).marks), g).min_distance()[0]
    d_ula = antenna_space_code(SensorSet.ula(T), g).min_distance()[0]
    print(f"{T:2d}  {b.lower:.4f}  {d_bc:.4f}  {b.upper:.4f}  {d_ula:.4f}  {theorem4_ula_bound():.4f}")

# ### Convolutional beamspace
#
# Each row is the same filter shifted to one Bose-Chowla position, so the
# output is B(f) a_S(f): the filter only scales the gain, the spans stay.

rng = np.random.default_rng(1)
filters = [Filter.boxcar(P) for P in (1, 2, 3)]
filters += [Filter.normalized(rng.standard_normal(4) + 1j * rng.standard_normal(4))]
rep = verify_filter_invariance(bc, filters, grid, 1024)
print("d_min per filter:", np.round(rep.per_filter, 6), "max deviation", rep.max_deviation)

for P in (1, 2, 3):
    W = conv_beamformer(Filter.boxcar(P), bc, 1024)
    bp = beampattern(Filter.boxcar(P), grid)
    inside = np.abs(grid.points) <= 0.2
    print(f"P={P}: gain in [-0.2, 0.2] from {bp[inside].min():.3f} to {bp[inside].max():.3f}, "
          f"isotropic={check_isotropy(W, grid).isotropic}")

# P=2 has an exact zero at f = -1, which sits on the grid.
print("P=2 response at f=-1:", beampattern(Filter.boxcar(2), grid)[0])

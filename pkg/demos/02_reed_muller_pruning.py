import numpy as np

from beamspace.chancode import (
    HammingStats, deterministic_sweep, hamming_stats, optimal_hamming_target, prune_deterministic,
    prune_random_sweep, reed_muller, theorem2_min_subspace, to_bpsk, bpsk_min_subspace,
)
from beamspace.subcode import welch_upper_bound

# ### From Hamming to subspace distance
#
# With BPSK words u, v of length T, u^T v = T - 2 d_Ham(u, v). The
# subspace distance then only depends on the smallest and largest Hamming
# distance in the codebook.

T = 32
for d_min, d_max in [(16, 16), (8, 24), (8, 20), (8, 32)]:
    print(d_min, d_max, theorem2_min_subspace(HammingStats(d_min, d_max), T))

# For a fixed ratio rho = d_min / d_max the best distance is reached when
# d_min + d_max = T. The first number printed is the d_max of that pair.
for rho in (1.0, 0.5, 0.25):
    print(rho, optimal_hamming_target(rho, T))

# ### Complements kill the distance
#
# A linear code containing the all-ones word holds every word together with
# its complement, and BPSK maps a complement to the negated vector (same line).

rm = reed_muller(4, 2)
print("RM(4,2):", rm.length, "x", rm.size, hamming_stats(rm))
print("subspace d_min of the full code:", bpsk_min_subspace(rm.bits))

# Keeping the first half of the messages drops every complement pair.
half = prune_deterministic(rm, rm.size // 2)
print("first half:", hamming_stats(half), bpsk_min_subspace(half.bits))

# ### Pruning sweeps
#
# d_min as codewords are added in message order, vs. the median over random
# orderings. Few trials here to keep it quick.

det = deterministic_sweep(rm)
med = prune_random_sweep(rm, trials=51, seed=0)
print(" N     det    median   welch")
for n in (17, 32, 64, 128, 256, 512, 1024, 1025, 2048):
    print(f"{n:5d} {det[n]:.4f} {med[n]:.4f} {welch_upper_bound(16, n):.4f}")

first_zero = int(np.argmax(med[2:] == 0)) + 2
print("random median reaches 0 at N =", first_zero)

# ### The 1024-column RM(5,2) codebook

rm52 = prune_deterministic(reed_muller(5, 2), 1024)
st = hamming_stats(rm52)
print(st, "closed form", theorem2_min_subspace(st, 32), "direct", bpsk_min_subspace(rm52.bits))
for n in (0, 1, 2, 513):
    print(n, "".join("+" if b > 0 else "-" for b in to_bpsk(rm52)[:, n]))

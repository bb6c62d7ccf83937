import numpy as np

from beamspace.golomb import (
    QuadraticExtension, bose_chowla, extend_ruler, find_irreducible_quadratic,
    find_primitive_element, is_primitive, sidon_modular,
)

# ### Building GF(p^2)
#
# A quadratic extension needs a monic quadratic with no root mod p. The search
# walks (c1, c0) in lexicographic order and keeps the first one that works.

for p in (2, 3, 5, 7):
    c1, c0 = find_irreducible_quadratic(p)
    print(f"p={p}: x^2 + {c1}x + {c0}")

F = QuadraticExtension(3)
g = find_primitive_element(3)
print("primitive element of GF(9):", g)
print("its powers:", [str(g ** i) for i in range(1, 9)])

# ### Bose-Chowla marks
#
# Mark i is kept when g^i - g has no x term. The resulting p marks have
# all pairwise differences distinct mod p^2 - 1.

for p in (3, 5, 7, 11):
    r = bose_chowla(p)
    print(p, r.marks, "Sidon mod", r.modulus, sidon_modular(r.marks, r.modulus))

# Any primitive element gives a valid set, they just differ. 4+x gives
# (1, 3, 16, 17, 20).
F5 = QuadraticExtension(5)
for e in [e for e in F5.elements() if is_primitive(e)][:4]:
    print(e, bose_chowla(5, e).marks)

# ### A 32-element sparse array
#
# The 31 marks for p=31 plus one extra sensor right after the last one.

S = extend_ruler(bose_chowla(31), 1)
print(len(S), "positions, aperture", S.aperture)
diffs = np.subtract.outer(S.array, S.array)
lags = np.abs(diffs[np.triu_indices(len(S), 1)])
# the appended sensor repeats a handful of lags; the first 31 do not
print("pairs:", lags.size, "distinct lags:", np.unique(lags).size)

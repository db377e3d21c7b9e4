"""
The invariant-subspace lattice of a compressed shift
====================================================

Every invariant subspace of S(theta) is a divisor subspace
phi H^2 (-) theta H^2, so the lattice is the (reversed) divisor lattice
of theta.  Meets correspond to least common multiples, joins to greatest
common divisors, and the whole lattice is distributive.  A brute-force
oracle over eigenvector subsets confirms the enumeration when the zeros
are distinct.
"""

import numpy as np

from c0lat import (
    BlaschkeProduct,
    FiniteLattice,
    brute_force_lat,
    compressed_shift,
    enumerate_lattice,
    equals,
    gcd,
    is_invariant,
    join,
    lattice_is_distributive,
    lattice_is_modular,
    lcm,
    meet,
)
from c0lat.modelspace import divisor_subspace

theta = BlaschkeProduct(((0.3 + 0j, 1), (-0.2 + 0.4j, 1), (0.1 - 0.5j, 1)))
entries = enumerate_lattice(theta)
print("divisors -> subspace dimensions")
for phi, s in entries:
    print(f"  {str(phi):34s} dim {s.dim}")

# every entry is invariant for the shift
s_matrix = compressed_shift(theta).matrix
worst = max(is_invariant(s_matrix, s).residual for _, s in entries)
print("worst invariance residual:", worst)

# meet/join mirror lcm/gcd of the divisors
phi1, phi2 = entries[1][0], entries[2][0]
m1, m2 = entries[1][1], entries[2][1]
print("meet == lcm-subspace:", equals(meet(m1, m2), divisor_subspace(theta, lcm(phi1, phi2))))
print("join == gcd-subspace:", equals(join(m1, m2), divisor_subspace(theta, gcd(phi1, phi2))))

# the brute-force oracle sees the same eight subspaces
oracle = brute_force_lat(s_matrix)
matched = sum(
    any(cand.dim == s.dim and equals(s, cand) for cand in oracle) for _, s in entries
)
print(f"oracle match: {matched}/{len(entries)}")

# as an abstract lattice: modular and distributive
lat, _ = FiniteLattice.from_subspaces([s for _, s in entries])
print("modular:", lattice_is_modular(lat).passed)
print("distributive:", lattice_is_distributive(lat).passed)

# contrast: the pentagon is not modular, and the checker says why
verdict = lattice_is_modular(FiniteLattice.pentagon())
print("pentagon modular:", verdict.passed, " witness:", verdict.witness)

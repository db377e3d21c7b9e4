"""
Duality between a lattice map and its adjoint
=============================================

For an intertwiner X of T1 and T2, the map X_* sends invariant subspaces
of T1 to invariant subspaces of T2.  Surjectivity of X_* pairs with
injectivity of the adjoint map (X*)_*, and sampled evidence reproduces
that duality: both sit at 1.0 for a similarity, and both drop below 1.0
for a deliberately rank-deficient embedding.
"""

import numpy as np
import scipy.linalg

from c0lat import check_lattice_isomorphism
from c0lat.sampling import certifiable_c0, random_contraction, random_well_conditioned

rng = np.random.default_rng(5)

# full rank: a similarity between 4x4 matrices
t1 = certifiable_c0(rng, 4)
q = random_well_conditioned(rng, 4, cond_cap=6.0)
t2 = q @ t1 @ np.linalg.inv(q)
full = check_lattice_isomorphism(q / np.linalg.norm(q, 2), t1, t2, samples=12, seed=1)
print("similarity:")
print("  X_* surjective evidence:   ", full.surjective_evidence)
print("  (X*)_* injective evidence: ", full.adjoint_injective_evidence)

# rank deficient: embed A into A (+) B; the range misses a whole block
a = random_contraction(rng, 3, 0.7)
b = random_contraction(rng, 2, 0.7)
embed = np.vstack([np.eye(3), np.zeros((2, 3))]).astype(complex)
deficient = check_lattice_isomorphism(
    embed, a, scipy.linalg.block_diag(a, b).astype(complex), samples=12, seed=2
)
print("embedding (rank 3 of 5):")
print("  X_* surjective evidence:   ", deficient.surjective_evidence)
print("  (X*)_* injective evidence: ", deficient.adjoint_injective_evidence)
print("  X_* injective evidence:    ", deficient.injective_evidence)
print("  (X*)_* surjective evidence:", deficient.adjoint_surjective_evidence)

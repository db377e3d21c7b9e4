"""
Replaying the modularity arguments numerically
==============================================

Two randomized verifiers rebuild proof objects on sampled invariant
subspaces: one checks the modular law together with the sum map
X(a2, a3) = a2 + a3 from the external direct sum M2 (+) M3 onto the join,
the other pulls triples back through a quasiaffinity Y and confirms that
modularity transfers.
"""

import numpy as np

from c0lat import check_lattice_isomorphism, theorem97_verifier, theorem_x3_verifier
from c0lat.sampling import certifiable_c0, random_well_conditioned

rng = np.random.default_rng(42)
t = certifiable_c0(rng, 6, structured=True, derogatory=False)

report = theorem97_verifier(t, triples=60, seed=7)
print("modular law + sum-map objects:")
print("  trials:", report.trials, " passed:", report.passed, " max residual:", report.max_residual)

# transfer along a similarity (the simplest onto quasiaffinity)
q = random_well_conditioned(rng, 6, cond_cap=8.0)
t2 = q @ t @ np.linalg.inv(q)
y = q / np.linalg.norm(q, 2)
transfer = theorem_x3_verifier(t, t2, y, samples=40, seed=11)
print("modularity transfer along Y:")
print("  trials:", transfer.trials, " passed:", transfer.passed, " max residual:", transfer.max_residual)

# the lattice-map evidence behind the transfer: Y_* is a bijection here
evidence = check_lattice_isomorphism(y, t, t2, samples=12, seed=3)
print("lattice-map evidence (full-rank Y):")
print("  surjective:", evidence.surjective_evidence, " injective:", evidence.injective_evidence)
print("  adjoint surjective:", evidence.adjoint_surjective_evidence,
      " adjoint injective:", evidence.adjoint_injective_evidence)

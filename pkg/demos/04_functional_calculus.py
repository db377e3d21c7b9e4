"""
Functional calculus and minimal functions
=========================================

A square contraction whose spectrum lies inside the open disk is
annihilated by a finite Blaschke product; the smallest one (the minimal
function) plays the role the minimal polynomial plays in linear algebra,
with Jordan block sizes showing up as zero multiplicities.
"""

import numpy as np

from c0lat import apply_blaschke, classify_c0, jordan_model, minimal_function, radial_validate
from c0lat.blaschke import elementary, monomial, multiply
from c0lat.sampling import certifiable_c0

# diag(0.5, 0): annihilated by z * b_0.5 and by nothing smaller
t = np.diag([0.5, 0.0]).astype(complex)
cert = classify_c0(t)
print("is C0:", cert.is_c0)
print("minimal function:", cert.minimal_function)
print("annihilation residual:", cert.annihilation_residual)

# repeated eigenvalues without a Jordan chain stay degree one
print("diag(0.5, 0.5) ->", minimal_function(np.diag([0.5, 0.5]).astype(complex)))

# a Jordan chain raises the multiplicity instead
chain = np.zeros((3, 3), dtype=complex)
chain[1, 0] = 1.0
print("chain of length 2 + singleton ->", minimal_function(chain))

# the calculus is multiplicative and contractive
rng = np.random.default_rng(0)
t = certifiable_c0(rng, 5)
b1, b2 = multiply(monomial(1), elementary(0.4)), elementary(-0.3 + 0.1j)
lhs = apply_blaschke(t, multiply(b1, b2))
rhs = apply_blaschke(t, b1) @ apply_blaschke(t, b2)
print("multiplicativity residual:", np.linalg.norm(lhs - rhs, 2))
print("||b1(T)|| =", np.linalg.norm(apply_blaschke(t, b1), 2), "(<= 1)")

# the radial definition u(T) = lim u(rT) is visible numerically
print("radial residuals at r = 0.9, 0.99, 0.999:", radial_validate(t, b1, (0.9, 0.99, 0.999)))

# Jordan models: block sizes per eigenvalue become a divisibility chain
model = jordan_model(t)
print("Jordan model:", [str(th) for th in model.thetas])

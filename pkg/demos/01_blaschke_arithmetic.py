"""
Finite Blaschke products as an arithmetic
=========================================

A finite Blaschke product is determined by its zeros inside the unit disk
(with multiplicity) and a unimodular constant.  Divisibility, gcd and lcm
are multiset operations on the zeros, which makes the set of inner
divisors a lattice.  This script walks through the basic operations.
"""

import numpy as np

from c0lat import divide, divides, divisors, elementary, equiv, evaluate, gcd, lcm, monomial, multiply

# Two products sharing a zero: z^2 and z * b_{0.5}
z2 = monomial(2)
zb = multiply(monomial(1), elementary(0.5))
print("B1 =", z2)
print("B2 =", zb)

# gcd is the pointwise minimum of multiplicities, lcm the maximum
print("gcd:", gcd(z2, zb))
print("lcm:", lcm(z2, zb))
print("degree formula:", gcd(z2, zb).degree + lcm(z2, zb).degree, "==", z2.degree + zb.degree)

# quotients exist exactly when the divisor's zeros are contained
print("b_0.5 divides B2:", divides(elementary(0.5), zb))
print("B2 / b_0.5 =", divide(zb, elementary(0.5)))

# the full divisor lattice of z^2 * b_0.5
prod = multiply(z2, elementary(0.5))
print("divisors of", prod)
for d in divisors(prod):
    print("   ", d)

# boundary values have modulus one: that is what 'inner' means
circle = np.exp(2j * np.pi * np.linspace(0, 1, 8, endpoint=False))
print("|B2| on the circle:", np.round(np.abs(evaluate(zb, circle)), 12))

# equivalence ignores the unimodular constant
rotated = multiply(zb, monomial(0, constant=np.exp(0.7j)))
print("equivalent up to constant:", equiv(zb, rotated))

"""Model spaces, the rational basis, and the compressed shift.

The independent oracle for the uniform-grid inner product is adaptive
quadrature (scipy.integrate.quad) of f(e^it) conj(g(e^it)) / 2pi on
[0, 2pi]; it shares no code with the grid path.
"""

import numpy as np
import pytest
from scipy.integrate import quad

from c0lat import blaschke
from c0lat.blaschke import BlaschkeProduct, NotADivisorError, elementary, monomial, multiply
from c0lat.calculus import apply_blaschke
from c0lat.modelspace import (
    LatticeCapError,
    ModelOperator,
    ModelSpace,
    compressed_shift,
    divisor_subspace,
    enumerate_lattice,
)
from c0lat.sampling import random_blaschke, random_divisor, random_unit_disk_points
from c0lat.subspace import Subspace, contains, distance, equals, is_invariant, join, meet, op_norm


def quad_inner(f, g) -> complex:
    """Adaptive-quadrature circle inner product: the oracle."""

    def integrand_re(t):
        z = np.exp(1j * t)
        return (f(z) * np.conj(g(z))).real

    def integrand_im(t):
        z = np.exp(1j * t)
        return (f(z) * np.conj(g(z))).imag

    re, _ = quad(integrand_re, 0.0, 2 * np.pi, limit=200)
    im, _ = quad(integrand_im, 0.0, 2 * np.pi, limit=200)
    return complex(re, im) / (2 * np.pi)


THETA_MIXED = BlaschkeProduct(((0.5 + 0j, 2), (-0.3 + 0.2j, 1), (0.1 - 0.6j, 1)))


# --- basis ----------------------------------------------------------------------

def test_monomial_basis():
    space = ModelSpace(monomial(2))
    assert space.basis_eval(1, 0.3 + 0.2j) == pytest.approx(1.0)
    assert space.basis_eval(2, 0.3 + 0.2j) == pytest.approx(0.3 + 0.2j)


def test_basis_index_and_domain_checks():
    space = ModelSpace(monomial(2))
    with pytest.raises(IndexError):
        space.basis_eval(0, 0.1)
    with pytest.raises(IndexError):
        space.basis_eval(3, 0.1)
    with pytest.raises(ValueError):
        space.basis_eval(1, 1.5)


def test_gram_matrix_identity_against_quad_oracle():
    space = ModelSpace(THETA_MIXED)
    d = space.dim
    for j in range(1, d + 1):
        for k in range(j, d + 1):
            expected = 1.0 if j == k else 0.0
            oracle = quad_inner(
                lambda z, j=j: space.basis_eval(j, z),
                lambda z, k=k: space.basis_eval(k, z),
            )
            assert oracle == pytest.approx(expected, abs=1e-9)
            grid = space.inner_product(
                lambda z, j=j: space.basis_eval(j, z),
                lambda z, k=k: space.basis_eval(k, z),
            )
            assert grid == pytest.approx(expected, abs=1e-9)


def test_inner_product_examples():
    space = ModelSpace(monomial(2))
    assert space.inner_product([1, 0], [1, 0]) == pytest.approx(1.0, abs=1e-10)
    assert space.inner_product([1, 0], [0, 1]) == pytest.approx(0.0, abs=1e-10)
    # S e_1 = e_2 for theta = z^2
    shifted = space.inner_product(lambda z: z * space.basis_eval(1, z), [0, 1])
    assert shifted == pytest.approx(1.0, abs=1e-10)


def test_quadrature_grid_validation():
    with pytest.raises(ValueError):
        ModelSpace(monomial(2), quadrature_points=6)  # not a power of two
    with pytest.raises(ValueError):
        ModelSpace(monomial(2), quadrature_points=4)  # below 4d
    space = ModelSpace(monomial(2), quadrature_points=16)
    assert space.quadrature_points == 16
    with pytest.raises(ValueError):
        ModelSpace(BlaschkeProduct(()))  # constant theta has no model space


# --- compressed shift --------------------------------------------------------------

def test_shift_monomial_case():
    op = compressed_shift(monomial(2))
    expected = np.array([[0, 0], [1, 0]], dtype=complex)
    assert np.max(np.abs(op.matrix - expected)) < 1e-12


def test_shift_degree_one_cases():
    assert np.max(np.abs(compressed_shift(monomial(1)).matrix)) < 1e-12
    a = 0.5 + 0.0j
    op = compressed_shift(elementary(a))
    assert op.matrix[0, 0] == pytest.approx(a, abs=1e-12)
    # oracle: <z e_1, e_1> by adaptive quadrature
    space = ModelSpace(elementary(a))
    oracle = quad_inner(lambda z: z * space.basis_eval(1, z), lambda z: space.basis_eval(1, z))
    assert oracle == pytest.approx(a, abs=1e-9)


def test_shift_is_lower_triangular_with_zero_diagonal_order():
    op = compressed_shift(THETA_MIXED)
    space = ModelSpace(THETA_MIXED)
    assert np.max(np.abs(np.triu(op.matrix, 1))) < 1e-10
    assert np.max(np.abs(np.diag(op.matrix) - np.array(space.zero_order))) < 1e-10


def test_shift_norm_is_contractive():
    op = compressed_shift(THETA_MIXED)
    assert op_norm(op.matrix) <= 1.0 + 1e-9


def test_degree_zero_rejected():
    with pytest.raises(ValueError):
        compressed_shift(BlaschkeProduct((), np.exp(0.1j)))


def test_model_operator_invariant_rejects_wrong_matrix():
    with pytest.raises(ValueError):
        ModelOperator(monomial(2), np.diag([0.5, 0.5]).astype(complex))


def test_model_operator_json_round_trip():
    op = compressed_shift(THETA_MIXED)
    back = ModelOperator.from_json_dict(op.to_json_dict())
    assert back.theta == op.theta
    assert np.max(np.abs(back.matrix - op.matrix)) < 1e-15


# --- divisor subspaces ---------------------------------------------------------------

def test_divisor_subspace_monomial_example():
    s = divisor_subspace(monomial(2), monomial(1))
    assert s.dim == 1
    e2 = Subspace(2, np.array([[0.0], [1.0]], dtype=complex))
    assert equals(s, e2)


def test_divisor_subspace_extremes():
    theta = THETA_MIXED
    assert divisor_subspace(theta, BlaschkeProduct(())).dim == theta.degree
    assert divisor_subspace(theta, theta).dim == 0


def test_divisor_subspace_dimension():
    theta = THETA_MIXED
    phi = multiply(monomial(0), elementary(0.5))
    s = divisor_subspace(theta, phi)
    assert s.dim == theta.degree - phi.degree


def test_divisor_subspace_requires_divisor():
    with pytest.raises(NotADivisorError):
        divisor_subspace(monomial(2), elementary(0.5))


# --- lattice enumeration ----------------------------------------------------------------

def test_enumerate_monomial_square():
    entries = enumerate_lattice(monomial(2))
    assert len(entries) == 3
    assert sorted(s.dim for _, s in entries) == [0, 1, 2]


def test_enumerate_three_distinct_zeros():
    theta = BlaschkeProduct(((0.3 + 0j, 1), (-0.2 + 0.4j, 1), (0.1 - 0.5j, 1)))
    entries = enumerate_lattice(theta)
    assert len(entries) == 8
    for phi_a, s_a in entries:
        for phi_b, s_b in entries:
            assert equals(s_a, s_b) == blaschke.equiv(phi_a, phi_b)


def test_enumerated_subspaces_are_invariant():
    theta = THETA_MIXED
    s_matrix = compressed_shift(theta).matrix
    for _, s in enumerate_lattice(theta):
        verdict = is_invariant(s_matrix, s)
        assert verdict.residual <= 1e-8


def test_enumerate_cap():
    points = random_unit_disk_points(np.random.default_rng(0), 13, radius=0.6, min_separation=0.01)
    theta = BlaschkeProduct(tuple((z, 1) for z in points))
    with pytest.raises(LatticeCapError):
        enumerate_lattice(theta)


# --- meet/join formulas and inclusion reversal ----------------------------------------------

def test_meet_join_divisor_formulas():
    rng = np.random.default_rng(11)
    for _ in range(25):
        theta = random_blaschke(rng, 5, radius=0.85)
        space = ModelSpace(theta)
        phi1, phi2 = random_divisor(rng, theta), random_divisor(rng, theta)
        m1, m2 = space.divisor_subspace(phi1), space.divisor_subspace(phi2)
        assert distance(meet(m1, m2), space.divisor_subspace(blaschke.lcm(phi1, phi2))) <= 1e-7
        assert distance(join(m1, m2), space.divisor_subspace(blaschke.gcd(phi1, phi2))) <= 1e-7


def test_inclusion_reverses_divisibility():
    rng = np.random.default_rng(12)
    for _ in range(25):
        theta = random_blaschke(rng, 5, radius=0.85)
        space = ModelSpace(theta)
        phi1, phi2 = random_divisor(rng, theta), random_divisor(rng, theta)
        m1, m2 = space.divisor_subspace(phi1), space.divisor_subspace(phi2)
        assert contains(m2, m1) == blaschke.divides(phi2, phi1)
        assert contains(m1, m2) == blaschke.divides(phi1, phi2)


# --- the symbol annihilates its shift --------------------------------------------------------

def test_symbol_annihilates_shift():
    rng = np.random.default_rng(13)
    for _ in range(10):
        theta = random_blaschke(rng, 6, radius=0.85)
        s = compressed_shift(theta).matrix
        assert op_norm(apply_blaschke(s, theta)) <= 1e-7
        for z, _ in theta.zeros:
            phi = blaschke.divide(theta, BlaschkeProduct(((z, 1),)))
            assert op_norm(apply_blaschke(s, phi)) > 1e-3

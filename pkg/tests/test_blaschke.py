"""Blaschke-product arithmetic: examples, lattice laws, boundary behavior."""

from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c0lat import blaschke
from c0lat.blaschke import (
    BlaschkeProduct,
    DegreeCapError,
    NotADivisorError,
    UnitDiskPoint,
    almost_equiv,
    divide,
    divides,
    divisors,
    elementary,
    equiv,
    evaluate,
    gcd,
    lcm,
    monomial,
    multiply,
)

# a small pool of exact complex points so multisets can genuinely collide
POOL = (0j, 0.5 + 0j, -0.3 + 0.2j, 0.1 - 0.6j, 0.72j, -0.45 - 0.18j)


def pool_products(max_mult=2):
    """Strategy: products with multiplicities over the shared pool."""
    return st.builds(
        lambda mults: BlaschkeProduct(
            tuple((z, m) for z, m in zip(POOL, mults) if m > 0)
        ),
        st.tuples(*[st.integers(0, max_mult) for _ in POOL]),
    )


def multiset(b: BlaschkeProduct) -> Counter:
    return Counter(dict(b.zeros))


# --- construction -----------------------------------------------------------

def test_unit_disk_point_rejects_boundary():
    with pytest.raises(ValueError):
        UnitDiskPoint(1.0)
    with pytest.raises(ValueError):
        UnitDiskPoint(1.0 - 1e-13)
    assert UnitDiskPoint(0.999).value == 0.999


def test_constant_must_be_unimodular():
    with pytest.raises(ValueError):
        BlaschkeProduct((), 0.5)
    b = BlaschkeProduct((), np.exp(0.3j))
    assert b.degree == 0 and b.is_constant


def test_zeros_merge_and_sort_canonically():
    b = BlaschkeProduct(((0.5 + 0j, 1), (-0.3 + 0j, 2), (0.5 + 0j, 1)))
    assert b.zeros == ((-0.3 + 0j, 2), (0.5 + 0j, 2))
    assert b == BlaschkeProduct(((0.5 + 0j, 2), (-0.3 + 0j, 2)))
    assert hash(b) == hash(BlaschkeProduct(((0.5 + 0j, 2), (-0.3 + 0j, 2))))


def test_degree_cap():
    BlaschkeProduct(((0j, 64),))
    with pytest.raises(DegreeCapError):
        BlaschkeProduct(((0j, 65),))


def test_json_round_trip():
    b = BlaschkeProduct(((0.5 + 0j, 2), (-0.3 + 0.2j, 1)), np.exp(0.4j))
    again = BlaschkeProduct.from_json_dict(b.to_json_dict())
    assert again == b


# --- evaluation -------------------------------------------------------------

def test_evaluate_identity_factor():
    assert evaluate(monomial(1), 0.5) == pytest.approx(0.5)


def test_evaluate_constant():
    c = np.exp(1.1j)
    assert evaluate(BlaschkeProduct((), c), 0.3 + 0.2j) == pytest.approx(c)


def test_evaluate_vanishes_at_zero():
    assert abs(evaluate(elementary(0.5), 0.5)) < 1e-15


def test_evaluate_normalization_at_origin():
    # the factor convention makes b_a(0) = |a| > 0
    a = -0.3 + 0.4j
    assert evaluate(elementary(a), 0.0) == pytest.approx(0.5)


def test_evaluate_outside_disk_rejected():
    with pytest.raises(ValueError):
        evaluate(monomial(1), 1.5)


def test_evaluate_unimodular_on_circle():
    rng = np.random.default_rng(7)
    nodes = np.exp(2j * np.pi * np.arange(64) / 64)
    for _ in range(20):
        k = int(rng.integers(1, 9))
        zeros = rng.uniform(-0.65, 0.65, (k, 2))
        b = BlaschkeProduct(tuple((complex(x, y), 1) for x, y in zeros))
        assert np.max(np.abs(np.abs(evaluate(b, nodes)) - 1.0)) < 1e-9


def test_evaluate_bounded_inside():
    rng = np.random.default_rng(8)
    b = BlaschkeProduct(((0.4 + 0.1j, 2), (-0.2 - 0.5j, 1)))
    pts = rng.uniform(-0.7, 0.7, (50, 2))
    vals = evaluate(b, np.array([complex(x, y) for x, y in pts]))
    assert np.all(np.abs(vals) <= 1.0 + 1e-12)


# --- multiplication / division ----------------------------------------------

def test_multiply_monomials():
    assert multiply(monomial(1), monomial(1)) == monomial(2)


def test_multiply_identity():
    b = BlaschkeProduct(((0.5 + 0j, 1),), np.exp(0.2j))
    assert multiply(b, BlaschkeProduct(())) == b


def test_multiply_union():
    prod = multiply(elementary(0.5), elementary(-0.3))
    assert multiset(prod) == Counter({0.5 + 0j: 1, -0.3 + 0j: 1})
    assert prod.degree == 2


def test_divides_examples():
    b_a, b_c = elementary(0.5), elementary(-0.3)
    big = multiply(multiply(b_a, b_a), b_c)
    assert divides(b_a, big)
    assert not divides(multiply(b_a, b_a), b_a)
    assert divides(BlaschkeProduct((), np.exp(0.9j)), big)


def test_divide_examples():
    assert equiv(divide(monomial(2), monomial(1)), monomial(1))
    b = BlaschkeProduct(((0.5 + 0j, 1),), np.exp(0.3j))
    assert divide(b, b).is_constant
    with pytest.raises(NotADivisorError):
        divide(monomial(1), monomial(2))


def test_divide_reproduces_numerator():
    num = BlaschkeProduct(((0.5 + 0j, 2), (0.72j, 1)), np.exp(0.8j))
    den = BlaschkeProduct(((0.5 + 0j, 1),), np.exp(-0.4j))
    back = multiply(den, divide(num, den))
    assert equiv(back, num)  # zero multisets agree exactly
    assert abs(back.constant - num.constant) < 1e-12


# --- gcd / lcm / equiv --------------------------------------------------------

def test_gcd_lcm_examples():
    z, z2 = monomial(1), monomial(2)
    zb = multiply(z, elementary(0.5))
    assert equiv(gcd(z2, zb), z)
    assert equiv(lcm(z2, zb), multiply(z2, elementary(0.5)))
    b = BlaschkeProduct(((0.3 + 0.4j, 2),))
    assert equiv(gcd(b, b), b)


def test_equiv_ignores_constants():
    z2 = monomial(2)
    assert equiv(BlaschkeProduct(((0j, 2),), np.exp(2.2j)), z2)
    assert not equiv(monomial(1), z2)


@settings(max_examples=150, deadline=None)
@given(pool_products(), pool_products())
def test_gcd_lcm_multiset_oracle(b1, b2):
    # oracle: independent multiset arithmetic with Counter
    m1, m2 = multiset(b1), multiset(b2)
    assert multiset(gcd(b1, b2)) == m1 & m2
    assert multiset(lcm(b1, b2)) == m1 | m2
    assert gcd(b1, b2).degree + lcm(b1, b2).degree == b1.degree + b2.degree
    assert multiset(multiply(gcd(b1, b2), lcm(b1, b2))) == multiset(multiply(b1, b2))


@settings(max_examples=150, deadline=None)
@given(pool_products(), pool_products(), pool_products())
def test_lattice_laws(b1, b2, b3):
    assert equiv(gcd(b1, b2), gcd(b2, b1))
    assert equiv(lcm(b1, b2), lcm(b2, b1))
    assert equiv(gcd(gcd(b1, b2), b3), gcd(b1, gcd(b2, b3)))
    assert equiv(lcm(lcm(b1, b2), b3), lcm(b1, lcm(b2, b3)))
    assert equiv(gcd(b1, lcm(b1, b2)), b1)
    assert equiv(lcm(b1, gcd(b1, b2)), b1)


@settings(max_examples=150, deadline=None)
@given(pool_products(), pool_products())
def test_divides_equiv_biconditional(b1, b2):
    assert (divides(b1, b2) and divides(b2, b1)) == equiv(b1, b2)


@settings(max_examples=100, deadline=None)
@given(pool_products(), pool_products())
def test_quotient_identity(b1, b2):
    # divide(lcm, b1) is equivalent to divide(b2, gcd): multiset identity
    assert equiv(divide(lcm(b1, b2), b1), divide(b2, gcd(b1, b2)))


# --- divisors / almost_equiv --------------------------------------------------

def test_divisor_enumeration():
    b = multiply(monomial(2), elementary(0.5))
    ds = divisors(b)
    assert len(ds) == blaschke.divisor_count(b) == 6
    assert ds[0].is_constant and equiv(ds[-1], b)
    assert all(divides(d, b) for d in ds)
    degrees = [d.degree for d in ds]
    assert degrees == sorted(degrees)


def test_divisor_cap():
    b = BlaschkeProduct(tuple((complex(0.1 * k, 0.05), 1) for k in range(1, 6)))
    with pytest.raises(ValueError):
        divisors(b, cap=16)


def test_almost_equiv():
    b1 = BlaschkeProduct(((0.5 + 0j, 2),))
    b2 = BlaschkeProduct(((0.5 + 1e-9j, 1), (0.5 - 1e-9j, 1)))
    assert almost_equiv(b1, b2, 1e-7)
    assert not almost_equiv(b1, b2, 1e-12)
    assert not almost_equiv(b1, monomial(2))
    assert almost_equiv(BlaschkeProduct(()), BlaschkeProduct((), np.exp(1j)))

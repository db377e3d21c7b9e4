"""Subspace lattice numerics and the abstract finite-lattice checkers."""

import numpy as np
import pytest

from c0lat.subspace import (
    FiniteLattice,
    Subspace,
    check_distributive_triple,
    check_modular_triple,
    contains,
    cyclic_multiplicity,
    cyclic_subspace,
    distance,
    equals,
    is_invariant,
    join,
    lattice_is_distributive,
    lattice_is_modular,
    meet,
)


def line(n, k):
    v = np.zeros((n, 1), dtype=complex)
    v[k, 0] = 1.0
    return Subspace(n, v)


def span_of(*columns):
    cols = np.column_stack([np.asarray(c, dtype=complex) for c in columns])
    return Subspace.from_span(cols)


def random_subspace(rng, n, k):
    return Subspace.from_span(
        rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    )


NILPOTENT = np.array([[0, 0], [1, 0]], dtype=complex)  # e1 -> e2 -> 0


# --- construction -------------------------------------------------------------

def test_orthonormality_enforced():
    with pytest.raises(ValueError):
        Subspace(2, np.array([[1.0], [1.0]]))
    Subspace(2, np.array([[1.0], [0.0]]))


def test_from_span_drops_dependent_columns():
    s = span_of([1, 0, 0], [2, 0, 0], [0, 1, 0])
    assert s.dim == 2


def test_zero_and_full():
    assert Subspace.zero(3).dim == 0
    assert Subspace.full(3).dim == 3
    assert contains(Subspace.full(3), Subspace.zero(3))


def test_json_round_trip():
    rng = np.random.default_rng(0)
    s = random_subspace(rng, 4, 2)
    back = Subspace.from_json_dict(s.to_json_dict())
    assert equals(s, back)


# --- join / meet / contains ----------------------------------------------------

def test_join_with_zero_is_identity():
    rng = np.random.default_rng(1)
    m = random_subspace(rng, 4, 2)
    assert equals(join(m, Subspace.zero(4)), m)


def test_join_of_coordinate_lines():
    j = join(line(3, 0), line(3, 1))
    assert j.dim == 2
    assert contains(j, line(3, 0)) and contains(j, line(3, 1))


def test_meet_with_full_is_identity():
    rng = np.random.default_rng(2)
    m = random_subspace(rng, 5, 3)
    assert equals(meet(m, Subspace.full(5)), m)


def test_meet_of_distinct_lines_is_zero():
    a = span_of([1, 0])
    b = span_of([1, 1])
    assert meet(a, b).dim == 0


def test_meet_contained_in_both():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = random_subspace(rng, 6, int(rng.integers(1, 6)))
        b = random_subspace(rng, 6, int(rng.integers(1, 6)))
        m = meet(a, b)
        assert contains(a, m) and contains(b, m)


def test_dimension_formula():
    rng = np.random.default_rng(4)
    for _ in range(30):
        a = random_subspace(rng, 7, int(rng.integers(0, 8)))
        b = random_subspace(rng, 7, int(rng.integers(0, 8)))
        assert join(a, b).dim + meet(a, b).dim == a.dim + b.dim


def test_contains_examples():
    assert contains(Subspace.full(3), line(3, 1))
    assert not contains(Subspace.zero(3), line(3, 1))
    rng = np.random.default_rng(5)
    a, b = random_subspace(rng, 5, 2), random_subspace(rng, 5, 2)
    assert contains(join(a, b), a)


def test_distance():
    assert distance(line(2, 0), line(2, 0)) < 1e-15
    assert distance(line(2, 0), line(2, 1)) == pytest.approx(1.0)


# --- invariance / cyclic -------------------------------------------------------

def test_invariance_full_space():
    verdict = is_invariant(NILPOTENT, Subspace.full(2))
    assert verdict.invariant and verdict.residual == 0.0


def test_invariance_of_jordan_chain_image():
    assert is_invariant(NILPOTENT, line(2, 1)).invariant
    assert not is_invariant(NILPOTENT, line(2, 0)).invariant


def test_cyclic_subspace_examples():
    assert cyclic_subspace(NILPOTENT, np.zeros(2)).dim == 0
    full = cyclic_subspace(NILPOTENT, np.array([1.0, 0.0]))
    assert full.dim == 2
    rng = np.random.default_rng(6)
    t = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    t /= 2 * np.linalg.norm(t, 2)
    for _ in range(5):
        x = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        s = cyclic_subspace(t, x)
        assert is_invariant(t, s).invariant


def test_cyclic_multiplicity_zero_matrix():
    assert cyclic_multiplicity(np.zeros((2, 2))) == 2


def test_cyclic_multiplicity_single_chain():
    assert cyclic_multiplicity(NILPOTENT) == 1


def test_cyclic_multiplicity_mixed_blocks():
    # one chain of length 1 and one of length 2 at the same eigenvalue
    t = np.zeros((3, 3), dtype=complex)
    t[2, 1] = 1.0
    assert cyclic_multiplicity(t) == 2


# --- modular / distributive triples ---------------------------------------------

def test_modular_requires_containment():
    with pytest.raises(ValueError):
        check_modular_triple(line(3, 0), line(3, 1), line(3, 2))


def test_modular_on_chains():
    l = span_of([1, 0, 0], [0, 1, 0], [0, 0, 1])
    m = span_of([1, 0, 0], [0, 1, 0])
    n = span_of([1, 0, 0])
    assert check_modular_triple(l, m, n).passed


def test_modular_law_random_triples():
    # the whole subspace lattice of a finite-dimensional space is modular
    rng = np.random.default_rng(7)
    for _ in range(50):
        n_amb = int(rng.integers(2, 9))
        l = random_subspace(rng, n_amb, int(rng.integers(1, n_amb + 1)))
        m = random_subspace(rng, n_amb, int(rng.integers(0, n_amb + 1)))
        n_sub = meet(l, random_subspace(rng, n_amb, int(rng.integers(0, n_amb + 1))))
        verdict = check_modular_triple(l, m, n_sub)
        assert verdict.passed, verdict.residual


def test_modular_degenerate_n_zero():
    rng = np.random.default_rng(8)
    l, m = random_subspace(rng, 4, 2), random_subspace(rng, 4, 3)
    assert check_modular_triple(l, m, Subspace.zero(4)).passed


def test_distributive_violation_three_lines():
    # non-vacuity control: left side is L, right side is {0}
    l, m, n = span_of([1, 0]), span_of([0, 1]), span_of([1, 1])
    verdict = check_distributive_triple(l, m, n)
    assert not verdict.passed
    assert equals(meet(l, join(m, n)), l)
    assert join(meet(l, m), meet(l, n)).dim == 0


def test_distributive_on_chain():
    l = span_of([1, 0, 0])
    m = span_of([1, 0, 0], [0, 1, 0])
    n = span_of([1, 0, 0], [0, 1, 0], [0, 0, 1])
    assert check_distributive_triple(l, m, n).passed


# --- finite lattices -------------------------------------------------------------

def test_pentagon_not_modular_with_witness():
    verdict = lattice_is_modular(FiniteLattice.pentagon())
    assert not verdict.passed
    assert verdict.witness is not None and "triple" in verdict.witness


def test_diamond_modular_not_distributive():
    m3 = FiniteLattice.diamond()
    assert lattice_is_modular(m3).passed
    verdict = lattice_is_distributive(m3)
    assert not verdict.passed and verdict.witness is not None


def test_pentagon_not_distributive_either():
    assert not lattice_is_distributive(FiniteLattice.pentagon()).passed


def test_leq_validation():
    bad = np.array([[1, 1], [1, 1]], dtype=bool)  # not antisymmetric
    with pytest.raises(ValueError):
        FiniteLattice(("a", "b"), bad)
    not_transitive = np.eye(3, dtype=bool)
    not_transitive[0, 1] = not_transitive[1, 2] = True
    with pytest.raises(ValueError):
        FiniteLattice(("a", "b", "c"), not_transitive)


def test_poset_without_meets_rejected():
    # two incomparable atoms with two incomparable tops: no unique join
    leq = np.eye(4, dtype=bool)
    leq[0, 2] = leq[0, 3] = leq[1, 2] = leq[1, 3] = True
    with pytest.raises(ValueError):
        FiniteLattice(("a", "b", "c", "d"), leq)


def test_from_subspaces_closure_and_agreement():
    # chain plus an extra line: closure stays finite, checkers agree with
    # the subspace-level triple checks
    elems = [
        Subspace.zero(3),
        span_of([1, 0, 0]),
        span_of([1, 0, 0], [0, 1, 0]),
        span_of([0, 0, 1]),
        Subspace.full(3),
    ]
    lat, closed = FiniteLattice.from_subspaces(elems)
    assert lat.n == len(closed)
    assert lattice_is_modular(lat).passed
    for i in range(lat.n):
        for j in range(lat.n):
            assert equals(closed[lat.meet_of(i, j)], meet(closed[i], closed[j]))
            assert equals(closed[lat.join_of(i, j)], join(closed[i], closed[j]))


def test_from_subspaces_finds_generic_line_violation():
    lines = [span_of([1, 0]), span_of([0, 1]), span_of([1, 1])]
    lat, closed = FiniteLattice.from_subspaces(lines)
    assert not lattice_is_distributive(lat).passed
    assert lattice_is_modular(lat).passed  # M3-shaped: modular, not distributive

"""Desk-scale toolkit for finite Blaschke products, model spaces with
their compressed shifts, the matrix functional calculus, invariant-subspace
lattices, Jordan models, and randomized lattice-law verifiers."""

from .blaschke import (
    BlaschkeProduct,
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
from .calculus import (
    C0Certificate,
    ContractionMatrix,
    apply_blaschke,
    apply_polynomial,
    classify_c0,
    eigenstructure,
    minimal_function,
    radial_validate,
    spectral_radius,
)
from .jordan import (
    IntertwinerSpace,
    JordanModel,
    LatticeMapReport,
    VerificationReport,
    Violation,
    are_quasisimilar,
    brute_force_lat,
    check_lattice_isomorphism,
    find_quasiaffinity,
    has_property_P,
    intertwiner_space,
    jordan_model,
    lattice_map,
    lattice_preimage,
    theorem97_verifier,
    theorem_x3_verifier,
    triangularization_check,
)
from .modelspace import (
    ModelOperator,
    ModelSpace,
    basis_eval,
    compressed_shift,
    divisor_subspace,
    enumerate_lattice,
    inner_product,
)
from .subspace import (
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

__version__ = "0.1.0"

"""Intertwiners, quasiaffinities, lattice maps, Jordan models, and the
modularity verifiers.

The intertwining equation X T1 = T2 X is flattened into an
(n1*n2) x (n1*n2) linear system whose numerical null space (SVD threshold
1e-10 relative) spans the intertwiner space.  The maximal rank over that
space is certified by random combinations: the full-rank locus of a
matrix space is Zariski-open, so a random element attains the maximum
with probability 1; 32 seeded draws guard against unlucky ones.

Quasisimilarity at matrix scale collapses to similarity, but the
verifiers still run the two-sided quasiaffinity search so the code paths
match the general hypotheses.

The two theorem verifiers replay proofs on concrete samples:

* ``theorem97_verifier`` checks the modular law on sampled invariant
  triples with M3 inside M1, and reconstructs the sum map
  X(a2, a3) = a2 + a3 from the external direct sum M2 (+) M3 onto
  M2 v M3 as an explicit matrix, checking that it intertwines the
  restrictions, has dense range, and that the preimage of
  M1 ∩ (M2 v M3) is (M1 ∩ M2) (+) M3.
* ``theorem_x3_verifier`` pulls invariant triples back through a
  quasiaffinity Y, checks Y_*(Y^{-1} N) = N on each, the product identity
  Y_*(M1 ∩ M2) = Y_*(M1) ∩ Y_*(M2), and that modularity transfers.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import blaschke
from .blaschke import BlaschkeProduct
from .calculus import NotC0Error, classify_c0, eigenstructure
from .modelspace import compressed_shift
from .sampling import complex_gaussian, sample_invariant_subspaces
from .subspace import (
    TOL_EQUALS,
    TOL_INTERTWINE,
    TOL_INVARIANT,
    TOL_RANK,
    Subspace,
    check_modular_triple,
    contains,
    distance,
    equals,
    is_invariant,
    join,
    meet,
    op_norm,
)

__all__ = [
    "IntertwinerSpace",
    "JordanModel",
    "LatticeMapReport",
    "NonIntertwinerError",
    "RankDeficientError",
    "TriangularizationReport",
    "VerificationReport",
    "Violation",
    "are_quasisimilar",
    "brute_force_lat",
    "check_lattice_isomorphism",
    "find_quasiaffinity",
    "has_property_P",
    "intertwiner_space",
    "jordan_model",
    "lattice_map",
    "lattice_preimage",
    "theorem97_verifier",
    "theorem_x3_verifier",
    "triangularization_check",
]

SIZE_CAP = 16
_MAX_RANK_DRAWS = 32


class NonIntertwinerError(ValueError):
    """The given X does not intertwine the pair within tolerance."""


class RankDeficientError(ValueError):
    """A full-rank (quasiaffinity) operator was required."""


def _square(t) -> np.ndarray:
    a = np.asarray(t, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def _intertwine_residual(x, t1, t2) -> float:
    return op_norm(x @ t1 - t2 @ x)


def _require_intertwiner(x, t1, t2):
    scale = max(1.0, op_norm(t1), op_norm(t2))
    resid = _intertwine_residual(x, t1, t2)
    if resid > TOL_INTERTWINE * scale:
        raise NonIntertwinerError(
            f"intertwining residual {resid:.3g} exceeds {TOL_INTERTWINE:g} * {scale:.3g}"
        )
    return resid


def _rank(m) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[0] <= 0:
        return 0
    return int(np.sum(sv > TOL_RANK * sv[0]))


@dataclass(frozen=True)
class IntertwinerSpace:
    """Basis of the solution space of X T1 = T2 X, with rank diagnostics."""

    t1: np.ndarray
    t2: np.ndarray
    basis: tuple
    max_rank: int
    rank_witness: np.ndarray | None

    @property
    def dimension(self) -> int:
        return len(self.basis)


def intertwiner_space(t1, t2, seed: int = 0) -> IntertwinerSpace:
    """Null space of X -> X T1 - T2 X, plus a certified maximal rank.

    Sizes are capped at 16 since the flattened system has n1*n2 unknowns.
    """
    t1, t2 = _square(t1), _square(t2)
    n1, n2 = t1.shape[0], t2.shape[0]
    if n1 > SIZE_CAP or n2 > SIZE_CAP:
        raise ValueError(f"matrix sizes {n1}, {n2} exceed cap {SIZE_CAP}")
    # vec is column-major over X (n2 x n1): X T1 -> (T1^T ⊗ I), T2 X -> (I ⊗ T2)
    lhs = np.kron(t1.T, np.eye(n2)) - np.kron(np.eye(n1), t2)
    _, sv, vh = np.linalg.svd(lhs)
    # threshold against the problem scale, not sigma_max of the Sylvester
    # operator: for near-zero T1, T2 the whole spectrum is roundoff
    scale = max(1.0, op_norm(t1), op_norm(t2))
    null_mask = sv <= TOL_RANK * scale
    vectors = vh[null_mask].conj()
    basis = tuple(v.reshape((n1, n2)).T for v in vectors)
    max_rank = 0
    witness = None
    if basis:
        rng = np.random.default_rng(seed)
        for _ in range(_MAX_RANK_DRAWS):
            coeffs = complex_gaussian(rng, len(basis))
            candidate = sum(c * b for c, b in zip(coeffs, basis))
            r = _rank(candidate)
            if r > max_rank:
                max_rank, witness = r, candidate
            if max_rank == min(n1, n2):
                break
    return IntertwinerSpace(t1, t2, basis, max_rank, witness)


def find_quasiaffinity(t1, t2, seed: int = 0) -> np.ndarray | None:
    """A full-rank intertwiner from T1 to T2, or None.

    At matrix scale injective with dense range means square and
    invertible, so this requires equal sizes and a max rank equal to them.
    """
    t1, t2 = _square(t1), _square(t2)
    if t1.shape[0] != t2.shape[0]:
        return None
    space = intertwiner_space(t1, t2, seed=seed)
    if space.max_rank != t1.shape[0] or space.rank_witness is None:
        return None
    witness = space.rank_witness
    return witness / op_norm(witness)


def are_quasisimilar(t1, t2, seed: int = 0) -> bool:
    """Quasiaffinities exist both ways."""
    return (
        find_quasiaffinity(t1, t2, seed=seed) is not None
        and find_quasiaffinity(t2, t1, seed=seed) is not None
    )


def lattice_map(x, m: Subspace) -> Subspace:
    """X_*(M): the (automatically closed) image of M under X."""
    x = np.asarray(x, dtype=complex)
    if x.shape[1] != m.ambient_dim:
        raise ValueError("column count of X does not match the ambient of M")
    return Subspace.from_span(x @ m.basis, x.shape[0])


def lattice_preimage(x, n: Subspace) -> Subspace:
    """X^{-1}(N): the null space of (I - P_N) X."""
    x = np.asarray(x, dtype=complex)
    if x.shape[0] != n.ambient_dim:
        raise ValueError("row count of X does not match the ambient of N")
    resid = x - n.project(x)
    _, sv, vh = np.linalg.svd(resid)
    scale = max(1.0, op_norm(x))
    mask = np.ones(x.shape[1], dtype=bool)
    mask[: sv.size] = sv <= TOL_RANK * scale
    return Subspace.from_span(vh.conj().T[:, mask], x.shape[1])


@dataclass(frozen=True)
class LatticeMapReport:
    """Sampled evidence that X_* is a lattice isomorphism, with the adjoint
    duality evidence alongside."""

    samples: int
    surjective_evidence: float
    injective_evidence: float
    adjoint_surjective_evidence: float
    adjoint_injective_evidence: float
    max_residual: float

    def __post_init__(self):
        for name in (
            "surjective_evidence",
            "injective_evidence",
            "adjoint_surjective_evidence",
            "adjoint_injective_evidence",
        ):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]; got {v}")

    def to_json_dict(self) -> dict:
        return {
            "samples": self.samples,
            "surjective_evidence": self.surjective_evidence,
            "injective_evidence": self.injective_evidence,
            "adjoint_surjective_evidence": self.adjoint_surjective_evidence,
            "adjoint_injective_evidence": self.adjoint_injective_evidence,
            "max_residual": self.max_residual,
        }


def _kernel_subspace(x, ambient: int) -> Subspace:
    x = np.asarray(x, dtype=complex)
    _, sv, vh = np.linalg.svd(x)
    scale = max(1.0, sv[0]) if sv.size else 1.0
    mask = np.ones(ambient, dtype=bool)
    mask[: sv.size] = sv <= TOL_RANK * scale
    return Subspace.from_span(vh.conj().T[:, mask], ambient)


def _surjectivity_evidence(x, t_target, samples, rng):
    """Fraction of sampled N in Lat(T_target) with X_*(X^{-1} N) = N."""
    pool = sample_invariant_subspaces(t_target, samples, rng)
    hits, worst = 0, 0.0
    for n_sub in pool[:samples]:
        image = lattice_map(x, lattice_preimage(x, n_sub))
        if equals(image, n_sub):
            hits += 1
            worst = max(worst, distance(image, n_sub))
    return hits / samples, worst


def _injectivity_evidence(x, t_source, samples, rng):
    """Fraction of sampled distinct pairs M != M' with X_*(M) != X_*(M').

    The kernel of X is itself invariant and collapses onto the image of
    the zero subspace, so the pair (ker X, 0) is probed first whenever the
    kernel is nontrivial; random pool pairs fill the remaining samples.
    """
    pool = sample_invariant_subspaces(t_source, samples, rng)
    kernel = _kernel_subspace(x, np.asarray(x).shape[1])
    pool.append(kernel)
    queued = []
    if kernel.dim > 0:
        queued.append((len(pool) - 1, 0))  # pool[0] is the zero subspace
    pairs = 0
    separated = 0
    attempts = 0
    while (queued or pairs < samples) and attempts < 20 * samples:
        attempts += 1
        if queued:
            i, j = queued.pop()
        else:
            i, j = rng.integers(len(pool)), rng.integers(len(pool))
        if i == j or equals(pool[i], pool[j]):
            continue
        pairs += 1
        if not equals(lattice_map(x, pool[i]), lattice_map(x, pool[j])):
            separated += 1
    return (separated / pairs if pairs else 1.0), pairs


def check_lattice_isomorphism(x, t1, t2, samples: int = 20, seed: int = 0) -> LatticeMapReport:
    """Sampled surjectivity/injectivity evidence for X_*, plus the adjoint
    duality: X_* onto pairs with (X*)_* one-to-one and vice versa, so the
    report carries both directions for comparison."""
    x = np.asarray(x, dtype=complex)
    t1, t2 = _square(t1), _square(t2)
    resid = _require_intertwiner(x, t1, t2)
    rng = np.random.default_rng(seed)
    surj, worst = _surjectivity_evidence(x, t2, samples, rng)
    inj, _ = _injectivity_evidence(x, t1, samples, rng)
    xh = x.conj().T
    adj_surj, adj_worst = _surjectivity_evidence(xh, t1.conj().T, samples, rng)
    adj_inj, _ = _injectivity_evidence(xh, t2.conj().T, samples, rng)
    return LatticeMapReport(
        samples=samples,
        surjective_evidence=surj,
        injective_evidence=inj,
        adjoint_surjective_evidence=adj_surj,
        adjoint_injective_evidence=adj_inj,
        max_residual=max(resid, worst, adj_worst),
    )


@dataclass(frozen=True)
class JordanModel:
    """Divisibility chain theta_1, theta_2, ... with theta_{j+1} | theta_j.

    Trailing constants are trimmed at construction; an empty chain models
    the operator on the zero space.
    """

    thetas: tuple

    def __post_init__(self):
        thetas = tuple(self.thetas)
        while thetas and thetas[-1].is_constant:
            thetas = thetas[:-1]
        for current, following in zip(thetas, thetas[1:]):
            if not blaschke.divides(following, current):
                raise ValueError("Jordan model requires theta_{j+1} | theta_j")
        object.__setattr__(self, "thetas", thetas)

    @property
    def dimension(self) -> int:
        return sum(t.degree for t in self.thetas)

    def operator(self) -> np.ndarray:
        """The model matrix: the direct sum of the compressed shifts."""
        if not self.thetas:
            return np.zeros((0, 0), dtype=complex)
        blocks = [compressed_shift(t).matrix for t in self.thetas]
        return scipy.linalg.block_diag(*blocks).astype(complex)

    def to_json_dict(self) -> dict:
        return {"thetas": [t.to_json_dict() for t in self.thetas]}


def jordan_model(t, seed: int = 0, verify: bool = True) -> JordanModel:
    """The Jordan model of a C0 matrix.

    Per eigenvalue cluster with block sizes s_1 >= s_2 >= ..., the j-th
    model function is the product of b_lambda^{s_j(lambda)}.  The
    divisibility chain holds by construction; with ``verify`` the result
    is certified by a two-sided quasiaffinity search against the model
    operator, and theta_1 reproduces the minimal function exactly (both
    come from the same eigenstructure call).
    """
    t = _square(t)
    n = t.shape[0]
    if n > 12:
        raise ValueError("jordan_model is capped at size 12")
    cert = classify_c0(t)
    if not cert.is_c0:
        raise NotC0Error("jordan_model requires a C0 matrix")
    structure = eigenstructure(t)
    depth = max((len(sizes) for _, sizes in structure), default=0)
    thetas = []
    for j in range(depth):
        zeros = tuple(
            (mean, sizes[j]) for mean, sizes in structure if j < len(sizes)
        )
        thetas.append(BlaschkeProduct(zeros))
    model = JordanModel(tuple(thetas))
    if verify:
        if model.thetas and not blaschke.equiv(model.thetas[0], cert.minimal_function):
            raise RuntimeError("model head does not match the minimal function")
        if not are_quasisimilar(t, model.operator(), seed=seed):
            raise RuntimeError(
                "could not certify quasisimilarity between the matrix and its model"
            )
    return model


def has_property_P(model: JordanModel) -> bool:
    """Always True for finite models.

    The defining criterion asks whether the gcd of the full model-function
    sequence is trivial; a finite chain is padded with constants, whose
    gcd with anything is the constant 1, so every finite Jordan model
    qualifies.  The operation exists so callers can exercise the criterion
    through the same API that an infinite-model implementation would use.
    """
    del model
    return True


@dataclass(frozen=True)
class Violation:
    trial: int
    kind: str
    residual: float
    witness: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "trial": self.trial,
            "kind": self.kind,
            "residual": self.residual,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a randomized suite: seed, trial count, violations."""

    suite: str
    seed: int
    trials: int
    violations: tuple
    max_residual: float

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "violations": [v.to_json_dict() for v in self.violations],
            "max_residual": self.max_residual,
            "passed": self.passed,
        }

    def merged_with(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(
            suite=self.suite,
            seed=self.seed,
            trials=self.trials + other.trials,
            violations=self.violations + other.violations,
            max_residual=max(self.max_residual, other.max_residual),
        )


def _direct_sum_basis(m2: Subspace, m3: Subspace):
    """Sum map machinery for the external direct sum M2 (+) M3."""
    j = join(m2, m3)
    b2, b3, bj = m2.basis, m3.basis, j.basis
    x_mat = bj.conj().T @ np.hstack([b2, b3])
    return j, x_mat


def _restriction(t, s: Subspace) -> np.ndarray:
    return s.basis.conj().T @ t @ s.basis


def theorem97_verifier(
    t,
    triples: int = 100,
    seed: int = 0,
    tol_modular: float = 1e-6,
    tol_intertwine: float = 1e-8,
    tol_preimage: float = 1e-7,
) -> VerificationReport:
    """Modular-law trials on sampled invariant triples of a C0 matrix,
    with the sum-map proof objects rebuilt and checked on every trial.

    Per trial: invariant M1, M2 from the sampling pool and M3 = M1 ∧ R
    for a pool member R (so M3 ⊆ M1 holds by construction).  Checks, in
    order: the modular identity; that X(a2, a3) = a2 + a3 intertwines
    (T|M2) (+) (T|M3) with T|M2∨M3 and is onto; and that the X-preimage
    of M1 ∩ (M2 ∨ M3) is (M1 ∩ M2) (+) M3.
    """
    t = _square(t)
    n = t.shape[0]
    if n > 10:
        raise ValueError("theorem97_verifier is capped at size 10")
    if not classify_c0(t).is_c0:
        raise NotC0Error("theorem97_verifier requires a C0 matrix")
    pool = sample_invariant_subspaces(t, max(12, n + 4), np.random.default_rng(seed))
    violations = []
    max_residual = 0.0
    for trial in range(triples):
        rng = np.random.default_rng(seed + 1 + trial)
        m1, m2, r = (pool[int(rng.integers(len(pool)))] for _ in range(3))
        m3 = meet(m1, r)

        verdict = check_modular_triple(m1, m2, m3)
        max_residual = max(max_residual, verdict.residual)
        if verdict.residual > tol_modular:
            violations.append(
                Violation(
                    trial,
                    "modular-identity",
                    verdict.residual,
                    {"dims": [m1.dim, m2.dim, m3.dim]},
                )
            )

        if m2.dim + m3.dim == 0:
            continue
        joined, x_mat = _direct_sum_basis(m2, m3)
        t23 = scipy.linalg.block_diag(_restriction(t, m2), _restriction(t, m3))
        tj = _restriction(t, joined)
        resid_int = op_norm(x_mat @ t23 - tj @ x_mat)
        max_residual = max(max_residual, resid_int)
        if resid_int > tol_intertwine:
            violations.append(
                Violation(
                    trial,
                    "sum-map-intertwine",
                    resid_int,
                    {"dims": [m2.dim, m3.dim, joined.dim]},
                )
            )
        if _rank(x_mat) != joined.dim:
            violations.append(
                Violation(
                    trial,
                    "sum-map-range",
                    float(joined.dim - _rank(x_mat)),
                    {"rank": _rank(x_mat), "target": joined.dim},
                )
            )

        inter = meet(m1, joined)
        embedded = Subspace.from_span(joined.basis.conj().T @ inter.basis, joined.dim)
        preimage = lattice_preimage(x_mat, embedded)
        m1m2 = meet(m1, m2)
        top = m2.basis.conj().T @ m1m2.basis
        expected_cols = np.zeros((m2.dim + m3.dim, m1m2.dim + m3.dim), dtype=complex)
        expected_cols[: m2.dim, : m1m2.dim] = top
        expected_cols[m2.dim :, m1m2.dim :] = np.eye(m3.dim)
        expected = Subspace.from_span(expected_cols, m2.dim + m3.dim)
        resid_pre = distance(preimage, expected)
        max_residual = max(max_residual, resid_pre)
        if resid_pre > tol_preimage:
            violations.append(
                Violation(
                    trial,
                    "preimage-identity",
                    resid_pre,
                    {"dims": [preimage.dim, expected.dim]},
                )
            )
    return VerificationReport(
        suite="modular-thm97",
        seed=seed,
        trials=triples,
        violations=tuple(violations),
        max_residual=max_residual,
    )


def theorem_x3_verifier(
    t1,
    t2,
    y,
    samples: int = 50,
    seed: int = 0,
    tol: float = 1e-6,
) -> VerificationReport:
    """Modularity-transfer trials along a quasiaffinity Y with Y_* onto.

    Per trial: invariant N1, N2, N3 for T2 with N3 ⊆ N1; preimages
    M_i = Y^{-1}(N_i) are checked invariant for T1; the onto instances
    Y_*(M_i) = N_i and the product identity
    Y_*(M1 ∩ M2) = Y_*(M1) ∩ Y_*(M2) are verified; finally the modular
    law is checked on both triples and must transfer from the T1 side to
    the T2 side.
    """
    t1, t2, y = _square(t1), _square(t2), np.asarray(y, dtype=complex)
    _require_intertwiner(y, t1, t2)
    if y.shape[0] != y.shape[1] or _rank(y) != y.shape[0]:
        raise RankDeficientError("theorem_x3_verifier requires a full-rank square Y")
    pool = sample_invariant_subspaces(t2, max(12, t2.shape[0] + 4), np.random.default_rng(seed))
    t1_scale = max(1.0, op_norm(t1))
    violations = []
    max_residual = 0.0

    def record(trial, kind, residual, witness=None):
        nonlocal max_residual
        max_residual = max(max_residual, residual)
        if residual > tol:
            violations.append(Violation(trial, kind, residual, witness or {}))

    for trial in range(samples):
        rng = np.random.default_rng(seed + 1 + trial)
        n1, n2, r = (pool[int(rng.integers(len(pool)))] for _ in range(3))
        n3 = meet(n1, r)
        ns = (n1, n2, n3)
        ms = tuple(lattice_preimage(y, n_i) for n_i in ns)
        for i, m_i in enumerate(ms):
            inv = is_invariant(t1, m_i)
            max_residual = max(max_residual, inv.residual)
            if inv.residual > TOL_INVARIANT * t1_scale:
                violations.append(
                    Violation(trial, "preimage-invariance", inv.residual, {"index": i + 1})
                )
            record(
                trial,
                "onto-instance",
                distance(lattice_map(y, m_i), ns[i]),
                {"index": i + 1},
            )
        record(
            trial,
            "product-identity",
            distance(lattice_map(y, meet(ms[0], ms[1])), meet(ns[0], ns[1])),
        )
        source = check_modular_triple(ms[0], ms[1], ms[2])
        target = check_modular_triple(ns[0], ns[1], ns[2])
        max_residual = max(max_residual, source.residual, target.residual)
        if source.residual <= tol < target.residual:
            violations.append(
                Violation(
                    trial,
                    "transfer",
                    target.residual,
                    {"source_residual": source.residual},
                )
            )
    return VerificationReport(
        suite="x3-transfer",
        seed=seed,
        trials=samples,
        violations=tuple(violations),
        max_residual=max_residual,
    )


@dataclass(frozen=True)
class TriangularizationReport:
    """2x2 block triangularization of T against an invariant M and its
    orthogonal complement, with C0 classification of the two corners."""

    restriction_is_c0: bool
    compression_is_c0: bool
    whole_is_c0: bool
    consistent: bool
    lower_left_residual: float


def triangularization_check(t, m: Subspace) -> TriangularizationReport:
    """Classify T|M and the compression to the complement; at matrix scale
    T is C0 exactly when both corners are."""
    t = _square(t)
    inv = is_invariant(t, m)
    if not inv.invariant:
        raise ValueError(f"subspace is not invariant (residual {inv.residual:.3g})")
    basis = m.basis
    complement = scipy.linalg.null_space(basis.conj().T) if m.dim < m.ambient_dim else np.zeros(
        (m.ambient_dim, 0)
    )
    u = np.hstack([basis, complement])
    tt = u.conj().T @ t @ u
    k = m.dim
    lower = op_norm(tt[k:, :k])
    c1 = classify_c0(tt[:k, :k])
    c2 = classify_c0(tt[k:, k:])
    whole = classify_c0(t)
    return TriangularizationReport(
        restriction_is_c0=c1.is_c0,
        compression_is_c0=c2.is_c0,
        whole_is_c0=whole.is_c0,
        consistent=whole.is_c0 == (c1.is_c0 and c2.is_c0),
        lower_left_residual=lower,
    )


def brute_force_lat(t, separation: float = 1e-6) -> list[Subspace]:
    """All invariant subspaces of a matrix with distinct eigenvalues: the
    2^n spans of eigenvector subsets.

    This is the independent oracle for the divisor-lattice enumeration;
    it refuses matrices with (numerically) repeated eigenvalues, where
    the eigenvector-subset description is wrong.
    """
    t = _square(t)
    n = t.shape[0]
    if n > 10:
        raise ValueError("brute_force_lat is capped at size 10")
    values, vectors = np.linalg.eig(t)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) < separation:
                raise ValueError(
                    f"eigenvalues {values[i]:.8g} and {values[j]:.8g} are closer than {separation:g}"
                )
    out = []
    for mask in range(1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        out.append(Subspace.from_span(vectors[:, idx], n))
    out.sort(key=lambda s: s.dim)
    return out

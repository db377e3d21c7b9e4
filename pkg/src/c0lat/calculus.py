"""H-infinity functional calculus on matrices: polynomials, finite
Blaschke products, C0 classification and minimal functions.

For a matrix with spectral radius < 1 every Blaschke factor is evaluated
in closed form,

    b_a(T) = (|a|/a) (aI - T)(I - conj(a) T)^{-1},      b_0(T) = T,

and the factors commute, so products are order-independent.  A square
contraction is classified C0 exactly when its spectral radius is strictly
below 1; the minimal function is then the Blaschke product over eigenvalue
clusters with the largest Jordan block size as multiplicity.

Eigenvalue clustering is single-linkage over a short ladder of radii,
walked coarse to fine: a backward-stable eigensolver splits a defective
eigenvalue of multiplicity k by roughly eps**(1/k), so defective clusters
must be merged at a coarse radius, while over-merging of genuinely
distinct eigenvalues is rejected by a Jordan-partition consistency check
and by the annihilation/maximality certificate, which then sends the
search to the next finer radius.
"""

from dataclasses import dataclass

import numpy as np

from .blaschke import BlaschkeProduct, divide, evaluate
from .subspace import op_norm

__all__ = [
    "C0Certificate",
    "ContractionMatrix",
    "NotC0Error",
    "SingularResolventError",
    "VerificationError",
    "apply_blaschke",
    "apply_polynomial",
    "classify_c0",
    "eigenstructure",
    "minimal_function",
    "radial_validate",
    "spectral_radius",
]

ANNIHILATION_TOL = 1e-7
MAXIMALITY_FLOOR = 1e-3
CLUSTER_LADDER = (3e-3, 1e-4, 1e-6, 1e-8)
_JORDAN_RANK_TOL = 1e-7
_RESOLVENT_CAP = 1e12


class NotC0Error(ValueError):
    """Operation requires a C0 matrix (contraction, spectral radius < 1)."""


class SingularResolventError(ValueError):
    """A resolvent (I - conj(a) T)^{-1} is numerically singular."""


class VerificationError(RuntimeError):
    """Internal certification failed; signals eigenstructure numerical trouble."""


def _as_matrix(t) -> np.ndarray:
    if isinstance(t, ContractionMatrix):
        return t.matrix
    a = np.asarray(t, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class ContractionMatrix:
    """A square complex matrix with operator norm at most 1 (+1e-9 slack)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if op_norm(m) > 1.0 + 1e-9:
            raise ValueError(f"operator norm {op_norm(m):.17g} exceeds 1")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class C0Certificate:
    is_c0: bool
    spectral_radius: float
    minimal_function: BlaschkeProduct | None
    annihilation_residual: float

    def to_json_dict(self) -> dict:
        return {
            "is_c0": self.is_c0,
            "spectral_radius": self.spectral_radius,
            "minimal_function": (
                None if self.minimal_function is None else self.minimal_function.to_json_dict()
            ),
            "annihilation_residual": self.annihilation_residual,
        }


def spectral_radius(t) -> float:
    t = _as_matrix(t)
    if t.shape[0] == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(t))))


def apply_polynomial(t, coefficients) -> np.ndarray:
    """Horner evaluation of ``sum a_k T^k`` (coefficients in ascending order)."""
    t = _as_matrix(t)
    coeffs = np.asarray(coefficients, dtype=complex).reshape(-1)
    n = t.shape[0]
    if coeffs.size == 0:
        return np.zeros_like(t)
    result = coeffs[-1] * np.eye(n, dtype=complex)
    for a in coeffs[-2::-1]:
        result = result @ t + a * np.eye(n, dtype=complex)
    return result


def _blaschke_factor(t: np.ndarray, a: complex) -> np.ndarray:
    n = t.shape[0]
    eye = np.eye(n, dtype=complex)
    if a == 0:
        return t.copy()
    resolvent_matrix = eye - np.conj(a) * t
    sv = np.linalg.svd(resolvent_matrix, compute_uv=False)
    if sv[-1] <= 0 or 1.0 / sv[-1] > _RESOLVENT_CAP:
        raise SingularResolventError(
            f"resolvent norm exceeds {_RESOLVENT_CAP:g} for factor at {a}"
        )
    return (abs(a) / a) * np.linalg.solve(resolvent_matrix.T, (a * eye - t).T).T


def apply_blaschke(t, b: BlaschkeProduct) -> np.ndarray:
    """Closed-form evaluation of a finite Blaschke product at a matrix.

    Requires spectral radius < 1 so every resolvent exists; raises
    :class:`SingularResolventError` when a resolvent is numerically
    singular.
    """
    t = _as_matrix(t)
    n = t.shape[0]
    if n and spectral_radius(t) >= 1.0:
        raise NotC0Error("apply_blaschke requires spectral radius < 1")
    out = b.constant * np.eye(n, dtype=complex)
    for a, m in b.zeros:
        factor = _blaschke_factor(t, a)
        for _ in range(m):
            out = out @ factor
    return out


def radial_validate(t, b: BlaschkeProduct, r_sequence) -> list[float]:
    """Residuals ``||B(rT) - B(T)||`` for each radius in ``r_sequence``.

    For inner B the residuals decrease to 0 as r -> 1; suites assert the
    decrease (with 10% slack) rather than this function.
    """
    t = _as_matrix(t)
    rs = [float(r) for r in r_sequence]
    if any(not 0.0 < r < 1.0 for r in rs):
        raise ValueError("radii must lie in (0, 1)")
    limit = apply_blaschke(t, b)
    return [float(op_norm(apply_blaschke(r * t, b) - limit)) for r in rs]


def _single_linkage_clusters(values: np.ndarray, radius: float) -> list[np.ndarray]:
    n = values.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    clusters = [np.array(idx) for idx in groups.values()]
    clusters.sort(key=lambda idx: (values[idx].mean().real, values[idx].mean().imag))
    return clusters


def _nullity(mat: np.ndarray, scale: float) -> int:
    sv = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(sv <= _JORDAN_RANK_TOL * max(1.0, scale)))


def _cluster_partition(t: np.ndarray, mean: complex, size: int) -> tuple | None:
    """Jordan block sizes at ``mean`` from the nullity sequence of powers,
    or None when the sequence is inconsistent with algebraic multiplicity
    ``size`` (the signal that the clustering radius was wrong)."""
    n = t.shape[0]
    a = t - mean * np.eye(n, dtype=complex)
    scale = max(1.0, op_norm(t))
    power = np.eye(n, dtype=complex)
    nullities = [0]
    for _ in range(size):
        power = power @ a
        nullities.append(_nullity(power, scale))
        if nullities[-1] == size:
            break
    if nullities[-1] != size:
        return None
    counts = np.diff(nullities)  # counts[j] = number of blocks of size > j
    if np.any(counts <= 0) or np.any(np.diff(counts) > 0):
        return None
    sizes = []
    for j in range(len(counts) - 1, -1, -1):
        extra = counts[j] - (counts[j + 1] if j + 1 < len(counts) else 0)
        sizes.extend([j + 1] * int(extra))
    sizes.sort(reverse=True)
    if sum(sizes) != size:
        return None
    return tuple(sizes)


def eigenstructure(t) -> list[tuple[complex, tuple]]:
    """Eigenvalue clusters with descending Jordan block sizes.

    Deterministic for a given matrix; used by both the minimal function
    and the Jordan model so the two agree exactly.  Raises
    :class:`VerificationError` when no clustering radius on the ladder
    yields a certified structure; in particular, distinct spectral
    clusters whose pseudo-hyperbolic separation is below the maximality
    floor (1e-3) are not certifiable, by design.
    """
    t = _as_matrix(t)
    n = t.shape[0]
    if n == 0:
        return []
    eig = np.linalg.eigvals(t)
    scale = max(1.0, op_norm(t))
    for radius in CLUSTER_LADDER:
        clusters = _single_linkage_clusters(eig, radius)
        structure = []
        for idx in clusters:
            mean = complex(np.mean(eig[idx]))
            partition = _cluster_partition(t, mean, idx.size)
            if partition is None:
                structure = None
                break
            structure.append((mean, partition))
        if structure is None:
            continue
        candidate = BlaschkeProduct(
            tuple((mean, sizes[0]) for mean, sizes in structure)
        )
        if op_norm(apply_blaschke(t, candidate)) > ANNIHILATION_TOL * scale:
            continue
        maximal_ok = True
        for mean, _ in structure:
            trimmed = divide(candidate, BlaschkeProduct(((mean, 1),)))
            if op_norm(apply_blaschke(t, trimmed)) <= MAXIMALITY_FLOOR:
                maximal_ok = False
                break
        if maximal_ok:
            return structure
    raise VerificationError(
        "could not certify an eigenstructure on the clustering ladder"
    )


def minimal_function(t) -> BlaschkeProduct:
    """The inner generator of the annihilator: product of ``b_lambda`` to the
    largest Jordan-block size, over eigenvalue clusters.

    The certification (annihilation at 1e-7, no proper divisor below 1e-3)
    happens inside :func:`eigenstructure`.
    """
    t = _as_matrix(t)
    cert_radius = spectral_radius(t)
    if t.shape[0] == 0:
        return BlaschkeProduct()
    if op_norm(t) > 1.0 + 1e-9 or cert_radius >= 1.0 - 1e-9:
        raise NotC0Error(
            f"minimal_function requires a C0 matrix (norm <= 1, spectral radius < 1); "
            f"got norm {op_norm(t):.6g}, radius {cert_radius:.6g}"
        )
    structure = eigenstructure(t)
    return BlaschkeProduct(tuple((mean, sizes[0]) for mean, sizes in structure))


def classify_c0(t) -> C0Certificate:
    """Contraction with spectrum inside the disk?  If so, attach the minimal
    function and its annihilation residual."""
    t = _as_matrix(t)
    if t.shape[0] == 0:
        return C0Certificate(True, 0.0, BlaschkeProduct(), 0.0)
    radius = spectral_radius(t)
    is_c0 = op_norm(t) <= 1.0 + 1e-9 and radius < 1.0 - 1e-9
    if not is_c0:
        return C0Certificate(False, radius, None, float("inf"))
    mf = minimal_function(t)
    residual = float(op_norm(apply_blaschke(t, mf)))
    return C0Certificate(True, radius, mf, residual)

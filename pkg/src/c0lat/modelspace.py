"""Model spaces H(theta), their rational orthonormal basis, and the
compressed shift matrix.

For a finite Blaschke product theta with zeros a_1, ..., a_d (repeated by
multiplicity, in canonical order) the space H^2 ⊖ theta H^2 is
d-dimensional and carries the Takenaka-Malmquist basis

    e_k(z) = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z)
             * prod_{j<k} (z - a_j) / (1 - conj(a_j) z).

Inner products are uniform N-point quadrature on the unit circle.  The
trapezoid rule converges geometrically like rmax^N where rmax is the
largest zero modulus, so the default N is the smallest power of two at
least max(4d, 64) *and* large enough to push rmax^N below 1e-16 (capped at
2^15); callers may override ``quadrature_points``.

In this basis the compressed shift comes out lower triangular with the
zeros on the diagonal, which makes eigenstructure easy to eyeball.
"""

from dataclasses import dataclass

import numpy as np

from . import blaschke
from .blaschke import BlaschkeProduct, NotADivisorError
from .subspace import Subspace, op_norm

__all__ = [
    "LatticeCapError",
    "ModelOperator",
    "ModelSpace",
    "basis_eval",
    "compressed_shift",
    "divisor_subspace",
    "enumerate_lattice",
    "inner_product",
]

_QUAD_FLOOR = 64
_QUAD_CAP = 1 << 15
_EIG_MEAN_TOL = 1e-7
_EIG_RAW_GUARD = 1e-3


class LatticeCapError(ValueError):
    """Divisor enumeration would exceed the configured cap."""


def _next_pow2(n: int) -> int:
    p = 1
    while p < n:
        p <<= 1
    return p


def default_quadrature_points(theta: BlaschkeProduct) -> int:
    """Smallest admissible power-of-two node count for ``theta``."""
    d = theta.degree
    need = max(4 * d, _QUAD_FLOOR)
    rmax = max((abs(z) for z, _ in theta.zeros), default=0.0)
    if rmax > 0.5:
        need = max(need, int(np.ceil(np.log(1e-16) / np.log(rmax))))
    return min(_next_pow2(need), _QUAD_CAP)


class ModelSpace:
    """H(theta) with an explicit orthonormal basis and a quadrature grid."""

    def __init__(self, theta: BlaschkeProduct, quadrature_points: int | None = None):
        if theta.degree < 1:
            raise ValueError("model space requires a nonconstant inner function")
        n = quadrature_points if quadrature_points is not None else default_quadrature_points(theta)
        if n < 4 * theta.degree or n & (n - 1):
            raise ValueError(
                f"quadrature_points must be a power of two >= 4*degree; got {n}"
            )
        self.theta = theta
        self.zero_order = theta.zero_sequence()
        self.quadrature_points = n
        self._nodes = None
        self._basis_values = None

    @property
    def dim(self) -> int:
        return len(self.zero_order)

    @property
    def nodes(self) -> np.ndarray:
        """The uniform unit-circle quadrature nodes."""
        if self._nodes is None:
            n = self.quadrature_points
            self._nodes = np.exp(2j * np.pi * np.arange(n) / n)
        return self._nodes

    def basis_values(self) -> np.ndarray:
        """d x N matrix of basis values on the grid (row k-1 holds e_k)."""
        if self._basis_values is None:
            self._basis_values = self._evaluate_basis(self.nodes)
        return self._basis_values

    def _evaluate_basis(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        out = np.empty((self.dim, z.size), dtype=complex)
        carried = np.ones_like(z)
        for k, a in enumerate(self.zero_order):
            denom = 1.0 - np.conj(a) * z
            out[k] = np.sqrt(1.0 - abs(a) ** 2) / denom * carried
            carried = carried * (z - a) / denom
        return out

    def basis_eval(self, k: int, z):
        """Value of e_k (mathematical indexing, 1 <= k <= d) at ``z``."""
        if not 1 <= k <= self.dim:
            raise IndexError(f"basis index {k} outside 1..{self.dim}")
        za = np.asarray(z, dtype=complex)
        if np.any(np.abs(za) > 1.0 + 1e-12):
            raise ValueError("basis evaluation point outside the closed disk")
        vals = self._evaluate_basis(za.reshape(-1))[k - 1]
        if za.ndim == 0:
            return complex(vals[0])
        return vals.reshape(za.shape)

    def _values_on_grid(self, f) -> np.ndarray:
        if callable(f):
            return np.asarray(f(self.nodes), dtype=complex).reshape(self.quadrature_points)
        coeffs = np.asarray(f, dtype=complex).reshape(-1)
        if coeffs.size != self.dim:
            raise ValueError(
                f"coefficient vector of length {coeffs.size} for dimension {self.dim}"
            )
        return coeffs @ self.basis_values()

    def inner_product(self, f, g) -> complex:
        """Quadrature inner product ``(1/N) sum f(z_j) conj(g(z_j))``.

        Each argument is either a callable evaluated on the grid or a
        coefficient vector against the e-basis.
        """
        fv = self._values_on_grid(f)
        gv = self._values_on_grid(g)
        return complex(np.sum(fv * np.conj(gv)) / self.quadrature_points)

    def shift_matrix(self) -> np.ndarray:
        """Matrix of the compressed shift: M[j, k] = <z e_{k+1}, e_{j+1}>."""
        e = self.basis_values()
        return (np.conj(e) @ (self.nodes * e).T) / self.quadrature_points

    def expand(self, values_on_grid: np.ndarray) -> np.ndarray:
        """Coefficients of grid samples against the e-basis (rows of values)."""
        e = self.basis_values()
        return (np.conj(e) @ values_on_grid.T) / self.quadrature_points

    def divisor_subspace(self, phi: BlaschkeProduct) -> Subspace:
        """Coordinates of ``phi H^2 ⊖ theta H^2`` inside H(theta)."""
        if not blaschke.divides(phi, self.theta):
            raise NotADivisorError(f"{phi} does not divide {self.theta}")
        codim = phi.degree
        d = self.dim
        if codim == d:
            return Subspace.zero(d)
        if codim == 0:
            return Subspace.full(d)
        quotient = blaschke.divide(self.theta, phi)
        inner = ModelSpace(quotient, self.quadrature_points)
        phi_vals = blaschke.evaluate(phi, self.nodes)
        spanning = phi_vals[None, :] * inner._evaluate_basis(self.nodes)
        coords = self.expand(spanning)
        out = Subspace.from_span(coords, d)
        if out.dim != d - codim:
            raise ValueError(
                f"divisor subspace came out with dimension {out.dim}, expected {d - codim}"
            )
        return out


@dataclass(frozen=True)
class ModelOperator:
    """The compressed shift S(theta) as a concrete matrix in the e-basis."""

    theta: BlaschkeProduct
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        d = self.theta.degree
        if m.shape != (d, d):
            raise ValueError(f"matrix shape {m.shape} does not match degree {d}")
        if op_norm(m) > 1.0 + 1e-9:
            raise ValueError(f"operator norm {op_norm(m):.17g} exceeds 1")
        mean_resid, raw_excess = _eigenvalue_multiset_residual(m, self.theta)
        if mean_resid > _EIG_MEAN_TOL or raw_excess > 0.0:
            raise ValueError(
                "matrix eigenvalues do not reproduce the zero multiset "
                f"(cluster-mean residual {mean_resid:.3g}, raw excess {raw_excess:.3g})"
            )
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def to_json_dict(self) -> dict:
        return {
            "theta": self.theta.to_json_dict(),
            "matrix": [
                [[float(x.real), float(x.imag)] for x in row] for row in self.matrix
            ],
        }

    @classmethod
    def from_json_dict(cls, data) -> "ModelOperator":
        theta = BlaschkeProduct.from_json_dict(data["theta"])
        matrix = np.array(
            [[complex(re, im) for re, im in row] for row in data["matrix"]],
            dtype=complex,
        )
        return cls(theta, matrix)


def _eigenvalue_multiset_residual(matrix: np.ndarray, theta: BlaschkeProduct):
    """Match eigenvalues to theta's zeros optimally; return the worst
    per-zero cluster-mean error and the worst multiplicity-scaled raw
    excess.

    A defective zero of multiplicity m is split by a backward-stable
    eigensolver on the order of eps**(1/m), while the mean of its cluster
    is trace-accurate; so the 1e-7 tolerance applies to the mean, and the
    raw distances only guard against nonsense matchings, with an allowance
    of max(1e-3, 25 * eps**(1/m)) per zero.
    """
    from scipy.optimize import linear_sum_assignment

    zeros = np.array(theta.zero_sequence())
    eig = np.linalg.eigvals(matrix)
    cost = np.abs(np.subtract.outer(zeros, eig))
    rows, cols = linear_sum_assignment(cost)
    assigned = eig[cols[np.argsort(rows)]]
    eps = np.finfo(float).eps
    mean_resid = 0.0
    raw_excess = 0.0
    start = 0
    for z, m in theta.zeros:
        block = assigned[start : start + m]
        mean_resid = max(mean_resid, abs(np.mean(block) - z))
        allowance = max(_EIG_RAW_GUARD, 25.0 * eps ** (1.0 / m))
        raw_excess = max(raw_excess, float(np.max(np.abs(block - z))) - allowance)
        start += m
    return mean_resid, raw_excess


def basis_eval(space: ModelSpace, k: int, z):
    """Module-level alias for :meth:`ModelSpace.basis_eval`."""
    return space.basis_eval(k, z)


def inner_product(space: ModelSpace, f, g) -> complex:
    """Module-level alias for :meth:`ModelSpace.inner_product`."""
    return space.inner_product(f, g)


def compressed_shift(theta: BlaschkeProduct, quadrature_points: int | None = None) -> ModelOperator:
    """The compressed shift S(theta) in the Takenaka-Malmquist basis."""
    if theta.degree < 1:
        raise ValueError("compressed shift requires a nonconstant inner function")
    space = ModelSpace(theta, quadrature_points)
    return ModelOperator(theta, space.shift_matrix())


def divisor_subspace(theta: BlaschkeProduct, phi: BlaschkeProduct) -> Subspace:
    """Subspace of H(theta) spanned by ``phi * (basis of H(theta/phi))``."""
    return ModelSpace(theta).divisor_subspace(phi)


def enumerate_lattice(theta: BlaschkeProduct, cap: int = 4096):
    """One ``(divisor, Subspace)`` entry per inner divisor of theta.

    Entries are sorted by divisor degree (so by *reverse* inclusion of the
    subspaces: larger divisors give smaller subspaces).  Raises
    :class:`LatticeCapError` when the divisor count exceeds ``cap``.
    """
    count = blaschke.divisor_count(theta)
    if count > cap:
        raise LatticeCapError(f"theta has {count} divisors, exceeding cap {cap}")
    space = ModelSpace(theta)
    return [(phi, space.divisor_subspace(phi)) for phi in blaschke.divisors(theta)]

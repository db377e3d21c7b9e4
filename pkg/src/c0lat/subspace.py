"""Numerical subspace-lattice operations and finite abstract lattices.

Subspaces carry an ambient dimension and an orthonormal column basis; meets
go through principal vectors, joins through rank-revealing
orthogonalization.  A single set of tolerances lives here and is imported
by every other module, so there is one place to tune:

* ``TOL_RANK``    relative singular-value threshold for rank decisions
* ``TOL_MEET_ANGLE`` principal-angle threshold for intersections
* ``TOL_EQUALS``  containment / equality of subspaces
* ``TOL_INVARIANT`` invariance residual scale
* ``TOL_INTERTWINE`` intertwining residual scale
"""

from typing import NamedTuple

import numpy as np

__all__ = [
    "TOL_EQUALS",
    "TOL_INTERTWINE",
    "TOL_INVARIANT",
    "TOL_MEET_ANGLE",
    "TOL_ORTHO",
    "TOL_RANK",
    "FiniteLattice",
    "InvarianceVerdict",
    "LatticeVerdict",
    "Subspace",
    "TripleVerdict",
    "check_distributive_triple",
    "check_modular_triple",
    "contains",
    "cyclic_multiplicity",
    "cyclic_subspace",
    "distance",
    "equals",
    "is_invariant",
    "join",
    "lattice_is_distributive",
    "lattice_is_modular",
    "meet",
    "op_norm",
]

TOL_RANK = 1e-10
TOL_ORTHO = 1e-10
TOL_MEET_ANGLE = 1e-8
TOL_EQUALS = 1e-7
TOL_INVARIANT = 1e-8
TOL_INTERTWINE = 1e-9


def op_norm(m) -> float:
    """Spectral norm; 0 for empty matrices."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def _complex_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {a.shape}")
    return a


class Subspace:
    """A subspace of C^n held as an orthonormal coordinate basis.

    ``basis`` is an ``ambient_dim x k`` complex matrix with orthonormal
    columns (``k`` may be 0 for the zero subspace).  Instances are
    immutable; the stored array is marked read-only.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis):
        basis = _complex_matrix(basis)
        if basis.shape[0] != ambient_dim:
            raise ValueError(
                f"basis has {basis.shape[0]} rows for ambient dimension {ambient_dim}"
            )
        k = basis.shape[1]
        if k > ambient_dim:
            raise ValueError(f"basis has {k} columns in ambient dimension {ambient_dim}")
        if k:
            gram = basis.conj().T @ basis
            if np.max(np.abs(gram - np.eye(k))) > TOL_ORTHO:
                raise ValueError("basis columns are not orthonormal")
        basis = basis.copy()
        basis.flags.writeable = False
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_span(cls, columns, ambient_dim: int | None = None) -> "Subspace":
        """Orthonormalize the column span, dropping directions with singular
        value below ``TOL_RANK * sigma_max``."""
        a = _complex_matrix(columns)
        n = ambient_dim if ambient_dim is not None else a.shape[0]
        if a.shape[0] != n:
            raise ValueError("column length does not match ambient dimension")
        if a.shape[1] == 0:
            return cls.zero(n)
        u, s, _ = np.linalg.svd(a, full_matrices=False)
        if s.size == 0 or s[0] <= 0:
            return cls.zero(n)
        r = int(np.sum(s > TOL_RANK * s[0]))
        return cls(n, u[:, :r])

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.eye(ambient_dim, dtype=complex))

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def project(self, vectors) -> np.ndarray:
        v = np.asarray(vectors, dtype=complex)
        return self.basis @ (self.basis.conj().T @ v)

    def to_json_dict(self) -> dict:
        return {
            "ambient": self.ambient_dim,
            "basis": [
                [[float(x.real), float(x.imag)] for x in self.basis[:, j]]
                for j in range(self.dim)
            ],
        }

    @classmethod
    def from_json_dict(cls, data) -> "Subspace":
        n = int(data["ambient"])
        cols = data["basis"]
        if not cols:
            return cls.zero(n)
        mat = np.array(
            [[complex(re, im) for re, im in col] for col in cols], dtype=complex
        ).T
        return cls(n, mat)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check_same_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(
            f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}"
        )


def join(a: Subspace, b: Subspace) -> Subspace:
    """Closed span of the union."""
    _check_same_ambient(a, b)
    return Subspace.from_span(np.hstack([a.basis, b.basis]), a.ambient_dim)


def meet(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via principal vectors.

    A principal direction is kept when its principal angle is at most
    ``TOL_MEET_ANGLE``; the angle is measured through the projection
    residual (the sine of the angle), which stays well conditioned where
    the cosine saturates.
    """
    _check_same_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    m = a.basis.conj().T @ b.basis
    _, _, vh = np.linalg.svd(m)
    w = b.basis @ vh.conj().T  # principal directions inside b
    resid = w - a.project(w)
    sines = np.linalg.norm(resid, axis=0)
    keep = sines <= TOL_MEET_ANGLE
    if not np.any(keep):
        return Subspace.zero(a.ambient_dim)
    return Subspace.from_span(a.project(w[:, keep]), a.ambient_dim)


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff ``b`` lies inside ``a`` within ``TOL_EQUALS``."""
    _check_same_ambient(a, b)
    if b.dim == 0:
        return True
    resid = b.basis - a.project(b.basis)
    return op_norm(resid) <= TOL_EQUALS


def equals(a: Subspace, b: Subspace) -> bool:
    """Mutual containment."""
    return contains(a, b) and contains(b, a)


def distance(a: Subspace, b: Subspace) -> float:
    """Projector-gap distance ``|| P_a - P_b ||`` (the sine of the largest
    principal angle for equal dimensions; 1 when dimensions differ)."""
    _check_same_ambient(a, b)
    return op_norm(a.projector() - b.projector())


class InvarianceVerdict(NamedTuple):
    invariant: bool
    residual: float


class TripleVerdict(NamedTuple):
    passed: bool
    residual: float


class LatticeVerdict(NamedTuple):
    passed: bool
    witness: dict | None


def is_invariant(t, m: Subspace) -> InvarianceVerdict:
    """Residual ``||(I - P_M) T P_M||`` and the verdict at ``TOL_INVARIANT * max(1, ||T||)``."""
    t = _complex_matrix(t)
    if t.shape[0] != t.shape[1] or t.shape[0] != m.ambient_dim:
        raise ValueError("operator size does not match ambient dimension")
    if m.dim == 0:
        return InvarianceVerdict(True, 0.0)
    tb = t @ m.basis
    resid = op_norm(tb - m.project(tb))
    return InvarianceVerdict(resid <= TOL_INVARIANT * max(1.0, op_norm(t)), resid)


def cyclic_subspace(t, x) -> Subspace:
    """Krylov span ``{x, Tx, T^2 x, ...}``, stopped when the rank stabilizes."""
    t = _complex_matrix(t)
    n = t.shape[0]
    x = np.asarray(x, dtype=complex).reshape(n)
    scale = max(1.0, op_norm(t))
    nx = np.linalg.norm(x)
    if nx <= TOL_RANK:
        return Subspace.zero(n)
    cols = [x / nx]
    v = cols[0]
    for _ in range(n - 1):
        w = t @ v
        for _ in range(2):  # reorthogonalize for stability
            for c in cols:
                w = w - c * (c.conj() @ w)
        nw = np.linalg.norm(w)
        if nw <= TOL_RANK * scale:
            break
        w = w / nw
        cols.append(w)
        v = w
    return Subspace(n, np.column_stack(cols))


def cyclic_multiplicity(t, seed: int = 0, trials: int = 20) -> int:
    """Smallest number of vectors whose joint orbit spans the space.

    Scans m = 1, 2, ... and returns the first m for which some seeded draw
    of m Gaussian vectors has cyclic subspaces joining to the full space (a
    spanning draw is a constructive witness; the failed trials at m - 1
    support minimality).  A greedy deflation pass provides the witness
    vectors for the returned m.
    """
    t = _complex_matrix(t)
    n = t.shape[0]
    if n > 12:
        raise ValueError("cyclic_multiplicity is capped at ambient dimension 12")
    if n == 0:
        return 0
    for m in range(1, n + 1):
        for trial in range(trials):
            rng = np.random.default_rng(seed + 1000 * m + trial)
            space = Subspace.zero(n)
            for _ in range(m):
                v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
                space = join(space, cyclic_subspace(t, v))
            if space.dim == n:
                return m
    return n


def check_modular_triple(l: Subspace, m: Subspace, n: Subspace) -> TripleVerdict:
    """Both sides of ``L ∩ (M ∨ N) = (L ∩ M) ∨ N``; requires ``N ⊆ L``."""
    if not contains(l, n):
        raise ValueError("modular-triple precondition violated: N is not contained in L")
    lhs = meet(l, join(m, n))
    rhs = join(meet(l, m), n)
    return TripleVerdict(equals(lhs, rhs), distance(lhs, rhs))


def check_distributive_triple(l: Subspace, m: Subspace, n: Subspace) -> TripleVerdict:
    """Both sides of ``L ∩ (M ∨ N) = (L ∩ M) ∨ (L ∩ N)``."""
    _check_same_ambient(l, m)
    _check_same_ambient(l, n)
    lhs = meet(l, join(m, n))
    rhs = join(meet(l, m), meet(l, n))
    return TripleVerdict(equals(lhs, rhs), distance(lhs, rhs))


class FiniteLattice:
    """A finite lattice given by opaque element labels and a ≤ relation.

    The relation is validated to be a partial order with unique pairwise
    meets and joins at construction; meet/join tables are precomputed.
    """

    MAX_ELEMENTS = 4096

    def __init__(self, labels, leq):
        labels = tuple(labels)
        leq = np.asarray(leq, dtype=bool)
        n = len(labels)
        if n > self.MAX_ELEMENTS:
            raise ValueError(f"lattice size {n} exceeds cap {self.MAX_ELEMENTS}")
        if leq.shape != (n, n):
            raise ValueError("leq must be a square boolean matrix matching labels")
        if not np.all(np.diag(leq)):
            raise ValueError("leq is not reflexive")
        if np.any(leq & leq.T & ~np.eye(n, dtype=bool)):
            raise ValueError("leq is not antisymmetric")
        closure = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
        if np.any(closure & ~leq):
            raise ValueError("leq is not transitive")
        self.labels = labels
        self.leq = leq.copy()
        self.leq.flags.writeable = False
        self._meet = np.empty((n, n), dtype=np.int64)
        self._join = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                self._meet[i, j] = self._meet[j, i] = self._extreme(i, j, lower=True)
                self._join[i, j] = self._join[j, i] = self._extreme(i, j, lower=False)

    def _extreme(self, i, j, lower: bool) -> int:
        if lower:
            mask = self.leq[:, i] & self.leq[:, j]
        else:
            mask = self.leq[i, :] & self.leq[j, :]
        members = np.flatnonzero(mask)
        if members.size == 0:
            raise ValueError(f"elements {i}, {j} have no common {'lower' if lower else 'upper'} bound")
        sub = self.leq[np.ix_(members, members)]
        if lower:
            best = np.flatnonzero(sub.all(axis=0))  # above every lower bound
        else:
            best = np.flatnonzero(sub.all(axis=1))  # below every upper bound
        if best.size != 1:
            kind = "meet" if lower else "join"
            raise ValueError(f"elements {i}, {j} do not have a unique {kind}")
        return int(members[best[0]])

    @property
    def n(self) -> int:
        return len(self.labels)

    def meet_of(self, i: int, j: int) -> int:
        return int(self._meet[i, j])

    def join_of(self, i: int, j: int) -> int:
        return int(self._join[i, j])

    @classmethod
    def pentagon(cls) -> "FiniteLattice":
        """N5: 0 < a < c < 1 and 0 < b < 1 with b incomparable to a, c."""
        labels = ("0", "a", "b", "c", "1")
        leq = np.eye(5, dtype=bool)
        order = {(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4), (3, 4)}
        for i, j in order:
            leq[i, j] = True
        return cls(labels, leq)

    @classmethod
    def diamond(cls) -> "FiniteLattice":
        """M3: three pairwise-incomparable atoms between 0 and 1."""
        labels = ("0", "a", "b", "c", "1")
        leq = np.eye(5, dtype=bool)
        for i in (1, 2, 3):
            leq[0, i] = True
            leq[i, 4] = True
        leq[0, 4] = True
        return cls(labels, leq)

    @classmethod
    def from_subspaces(cls, subspaces, cap: int = 4096):
        """Close a list of subspaces under meet and join, then build the lattice.

        Returns ``(lattice, elements)`` where ``elements[i]`` is the
        :class:`Subspace` behind label ``i``.  Identification of computed
        meets/joins with existing elements uses :func:`equals`.
        """
        elements: list[Subspace] = []

        def locate(s: Subspace) -> int | None:
            for idx, e in enumerate(elements):
                if s.dim == e.dim and equals(s, e):
                    return idx
            return None

        for s in subspaces:
            if locate(s) is None:
                elements.append(s)
        if not elements:
            raise ValueError("cannot build a lattice from no subspaces")
        frontier = list(range(len(elements)))
        while frontier:
            new_frontier = []
            pairs = [
                (i, j)
                for i in range(len(elements))
                for j in frontier
                if j >= i
            ]
            for i, j in pairs:
                for combo in (meet(elements[i], elements[j]), join(elements[i], elements[j])):
                    if locate(combo) is None:
                        if len(elements) >= cap:
                            raise ValueError(f"lattice closure exceeds cap {cap}")
                        elements.append(combo)
                        new_frontier.append(len(elements) - 1)
            frontier = new_frontier
        n = len(elements)
        leq = np.zeros((n, n), dtype=bool)
        for i in range(n):
            for j in range(n):
                leq[i, j] = contains(elements[j], elements[i])
        return cls(tuple(range(n)), leq), elements


def lattice_is_modular(lat: FiniteLattice) -> LatticeVerdict:
    """Exhaustive modular-law check; returns the first violating triple as witness."""
    n = lat.n
    mt, jt, leq = lat._meet, lat._join, lat.leq
    for i in range(n):  # i plays L
        lhs = mt[i, jt]                 # lhs[j, k] = L ∧ (M_j ∨ N_k)
        rhs = jt[mt[i, :], :]           # rhs[j, k] = (L ∧ M_j) ∨ N_k
        mask = leq[:, i][None, :]       # N_k ⊆ L
        bad = (lhs != rhs) & mask
        if np.any(bad):
            j, k = map(int, np.argwhere(bad)[0])
            return LatticeVerdict(
                False,
                {
                    "triple": (i, j, k),
                    "labels": (lat.labels[i], lat.labels[j], lat.labels[k]),
                    "lhs": lat.labels[int(lhs[j, k])],
                    "rhs": lat.labels[int(rhs[j, k])],
                },
            )
    return LatticeVerdict(True, None)


def lattice_is_distributive(lat: FiniteLattice) -> LatticeVerdict:
    """Exhaustive distributive-law check; returns the first violating triple."""
    n = lat.n
    mt, jt = lat._meet, lat._join
    for i in range(n):
        lhs = mt[i, jt]                     # L ∧ (M_j ∨ N_k)
        rhs = jt[mt[i, :][:, None], mt[i, :][None, :]]  # (L∧M_j) ∨ (L∧N_k)
        bad = lhs != rhs
        if np.any(bad):
            j, k = map(int, np.argwhere(bad)[0])
            return LatticeVerdict(
                False,
                {
                    "triple": (i, j, k),
                    "labels": (lat.labels[i], lat.labels[j], lat.labels[k]),
                    "lhs": lat.labels[int(lhs[j, k])],
                    "rhs": lat.labels[int(rhs[j, k])],
                },
            )
    return LatticeVerdict(True, None)

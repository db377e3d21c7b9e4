"""Finite Blaschke products: evaluation and divisor arithmetic.

A finite Blaschke product is a multiset of zeros in the open unit disk
together with a unimodular constant.  The elementary factor convention is

    b_a(z) = (|a|/a) * (a - z) / (1 - conj(a) * z)    for a != 0,
    b_0(z) = z,

so that b_a(0) = |a| > 0 and the constant sitting in front of a given zero
multiset is canonical.  Divisibility, gcd and lcm reduce to multiset
arithmetic on the zeros; two products are *equivalent* when their zero
multisets agree, i.e. when they differ by a unimodular constant only.

Zero equality is exact complex equality: nearby-but-distinct zeros are
never merged, because silent merging corrupts divisibility.  Code that
compares products coming out of two independent numerical computations
should use :func:`almost_equiv` instead of :func:`equiv`.
"""

import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEGREE_CAP",
    "BlaschkeProduct",
    "DegreeCapError",
    "NotADivisorError",
    "UnitDiskPoint",
    "almost_equiv",
    "divide",
    "divides",
    "divisor_count",
    "divisors",
    "elementary",
    "equiv",
    "evaluate",
    "gcd",
    "lcm",
    "monomial",
    "multiply",
]

#: Default cap on the total zero count; bounds downstream matrix sizes.
DEGREE_CAP = 64

_UNIT_TOL = 1e-12
_BOUNDARY_TOL = 1e-12


class DegreeCapError(ValueError):
    """Construction would exceed the configured degree cap."""


class NotADivisorError(ValueError):
    """Requested quotient does not exist in the inner-divisor order."""


@dataclass(frozen=True)
class UnitDiskPoint:
    """A point strictly inside the open unit disk.

    Rejected at construction when ``|value| >= 1 - 1e-12``; zeros that close
    to the boundary are numerically indistinguishable from boundary points.
    """

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if abs(v) >= 1.0 - _UNIT_TOL:
            raise ValueError(
                f"unit-disk point must satisfy |z| < 1 - {_UNIT_TOL:g}; got |z| = {abs(v):.17g}"
            )
        object.__setattr__(self, "value", v)


def _coerce_zeros(zeros):
    """Normalize assorted zero inputs into a merged, canonically sorted tuple."""
    counts: dict[complex, int] = {}
    for item in zeros:
        if isinstance(item, UnitDiskPoint):
            z, m = item.value, 1
        elif isinstance(item, tuple):
            z, m = item
            z = z.value if isinstance(z, UnitDiskPoint) else complex(z)
        else:
            z, m = complex(item), 1
        m = int(m)
        if m < 1:
            raise ValueError(f"zero multiplicity must be a positive integer; got {m}")
        UnitDiskPoint(z)  # validates the disk invariant
        counts[z] = counts.get(z, 0) + m
    ordered = sorted(counts.items(), key=lambda zm: (zm[0].real, zm[0].imag))
    return tuple(ordered)


@dataclass(frozen=True)
class BlaschkeProduct:
    """A finite Blaschke product ``constant * prod b_a(z)^mult``.

    ``zeros`` is stored as a tuple of ``(zero, multiplicity)`` pairs in a
    canonical order (lexicographic by real then imaginary part), with exact
    duplicates merged, so structural equality and hashing are well defined.
    ``constant`` must be unimodular.  Degree 0 means a plain constant.
    """

    zeros: tuple = ()
    constant: complex = 1.0 + 0.0j

    def __post_init__(self):
        merged = _coerce_zeros(self.zeros)
        c = complex(self.constant)
        if abs(abs(c) - 1.0) > _UNIT_TOL:
            raise ValueError(f"constant must be unimodular; got |c| = {abs(c):.17g}")
        degree = sum(m for _, m in merged)
        if degree > DEGREE_CAP:
            raise DegreeCapError(f"degree {degree} exceeds cap {DEGREE_CAP}")
        object.__setattr__(self, "zeros", merged)
        object.__setattr__(self, "constant", c)

    @classmethod
    def from_zeros(cls, zeros, constant=1.0 + 0.0j):
        """Build a product from an iterable of zeros, ``(zero, mult)`` pairs,
        or :class:`UnitDiskPoint` instances."""
        return cls(tuple(zeros) if not isinstance(zeros, tuple) else zeros, constant)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.zeros)

    @property
    def is_constant(self) -> bool:
        return not self.zeros

    def zero_multiset(self) -> dict:
        """Zeros as a ``{zero: multiplicity}`` dict (a fresh copy)."""
        return dict(self.zeros)

    def zero_sequence(self) -> tuple:
        """Zeros repeated by multiplicity, in canonical order."""
        return tuple(z for z, m in self.zeros for _ in range(m))

    def to_json_dict(self) -> dict:
        return {
            "zeros": [
                {"re": z.real, "im": z.imag, "mult": m} for z, m in self.zeros
            ],
            "constant": {"re": self.constant.real, "im": self.constant.imag},
        }

    @classmethod
    def from_json_dict(cls, data) -> "BlaschkeProduct":
        zeros = [
            (complex(item["re"], item["im"]), int(item["mult"]))
            for item in data["zeros"]
        ]
        c = data.get("constant", {"re": 1.0, "im": 0.0})
        return cls(tuple(zeros), complex(c["re"], c["im"]))

    def __str__(self):
        if not self.zeros:
            return f"B[{self.constant:.4g}]"
        parts = []
        for z, m in self.zeros:
            head = "z" if z == 0 else f"b({z:.4g})"
            parts.append(head if m == 1 else f"{head}^{m}")
        prefix = "" if self.constant == 1 else f"{self.constant:.4g}*"
        return "B[" + prefix + "*".join(parts) + "]"


def elementary(a, constant=1.0 + 0.0j) -> BlaschkeProduct:
    """The degree-one product with a single zero at ``a``."""
    return BlaschkeProduct(((complex(a), 1),), constant)


def monomial(n: int, constant=1.0 + 0.0j) -> BlaschkeProduct:
    """``z**n``: a zero at the origin with multiplicity ``n`` (``n = 0`` gives a constant)."""
    if n < 0:
        raise ValueError("monomial degree must be nonnegative")
    return BlaschkeProduct(((0.0 + 0.0j, n),) if n else (), constant)


def evaluate(b: BlaschkeProduct, z):
    """Evaluate ``b`` at a point (or ndarray of points) of the closed disk.

    Raises a domain error when ``|z| > 1 + 1e-12``.  The result satisfies
    ``|evaluate(b, z)| <= 1`` on the closed disk and ``= 1`` on the circle,
    up to roundoff.
    """
    za = np.asarray(z, dtype=complex)
    if np.any(np.abs(za) > 1.0 + _BOUNDARY_TOL):
        worst = float(np.max(np.abs(za)))
        raise ValueError(f"evaluation point outside the closed disk: |z| = {worst:.17g}")
    out = np.full_like(za, b.constant)
    for a, m in b.zeros:
        if a == 0:
            factor = za
        else:
            factor = (abs(a) / a) * (a - za) / (1.0 - np.conj(a) * za)
        out = out * factor**m
    if za.ndim == 0:
        return complex(out)
    return out


def multiply(b1: BlaschkeProduct, b2: BlaschkeProduct) -> BlaschkeProduct:
    """Product: multiset union of zeros, product of constants.  Degree is additive."""
    return BlaschkeProduct(b1.zeros + b2.zeros, b1.constant * b2.constant)


def divides(b1: BlaschkeProduct, b2: BlaschkeProduct) -> bool:
    """True iff the zero multiset of ``b1`` is contained in that of ``b2``.

    Constants are ignored: units divide everything.
    """
    big = b2.zero_multiset()
    return all(big.get(z, 0) >= m for z, m in b1.zeros)


def gcd(b1: BlaschkeProduct, b2: BlaschkeProduct) -> BlaschkeProduct:
    """Greatest common inner divisor: pointwise minimum of multiplicities, constant 1."""
    other = b2.zero_multiset()
    zeros = tuple(
        (z, min(m, other[z])) for z, m in b1.zeros if other.get(z, 0) > 0
    )
    return BlaschkeProduct(zeros)


def lcm(b1: BlaschkeProduct, b2: BlaschkeProduct) -> BlaschkeProduct:
    """Least common inner multiple: pointwise maximum of multiplicities, constant 1."""
    counts = b1.zero_multiset()
    for z, m in b2.zeros:
        counts[z] = max(counts.get(z, 0), m)
    return BlaschkeProduct(tuple(counts.items()))


def equiv(b1: BlaschkeProduct, b2: BlaschkeProduct) -> bool:
    """Equality up to a unimodular constant: exact zero-multiset equality."""
    return b1.zeros == b2.zeros


def divide(numerator: BlaschkeProduct, divisor: BlaschkeProduct) -> BlaschkeProduct:
    """Quotient ``phi`` with ``divisor * phi == numerator`` (exactly, constants included).

    Raises :class:`NotADivisorError` when ``divisor`` does not divide
    ``numerator``.
    """
    if not divides(divisor, numerator):
        raise NotADivisorError(f"{divisor} does not divide {numerator}")
    counts = numerator.zero_multiset()
    for z, m in divisor.zeros:
        counts[z] -= m
    zeros = tuple((z, m) for z, m in counts.items() if m > 0)
    return BlaschkeProduct(zeros, numerator.constant / divisor.constant)


def almost_equiv(b1: BlaschkeProduct, b2: BlaschkeProduct, tol: float = 1e-7) -> bool:
    """Numerical equivalence: same degree and an optimal matching of the two
    zero sequences with every matched pair within ``tol``.

    This is the comparison to use across independent numerical computations,
    where :func:`equiv`'s exact complex equality is too strict.
    """
    s1, s2 = b1.zero_sequence(), b2.zero_sequence()
    if len(s1) != len(s2):
        return False
    if not s1:
        return True
    from scipy.optimize import linear_sum_assignment

    cost = np.abs(np.subtract.outer(np.array(s1), np.array(s2)))
    rows, cols = linear_sum_assignment(cost)
    return bool(np.max(cost[rows, cols]) <= tol)


def divisor_count(b: BlaschkeProduct) -> int:
    """Number of inner divisors of ``b``: the product of (multiplicity + 1)."""
    count = 1
    for _, m in b.zeros:
        count *= m + 1
    return count


def divisors(b: BlaschkeProduct, cap: int | None = None):
    """All inner divisors of ``b`` (constant 1), sorted by degree then zeros.

    Raises ``ValueError`` when the divisor count exceeds ``cap``.
    """
    total = divisor_count(b)
    if cap is not None and total > cap:
        raise ValueError(f"divisor count {total} exceeds cap {cap}")
    points = [z for z, _ in b.zeros]
    ranges = [range(m + 1) for _, m in b.zeros]
    out = []
    for mults in itertools.product(*ranges):
        zeros = tuple((z, m) for z, m in zip(points, mults) if m > 0)
        out.append(BlaschkeProduct(zeros))
    out.sort(key=lambda d: (d.degree, tuple((z.real, z.imag, m) for z, m in d.zeros)))
    return out

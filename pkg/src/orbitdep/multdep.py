"""Multiplicative dependence of tuples of nonzero rationals.

Dependence is decided over the exponent lattice of a coprime basis built
by gcd refinement, never by factoring the inputs.  Signs enter as a parity
condition that doubling a kernel vector always satisfies, so a tuple is
dependent exactly when the exponent kernel is nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .errors import DomainError
from .exactmath import as_rational, factor_refine, left_kernel

#: Subset enumeration limit for rank computation.
RANK_LIMIT = 12


class DependenceStatus(Enum):
    DEPENDENT = "dependent"
    INDEPENDENT = "independent"
    UNDEFINED = "undefined"


@dataclass(frozen=True, slots=True)
class MultRelation:
    """Nonzero integer vector k certifying prod(nu_i ** k_i) == 1."""

    k: tuple[int, ...]

    def __post_init__(self):
        if not any(self.k):
            raise DomainError("a multiplicative relation must be nonzero")

    def verify(self, values) -> bool:
        product = Fraction(1)
        for v, e in zip(values, self.k):
            product *= as_rational(v) ** e
        return product == 1


@dataclass(frozen=True, slots=True)
class DependenceVerdict:
    status: DependenceStatus
    relation: MultRelation | None = None
    rank: int | None = None


def _exponent_rows(values):
    """Signed exponent rows of the values over a shared coprime basis."""
    ints = []
    for v in values:
        ints.append(v.numerator)
        ints.append(v.denominator)
    basis = factor_refine(ints)
    rows = []
    signs = []
    for i, v in enumerate(values):
        num = basis.exponents[2 * i]
        den = basis.exponents[2 * i + 1]
        rows.append(tuple(a - b for a, b in zip(num, den)))
        signs.append(v < 0)
    return rows, signs


def _sign_parity(k, signs) -> int:
    return sum(e for e, neg in zip(k, signs) if neg) % 2


def certificate_from_kernel(kernel, signs) -> tuple[int, ...]:
    """Canonical certificate: first Hermite basis vector, doubled when the
    sign parity would flip the product to -1."""
    k = kernel[0]
    if _sign_parity(k, signs):
        k = tuple(2 * e for e in k)
    return k


def test_dependence(nu) -> DependenceVerdict:
    """Decide dependence of a tuple of rationals, with a verified certificate.

    Tuples containing zero are Undefined by convention, not an error.
    """
    values = [as_rational(v) for v in nu]
    if any(v == 0 for v in values):
        return DependenceVerdict(DependenceStatus.UNDEFINED)
    rows, signs = _exponent_rows(values)
    kernel = left_kernel(rows)
    if not kernel:
        rank = len(values) if len(values) <= RANK_LIMIT else None
        return DependenceVerdict(DependenceStatus.INDEPENDENT, rank=rank)
    k = certificate_from_kernel(kernel, signs)
    relation = MultRelation(k)
    assert relation.verify(values), "dependence certificate failed verification"
    rank = _rank(values, rows) if len(values) <= RANK_LIMIT else None
    return DependenceVerdict(DependenceStatus.DEPENDENT, relation, rank)


def _rank(values, rows) -> int:
    from itertools import combinations

    if any(v == 1 or v == -1 for v in values):
        return 0
    n = len(values)
    for size in range(2, n + 1):
        for subset in combinations(range(n), size):
            if left_kernel([rows[i] for i in subset]):
                return size - 1
    return n


def mult_rank(nu) -> int:
    """Multiplicative rank: 0 when a coordinate is a root of unity, else the
    largest r such that every r coordinates are independent."""
    values = [as_rational(v) for v in nu]
    if any(v == 0 for v in values):
        raise DomainError("rank is undefined for tuples with a zero coordinate")
    if len(values) > RANK_LIMIT:
        raise DomainError(f"rank enumeration is limited to {RANK_LIMIT} coordinates")
    rows, _ = _exponent_rows(values)
    return _rank(values, rows)


@dataclass(frozen=True, slots=True)
class RankOnePair:
    """Witness for z**k == unit * w**ell with coprime reduced exponents.

    A negative ell records a mixed-sign dependence (the exponents of the
    underlying relation z**k' = w**ell' had opposite signs).
    """

    k: int
    ell: int
    unit: int

    @property
    def mixed_sign(self) -> bool:
        return self.ell < 0

    def verify(self, z, w) -> bool:
        return as_rational(z) ** self.k == self.unit * as_rational(w) ** self.ell


def is_rank_one_pair(z, w) -> RankOnePair | None:
    """Reduced exponent pair when (z, w) is dependent of rank 1, else None."""
    z, w = as_rational(z), as_rational(w)
    if z == 0 or w == 0:
        raise DomainError("rank-one test needs nonzero inputs")
    if z in (1, -1) or w in (1, -1):
        raise DomainError("rank-one test excludes roots of unity")
    rows, _ = _exponent_rows([z, w])
    e, f = rows
    n = len(e)
    for i in range(n):
        for j in range(i + 1, n):
            if e[i] * f[j] != e[j] * f[i]:
                return None
    content = 0
    for x in e:
        content = gcd(content, x)
    prim = [x // content for x in e]
    j0 = next(i for i, x in enumerate(prim) if x)
    if prim[j0] < 0:
        prim = [-x for x in prim]
    a = e[j0] // prim[j0]
    b = f[j0] // prim[j0]
    if list(f) != [b * x for x in prim]:
        return None
    g = gcd(abs(a), abs(b))
    k, ell = b // g, a // g
    if k < 0:
        k, ell = -k, -ell
    ratio = z**k / w**ell
    if ratio == 1:
        unit = 1
    elif ratio == -1:
        unit = -1
    else:  # parallel magnitudes but incompatible: cannot happen
        raise AssertionError("rank-one exponents failed exact verification")
    pair = RankOnePair(k=k, ell=ell, unit=unit)
    assert pair.verify(z, w)
    return pair

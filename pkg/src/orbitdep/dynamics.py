"""Orbit computation and the arithmetic of orbit value sequences:
divisibility and rigidity checks, primitive parts by gcd stripping,
largest squarefree factors, and counting of multiplicatively dependent
index tuples.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

import gmpy2

from .errors import BudgetError, DomainError
from .exactmath import FactorEffort, factor_bounded, factor_refine, left_kernel, primes_below
from .multdep import MultRelation, certificate_from_kernel
from .poly import Domain, Polynomial

_MPZ = gmpy2.mpz

#: Default per-value size cap for orbit computation, in bits.
DEFAULT_BIT_CAP = 2**21


@dataclass
class OrbitTable:
    """Exact orbit values f^m(x0) for m = 1..N, with a primitive-part cache."""

    f: Polynomial
    x0: Fraction
    values: tuple
    preperiodic: bool = False
    repeat: tuple[int, int] | None = None  # (m, earlier index with equal value)
    _stripped: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.values)

    def value(self, m: int):
        if not 1 <= m <= len(self.values):
            raise DomainError(f"orbit index {m} outside 1..{len(self.values)}")
        return self.values[m - 1]

    @property
    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self.values)


def _value_bits(v) -> int:
    if isinstance(v, int):
        return v.bit_length()
    return v.numerator.bit_length() + v.denominator.bit_length()


def orbit(f: Polynomial, x0, n_steps: int, bit_cap: int = DEFAULT_BIT_CAP) -> OrbitTable:
    """Compute f(x0), f^2(x0), ..., f^N(x0) exactly.

    A projected next-value size above bit_cap aborts with a budget error;
    preperiodicity is flagged when a value repeats.
    """
    if n_steps < 1:
        raise DomainError("orbit length must be at least 1")
    if f.domain is not Domain.Q:
        raise DomainError("orbits are computed over Q")
    if f.degree < 2:
        raise DomainError("orbit iteration needs degree at least 2")
    x0 = Fraction(x0)
    coeff_mass = sum(abs(c.numerator) * max(1, abs(c.denominator)) for c in f.coeffs)
    overhead = int(coeff_mass).bit_length() + 1
    integral = x0.denominator == 1 and all(c.denominator == 1 for c in f.coeffs)
    values = []
    preperiodic = False
    repeat = None
    seen = {x0: 0}
    if integral:
        int_coeffs = [_MPZ(c.numerator) for c in f.coeffs]
        cur = _MPZ(x0.numerator)
        for m in range(1, n_steps + 1):
            projected = f.degree * max(1, cur.bit_length()) + overhead
            if projected > bit_cap:
                raise BudgetError(
                    f"orbit value at step {m} projected at {projected} bits, "
                    f"over the cap of {bit_cap}",
                    completed=m - 1,
                )
            acc = _MPZ(0)
            for c in reversed(int_coeffs):
                acc = acc * cur + c
            cur = acc
            v = int(cur)
            values.append(v)
            if not preperiodic:
                key = Fraction(v)
                if key in seen:
                    preperiodic = True
                    repeat = (m, seen[key])
                else:
                    seen[key] = m
    else:
        cur = x0
        for m in range(1, n_steps + 1):
            projected = f.degree * max(1, _value_bits(cur)) + overhead
            if projected > bit_cap:
                raise BudgetError(
                    f"orbit value at step {m} projected at {projected} bits, "
                    f"over the cap of {bit_cap}",
                    completed=m - 1,
                )
            cur = f(cur)
            values.append(int(cur) if cur.denominator == 1 else cur)
            if not preperiodic:
                key = Fraction(cur)
                if key in seen:
                    preperiodic = True
                    repeat = (m, seen[key])
                else:
                    seen[key] = m
    return OrbitTable(f=f, x0=x0, values=tuple(values), preperiodic=preperiodic, repeat=repeat)


# ---------------------------------------------------------------------------
# Divisibility sequences


@dataclass(frozen=True, slots=True)
class DivisibilityReport:
    ok: bool
    violation: tuple[int, int] | None = None  # 1-indexed (m, n) with a_m not | a_n

    def __bool__(self):
        return self.ok


def check_divisibility_sequence(seq) -> DivisibilityReport:
    """Check a_m | a_n for every pair of indices with m | n in range."""
    terms = [int(a) for a in seq]
    if any(a == 0 for a in terms):
        raise DomainError("divisibility checks need nonzero terms")
    big = [_MPZ(abs(a)) for a in terms]
    length = len(big)
    for m in range(1, length + 1):
        for n in range(2 * m, length + 1, m):
            if big[n - 1] % big[m - 1]:
                return DivisibilityReport(False, (m, n))
    return DivisibilityReport(True)


@dataclass(frozen=True, slots=True)
class RigidityReport:
    ok: bool
    exponents: dict  # prime -> the fixed exponent s_p (first observed)
    violation: tuple | None = None  # (p, (index, v), (index, v)) on failure

    def __bool__(self):
        return self.ok


@lru_cache(maxsize=4)
def _prime_chunks(bound: int):
    """Primes below bound grouped with their products, for batched residues."""
    chunks = []
    current: list[int] = []
    prod = _MPZ(1)
    for p in primes_below(bound):
        current.append(p)
        prod *= p
        if prod.bit_length() >= 4096:
            chunks.append((tuple(current), prod))
            current, prod = [], _MPZ(1)
    if current:
        chunks.append((tuple(current), prod))
    return tuple(chunks)


def check_rigid(seq, prime_bound: int) -> RigidityReport:
    """For every prime p <= prime_bound dividing some term, check that the
    p-adic valuation is the same in every term p divides."""
    terms = [int(a) for a in seq]
    if any(a == 0 for a in terms):
        raise DomainError("rigidity checks need nonzero terms")
    if prime_bound < 2:
        raise DomainError("prime bound must be at least 2")
    valuations: dict[int, list[tuple[int, int]]] = {}
    for idx, a in enumerate(terms, start=1):
        t = _MPZ(abs(a))
        if t == 1:
            continue
        for chunk, prod in _prime_chunks(prime_bound):
            r = t % prod
            for p in chunk:
                if r % p == 0:
                    _, v = gmpy2.remove(t, p)
                    valuations.setdefault(p, []).append((idx, int(v)))
    exponents = {}
    for p in sorted(valuations):
        seen = valuations[p]
        s_p = seen[0][1]
        exponents[p] = s_p
        for idx, v in seen[1:]:
            if v != s_p:
                return RigidityReport(False, exponents, (p, seen[0], (idx, v)))
    return RigidityReport(True, exponents)


# ---------------------------------------------------------------------------
# Primitive parts and squarefree factors


def primitive_part(table: OrbitTable, m: int) -> int:
    """a_m with every prime shared with an earlier orbit term divided out.

    Pure gcd stripping; |result| > 1 iff f^m(x0) has a primitive prime
    divisor among the terms computed so far.
    """
    if not table.is_integral:
        raise DomainError("primitive parts need an integer orbit")
    if m in table._stripped:
        return table._stripped[m]
    target = table.value(m)
    p = _MPZ(abs(target))
    for k in range(1, m):
        earlier = _MPZ(abs(table.value(k)))
        g = gmpy2.gcd(p, earlier)
        while g > 1:
            p //= g
            g = gmpy2.gcd(p, earlier)
    result = -int(p) if target < 0 else int(p)
    for k in range(1, m):
        assert gmpy2.gcd(_MPZ(abs(result)), _MPZ(abs(table.value(k)))) == 1
    assert target % result == 0
    table._stripped[m] = result
    return result


@dataclass(frozen=True, slots=True)
class PartialSquarefree:
    """Marker returned when factoring effort ran out: the squarefree part of
    what was factored, and the product of the unsplit composite cofactors."""

    known: int
    unfactored: int


def largest_squarefree_factor(v: int, effort: FactorEffort | None = None):
    """Product of the distinct primes dividing v, or a Partial marker."""
    v = int(v)
    if v == 0:
        raise DomainError("largest squarefree factor needs a nonzero input")
    fac = factor_bounded(abs(v), effort)
    known = 1
    for p in fac.distinct_primes():
        known *= p
    if fac.is_complete:
        return known
    cofactor = 1
    for c in fac.cofactors:
        cofactor *= c
    return PartialSquarefree(known=known, unfactored=cofactor)


# ---------------------------------------------------------------------------
# Counting dependent index tuples


@dataclass(frozen=True, slots=True)
class CountReport:
    """Exact value of the dependent-tuple counter with verified certificates
    and the two normalized ratios used for sparseness inspection."""

    n: int
    N: int
    count: int
    certificates: tuple[tuple[tuple[int, ...], MultRelation], ...]
    ratio_power: float  # count / N^(n-1)
    ratio_log: float  # count * log N / N^n

    def to_csv(self) -> str:
        header = [f"m_{i+1}" for i in range(self.n)] + [f"k_{i+1}" for i in range(self.n)]
        lines = [",".join(header)]
        for indices, relation in self.certificates:
            lines.append(",".join(str(v) for v in (*indices, *relation.k)))
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        return {
            "n": self.n,
            "N": self.N,
            "count": self.count,
            "ratio_power": self.ratio_power,
            "ratio_log": self.ratio_log,
        }


DEFAULT_COUNT_BUDGET = 10**6


def _max_budget_n(n: int, budget: int) -> int:
    top = 1
    while n * (top + 1) ** n <= budget:
        top += 1
    return top


def count_multdep(
    polys,
    points,
    N: int,
    *,
    budget: int = DEFAULT_COUNT_BUDGET,
    rank_filter: bool = False,
    threads: int = 1,
    bit_cap: int = DEFAULT_BIT_CAP,
) -> CountReport:
    """Count index tuples (m_1..m_n) in [1,N]^n whose orbit values are
    multiplicatively dependent, with a verified certificate for each.

    Dependence is decided over one coprime basis shared by all orbit
    values; orbit values are never factored.  Tuples containing a zero are
    neither dependent nor independent and are not counted.  Tuples of rank
    0 (a coordinate equal to +-1) count as dependent unless rank_filter.
    """
    polys = tuple(polys)
    points = tuple(Fraction(x) for x in points)
    n = len(polys)
    if n == 0 or n != len(points):
        raise DomainError("component and start-point counts must match and be positive")
    for f in polys:
        if f.degree < 2 or f.is_monomial:
            raise DomainError("counting excludes linear polynomials and monomials")
    if N < 1:
        raise DomainError("N must be at least 1")
    if n * N**n > budget:
        raise BudgetError(
            f"n*N^n = {n * N ** n} exceeds the budget {budget}",
            largest_completed_N=_max_budget_n(n, budget),
        )
    tables = [orbit(f, x, N, bit_cap=bit_cap) for f, x in zip(polys, points)]
    values = [[Fraction(t.value(m)) for m in range(1, N + 1)] for t in tables]

    ints = []
    for row in values:
        for v in row:
            if v != 0:
                ints.append(v.numerator)
                ints.append(v.denominator)
    rows: list[list] = [[None] * N for _ in range(n)]
    signs: list[list] = [[False] * N for _ in range(n)]
    if ints:
        basis = factor_refine(ints)
        pos = 0
        for i in range(n):
            for m in range(N):
                v = values[i][m]
                if v == 0:
                    continue
                num = basis.exponents[pos]
                den = basis.exponents[pos + 1]
                pos += 2
                rows[i][m] = tuple(a - b for a, b in zip(num, den))
                signs[i][m] = v < 0

    def scan(first_range):
        found = []
        for first in first_range:
            for rest in product(range(1, N + 1), repeat=n - 1):
                indices = (first, *rest)
                tuple_vals = [values[i][indices[i] - 1] for i in range(n)]
                if any(v == 0 for v in tuple_vals):
                    continue
                if rank_filter and any(v == 1 or v == -1 for v in tuple_vals):
                    continue
                sel_rows = [rows[i][indices[i] - 1] for i in range(n)]
                kernel = left_kernel(sel_rows)
                if not kernel:
                    continue
                k = certificate_from_kernel(
                    kernel, [signs[i][indices[i] - 1] for i in range(n)]
                )
                relation = MultRelation(k)
                assert relation.verify(tuple_vals)
                found.append((indices, relation))
        return found

    firsts = list(range(1, N + 1))
    if threads > 1:
        chunk = max(1, len(firsts) // threads)
        parts = [firsts[i : i + chunk] for i in range(0, len(firsts), chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(scan, parts))
        certificates = [item for part in results for item in part]
    else:
        certificates = scan(firsts)
    certificates.sort(key=lambda item: item[0])
    count = len(certificates)
    return CountReport(
        n=n,
        N=N,
        count=count,
        certificates=tuple(certificates),
        ratio_power=count / N ** (n - 1),
        ratio_log=count * math.log(N) / N**n if N > 1 else float(count),
    )

"""Exact scalar and integer arithmetic: rationals, Gaussian rationals,
factor refinement into coprime bases, bounded factorization, and integer
kernel computation.

Everything here is pure and exact.  Large-integer work is delegated to
gmpy2 (GMP) internally; all public values are plain ``int`` / ``Fraction``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import gmpy2

from .errors import DomainError

# The Rational scalar of the library is the stdlib Fraction: numerator and
# denominator are arbitrary-precision, stored reduced with positive
# denominator, which is exactly the invariant the domain type requires.
Rational = Fraction

_MPZ = gmpy2.mpz


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and numeric strings like '3/4' to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.replace("−", "-"))
    raise DomainError(f"cannot interpret {value!r} as a rational number")


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """Element of Q(i) as an exact pair of rational components."""

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", as_rational(self.re))
        object.__setattr__(self, "im", as_rational(self.im))

    @staticmethod
    def of(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(as_rational(value), Fraction(0))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.of(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.of(other) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = GAUSSIAN_ONE
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational.of(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{self.im}*i"
        if not self.re:
            return im
        sep = "+" if self.im > 0 else "-"
        mag = im.lstrip("-")
        return f"{self.re}{sep}{mag}"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


GAUSSIAN_ONE = GaussianRational(Fraction(1), Fraction(0))
GAUSSIAN_I = GaussianRational(Fraction(0), Fraction(1))

#: The only roots of unity available in each working domain.
RATIONAL_UNITS = (Fraction(1), Fraction(-1))
GAUSSIAN_UNITS = (GAUSSIAN_ONE, -GAUSSIAN_ONE, GAUSSIAN_I, -GAUSSIAN_I)


def is_root_of_unity(value) -> bool:
    """True iff value is a root of unity of its domain (±1, and ±i in Q(i))."""
    if isinstance(value, GaussianRational):
        return value in GAUSSIAN_UNITS
    return as_rational(value) in RATIONAL_UNITS


# ---------------------------------------------------------------------------
# Exact roots


def integer_nth_root(n: int, k: int) -> int | None:
    """Exact k-th root of a nonnegative integer, or None."""
    if n < 0 or k < 1:
        raise DomainError("integer_nth_root needs n >= 0 and k >= 1")
    root, exact = gmpy2.iroot(_MPZ(n), k)
    return int(root) if exact else None


def rational_nth_root(q: Fraction, k: int) -> Fraction | None:
    """Exact k-th root of a rational in Q, or None if no such root exists."""
    q = as_rational(q)
    if k < 1:
        raise DomainError("root exponent must be positive")
    if q == 0:
        return Fraction(0)
    if q < 0:
        if k % 2 == 0:
            return None
        inner = rational_nth_root(-q, k)
        return None if inner is None else -inner
    num = integer_nth_root(q.numerator, k)
    den = integer_nth_root(q.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _gint_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gint_pow(a, k):
    out = (1, 0)
    for _ in range(k):
        out = _gint_mul(out, a)
    return out


def _gint_gcd(a, b):
    # Euclidean algorithm in Z[i] with nearest-integer quotient rounding.
    while b != (0, 0):
        n = b[0] * b[0] + b[1] * b[1]
        tr = a[0] * b[0] + a[1] * b[1]
        ti = a[1] * b[0] - a[0] * b[1]
        qr = (2 * tr + n) // (2 * n)
        qi = (2 * ti + n) // (2 * n)
        q = (qr, qi)
        a, b = b, (a[0] - (q[0] * b[0] - q[1] * b[1]), a[1] - (q[0] * b[1] + q[1] * b[0]))
    return a


def _gint_roots(g, k):
    """All x in Z[i] with x**k == g, found through norm enumeration."""
    if g == (0, 0):
        return [(0, 0)]
    norm = g[0] * g[0] + g[1] * g[1]
    r = integer_nth_root(norm, k)
    if r is None:
        return []
    out = []
    a = 0
    while a * a <= r:
        b2 = r - a * a
        b = gmpy2.isqrt(b2)
        if b * b == b2:
            b = int(b)
            for cand in {(a, b), (a, -b), (-a, b), (-a, -b)}:
                if _gint_pow(cand, k) == g:
                    out.append(cand)
        a += 1
    return out


def gaussian_nth_root(c: GaussianRational, k: int) -> GaussianRational | None:
    """Exact k-th root of a Gaussian rational in Q(i), or None.

    Works through lowest-terms Gaussian integers: z = u/v forces u**k and
    v**k to be unit multiples of the reduced numerator and denominator.
    """
    if k < 1:
        raise DomainError("root exponent must be positive")
    if not c:
        return GaussianRational(Fraction(0), Fraction(0))
    d = lcm(c.re.denominator, c.im.denominator)
    num = (int(c.re * d), int(c.im * d))
    den = (d, 0)
    g = _gint_gcd(num, den)
    n = g[0] * g[0] + g[1] * g[1]
    num = ((num[0] * g[0] + num[1] * g[1]) // n, (num[1] * g[0] - num[0] * g[1]) // n)
    den = ((den[0] * g[0] + den[1] * g[1]) // n, (den[1] * g[0] - den[0] * g[1]) // n)
    units = ((1, 0), (0, 1), (-1, 0), (0, -1))
    for w in units:
        for u in _gint_roots(_gint_mul(w, num), k):
            for v in _gint_roots(_gint_mul(w, den), k):
                if v == (0, 0):
                    continue
                vn = v[0] * v[0] + v[1] * v[1]
                z = GaussianRational(
                    Fraction(u[0] * v[0] + u[1] * v[1], vn),
                    Fraction(u[1] * v[0] - u[0] * v[1], vn),
                )
                if z**k == c:
                    return z
    return None


# ---------------------------------------------------------------------------
# Factor refinement (coprime bases)


@dataclass(frozen=True, slots=True)
class CoprimeBasis:
    """Pairwise-coprime integers > 1 expressing a list of inputs exactly.

    For input i: values[i] == (-1 if signs[i] else 1) * prod(b**e for b, e in
    zip(elements, exponents[i])).
    """

    elements: tuple[int, ...]
    exponents: tuple[tuple[int, ...], ...]
    signs: tuple[bool, ...]

    def reconstruct(self, i: int) -> int:
        value = 1
        for base, exp in zip(self.elements, self.exponents[i]):
            value *= base**exp
        return -value if self.signs[i] else value


def factor_refine(values) -> CoprimeBasis:
    """Refine integers into a coprime basis using gcd splitting only.

    No factorization is performed: splitting pairs along gcds until the
    basis is pairwise coprime is enough to express every input as a signed
    product of basis powers, which is what dependence testing needs.
    """
    values = [int(v) for v in values]
    for v in values:
        if v == 0:
            raise DomainError("factor_refine rejects zero inputs")
    basis: list = []
    stack = [_MPZ(abs(v)) for v in values if abs(v) > 1]
    while stack:
        x = stack.pop()
        if x == 1:
            continue
        for i, b in enumerate(basis):
            if x == b:
                break
            g = gmpy2.gcd(x, b)
            if g > 1:
                basis.pop(i)
                stack.extend((g, x // g, b // g))
                break
        else:
            basis.append(x)
    basis.sort()
    rows = []
    for v in values:
        m = _MPZ(abs(v))
        row = []
        for b in basis:
            if m % b == 0:
                m, e = gmpy2.remove(m, b)
                row.append(int(e))
            else:
                row.append(0)
        rows.append(tuple(row))
    result = CoprimeBasis(
        elements=tuple(int(b) for b in basis),
        exponents=tuple(rows),
        signs=tuple(v < 0 for v in values),
    )
    for i, v in enumerate(values):
        assert result.reconstruct(i) == v, "refinement reconstruction failed"
    return result


# ---------------------------------------------------------------------------
# Integer matrices and kernels


@dataclass(frozen=True, slots=True)
class IntegerMatrix:
    """Rectangular matrix of exact integers, stored row-major."""

    entries: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows) -> "IntegerMatrix":
        rows = [tuple(int(x) for x in row) for row in rows]
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise DomainError("matrix rows must have equal length")
        return IntegerMatrix(tuple(rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0


def _echelon(mat, limit):
    """In-place integer row echelon on columns [0, limit); returns pivot count."""
    r = 0
    for c in range(limit):
        while True:
            nz = [i for i in range(r, len(mat)) if mat[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(mat[i][c]))
            mat[r], mat[i0] = mat[i0], mat[r]
            pivot = mat[r][c]
            done = True
            for i in range(r + 1, len(mat)):
                if mat[i][c]:
                    q = mat[i][c] // pivot
                    if q:
                        mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    if mat[i][c]:
                        done = False
            if done:
                if mat[r][c] < 0:
                    mat[r] = [-a for a in mat[r]]
                r += 1
                break
    return r


def hermite_normal_form(rows) -> list[tuple[int, ...]]:
    """Row-style HNF: positive pivots, entries above each pivot reduced."""
    mat = [list(int(x) for x in row) for row in rows]
    if not mat:
        return []
    width = len(mat[0])
    npiv = _echelon(mat, width)
    mat = mat[:npiv]
    pivots = []
    for row in mat:
        col = next(j for j, x in enumerate(row) if x)
        pivots.append(col)
    for idx in range(len(mat) - 1, -1, -1):
        c = pivots[idx]
        p = mat[idx][c]
        for i in range(idx):
            q = mat[i][c] // p
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[idx])]
    return [tuple(row) for row in mat]


def left_kernel(matrix) -> list[tuple[int, ...]]:
    """Basis of the integer lattice {k : k . rows(M) = 0}, in HNF.

    Empty list iff the rows are linearly independent over the integers.
    """
    if isinstance(matrix, IntegerMatrix):
        rows = matrix.entries
    else:
        rows = IntegerMatrix.from_rows(matrix).entries
    n = len(rows)
    if n == 0:
        return []
    cols = len(rows[0])
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    npiv = _echelon(aug, cols)
    kernel = []
    for row in aug[npiv:]:
        assert all(x == 0 for x in row[:cols])
        kernel.append(row[cols:])
    return hermite_normal_form(kernel)


def in_row_lattice(vector, basis) -> bool:
    """True iff vector is an integer combination of the basis rows."""
    v = [int(x) for x in vector]
    rows = hermite_normal_form(basis)
    for row in rows:
        col = next(j for j, x in enumerate(row) if x)
        if v[col] % row[col]:
            return False
        q = v[col] // row[col]
        v = [a - q * b for a, b in zip(v, row)]
    return all(x == 0 for x in v)


# ---------------------------------------------------------------------------
# Bounded factorization

# Deterministic Miller-Rabin base set: correct for all n < 3.3 * 10**24,
# which covers every value the rest of the library certifies as prime.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_PROVEN_BOUND = 3317044064679887385961981


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with a fixed base set; deterministic below 3.3e24."""
    n = int(n)
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    nz = _MPZ(n)
    for a in _MR_BASES:
        x = gmpy2.powmod(a, d, nz)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = (x * x) % nz
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4)
def _sieve_primes(bound: int) -> tuple[int, ...]:
    flags = bytearray(b"\x01") * (bound + 1)
    flags[0:2] = b"\x00\x00"
    p = 2
    while p * p <= bound:
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(flags[p * p :: p])
        p += 1
    return tuple(i for i, f in enumerate(flags) if f)


def primes_below(bound: int) -> tuple[int, ...]:
    return _sieve_primes(int(bound))


def _pollard_rho_brent(n, seed: int, max_iterations: int):
    """Brent-cycle rho; deterministic for a fixed (n, seed). None on failure."""
    n = _MPZ(n)
    if n % 2 == 0:
        return 2
    rng = random.Random(f"rho:{int(n) % (1 << 64)}:{seed}")
    y = _MPZ(rng.randrange(2, int(n) - 1))
    c = _MPZ(rng.randrange(1, int(n) - 1))
    m = 128
    g = _MPZ(1)
    r = 1
    q = _MPZ(1)
    iterations = 0
    x = ys = y
    while g == 1 and iterations < max_iterations:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = (q * abs(x - y)) % n
            iterations += min(m, r - k)
            g = gmpy2.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = _MPZ(1)
        while g == 1:
            ys = (ys * ys + c) % n
            g = gmpy2.gcd(abs(x - ys), n)
            iterations += 1
            if iterations > 2 * max_iterations:
                return None
    if 1 < g < n:
        return int(g)
    return None


@dataclass(frozen=True, slots=True)
class FactorEffort:
    """Budget knobs for factor_bounded."""

    trial_bound: int = 10**6
    rho_iterations: int = 200_000
    rho_restarts: int = 8
    seed: int = 20090


DEFAULT_EFFORT = FactorEffort()


@dataclass(frozen=True, slots=True)
class Factorization:
    """Signed factorization; cofactors hold any pieces effort could not split.

    value() == sign * prod(p**e) * prod(cofactors) always holds exactly, and
    every listed prime passed the primality test; composite remnants are
    never reported as primes.
    """

    sign: int
    primes: tuple[tuple[int, int], ...]
    cofactors: tuple[int, ...] = ()

    @property
    def is_complete(self) -> bool:
        return not self.cofactors

    def value(self) -> int:
        out = self.sign
        for p, e in self.primes:
            out *= p**e
        for c in self.cofactors:
            out *= c
        return out

    def distinct_primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.primes)


def factor_bounded(n: int, effort: FactorEffort | None = None) -> Factorization:
    """Factor n with bounded effort: trial division, then seeded Brent rho.

    Unsplit composites are returned explicitly as cofactors rather than
    being passed off as primes.
    """
    n = int(n)
    if n == 0:
        raise DomainError("factor_bounded rejects zero")
    effort = effort or DEFAULT_EFFORT
    sign = -1 if n < 0 else 1
    m = _MPZ(abs(n))
    counts: dict[int, int] = {}
    for p in _sieve_primes(effort.trial_bound):
        if p * p > m:
            break
        if m % p == 0:
            m, e = gmpy2.remove(m, p)
            counts[p] = int(e)
    cofactors: list[int] = []
    if m > 1:
        if m < effort.trial_bound * effort.trial_bound or is_probable_prime(m):
            counts[int(m)] = counts.get(int(m), 0) + 1
        else:
            stack = [m]
            while stack:
                c = stack.pop()
                if is_probable_prime(c):
                    counts[int(c)] = counts.get(int(c), 0) + 1
                    continue
                d = None
                for attempt in range(effort.rho_restarts):
                    d = _pollard_rho_brent(c, effort.seed + attempt, effort.rho_iterations)
                    if d is not None:
                        break
                if d is None:
                    cofactors.append(int(c))
                else:
                    stack.extend((_MPZ(d), c // d))
    result = Factorization(
        sign=sign,
        primes=tuple(sorted(counts.items())),
        cofactors=tuple(sorted(cofactors)),
    )
    assert result.value() == n
    return result

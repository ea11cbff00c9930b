"""Exact univariate polynomials over Q and Q(i).

Coefficients are Fractions (domain Q) or GaussianRationals (domain Q(i)),
stored dense with trailing zeros trimmed.  Multiplication, composition and
powering over Q run on integer coefficient arrays internally (Kronecker
substitution through GMP for large sizes), so iterate chains stay fast
while every visible value remains exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm

import gmpy2

from .errors import DomainError
from .exactmath import GaussianRational, as_rational

_MPZ = gmpy2.mpz


class Domain(Enum):
    Q = "Q"
    QI = "QI"


def _zero(domain: Domain):
    return Fraction(0) if domain is Domain.Q else GaussianRational(Fraction(0), Fraction(0))


def _one(domain: Domain):
    return Fraction(1) if domain is Domain.Q else GaussianRational(Fraction(1), Fraction(0))


def _coerce(domain: Domain, value):
    if domain is Domain.Q:
        if isinstance(value, GaussianRational):
            if value.im:
                raise DomainError("imaginary value in a Q polynomial")
            return value.re
        return as_rational(value)
    return GaussianRational.of(value)


# ---------------------------------------------------------------------------
# Integer coefficient kernels (domain Q fast paths)

_SCHOOLBOOK_LIMIT = 2500


def _pack(arr, stride):
    buf = bytearray(stride * len(arr))
    for i, a in enumerate(arr):
        if a:
            n = (a.bit_length() + 7) // 8
            buf[i * stride : i * stride + n] = a.to_bytes(n, "little")
    return int.from_bytes(buf, "little")


def _unpack(value, count, stride):
    raw = value.to_bytes(stride * count, "little")
    return [
        int.from_bytes(raw[i * stride : (i + 1) * stride], "little") for i in range(count)
    ]


def _kron_mul(a, b):
    out_len = len(a) + len(b) - 1
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    stride = bound.bit_length() // 8 + 1
    pos_a = [x if x > 0 else 0 for x in a]
    neg_a = [-x if x < 0 else 0 for x in a]
    pos_b = [x if x > 0 else 0 for x in b]
    neg_b = [-x if x < 0 else 0 for x in b]
    out = [0] * out_len
    for pa, pb, sign in (
        (pos_a, pos_b, 1),
        (neg_a, neg_b, 1),
        (pos_a, neg_b, -1),
        (neg_a, pos_b, -1),
    ):
        if any(pa) and any(pb):
            prod = int(_MPZ(_pack(pa, stride)) * _MPZ(_pack(pb, stride)))
            part = _unpack(prod, out_len, stride)
            if sign > 0:
                out = [x + y for x, y in zip(out, part)]
            else:
                out = [x - y for x, y in zip(out, part)]
    return out


def _int_mul(a, b):
    if not a or not b:
        return []
    if len(a) * len(b) <= _SCHOOLBOOK_LIMIT:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return out
    return _kron_mul(a, b)


def _int_pow(a, e):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _int_mul(result, base)
        e >>= 1
        if e:
            base = _int_mul(base, base)
    return result


def _int_compose(f, g, dg):
    """Horner composition of integer arrays; result denominator is dg**(len(f)-1)."""
    out = [f[-1]]
    power = 1
    for k in range(len(f) - 2, -1, -1):
        power *= dg
        out = _int_mul(out, g)
        if not out:
            out = [0]
        if f[k]:
            out[0] += f[k] * power
    return out


def _q_ints(coeffs):
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    return [int(c * den) for c in coeffs], den


def _q_back(ints, den):
    return tuple(Fraction(v, den) for v in ints)


# ---------------------------------------------------------------------------
# Polynomial type


class Polynomial:
    """Immutable dense polynomial over a declared exact coefficient domain."""

    __slots__ = ("domain", "coeffs")

    def __init__(self, coeffs, domain: Domain = Domain.Q):
        values = [_coerce(domain, c) for c in coeffs]
        while values and not values[-1]:
            values.pop()
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "coeffs", tuple(values))

    def __setattr__(self, *args):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _raw(cls, domain: Domain, coeffs: tuple) -> "Polynomial":
        self = object.__new__(cls)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "coeffs", coeffs)
        return self

    # -- constructors
    @classmethod
    def zero(cls, domain: Domain = Domain.Q):
        return cls._raw(domain, ())

    @classmethod
    def one(cls, domain: Domain = Domain.Q):
        return cls._raw(domain, (_one(domain),))

    @classmethod
    def x(cls, domain: Domain = Domain.Q):
        return cls._raw(domain, (_zero(domain), _one(domain)))

    @classmethod
    def constant(cls, value, domain: Domain = Domain.Q):
        return cls([value], domain)

    @classmethod
    def from_string(cls, text: str, domain: Domain | None = None) -> "Polynomial":
        return parse_polynomial(text, domain)

    # -- basic structure
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monomial(self) -> bool:
        return sum(1 for c in self.coeffs if c) == 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == _one(self.domain)

    def coefficient(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _zero(self.domain)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.domain is other.domain and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.domain, self.coeffs))

    def __repr__(self):
        return f"Polynomial({self.to_string()!r}, {self.domain.value})"

    def __str__(self):
        return self.to_string()

    def _check_domain(self, other: "Polynomial"):
        if self.domain is not other.domain:
            raise DomainError("polynomial domains differ")

    # -- arithmetic
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.domain)
        self._check_domain(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        while out and not out[-1]:
            out.pop()
        return Polynomial._raw(self.domain, tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.domain, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.domain)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.domain)
        self._check_domain(other)
        if self.is_zero or other.is_zero:
            return Polynomial.zero(self.domain)
        if self.domain is Domain.Q:
            a, da = _q_ints(self.coeffs)
            b, db = _q_ints(other.coeffs)
            return Polynomial._raw(Domain.Q, _q_back(_int_mul(a, b), da * db))
        out = [_zero(self.domain)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return Polynomial(out, self.domain)

    __rmul__ = __mul__

    def scale(self, scalar) -> "Polynomial":
        s = _coerce(self.domain, scalar)
        if not s:
            return Polynomial.zero(self.domain)
        return Polynomial._raw(self.domain, tuple(c * s for c in self.coeffs))

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise DomainError("polynomial powers need a nonnegative integer")
        if e == 0:
            return Polynomial.one(self.domain)
        if self.is_zero:
            return Polynomial.zero(self.domain)
        if self.domain is Domain.Q:
            a, da = _q_ints(self.coeffs)
            return Polynomial._raw(Domain.Q, _q_back(_int_pow(a, e), da**e))
        result = self
        for _ in range(e - 1):
            result = result * self
        return result

    def __divmod__(self, other: "Polynomial"):
        self._check_domain(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial.zero(self.domain), self
        inv_lead = _one(self.domain) / other.leading
        quot = [_zero(self.domain)] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        while rem and not rem[-1]:
            rem.pop()
        return (
            Polynomial(quot, self.domain),
            Polynomial._raw(self.domain, tuple(rem)),
        )

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def div_exact(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise DomainError("division was expected to be exact")
        return q

    # -- calculus and shape helpers
    def derivative(self) -> "Polynomial":
        out = tuple(self.coeffs[k] * k for k in range(1, len(self.coeffs)))
        trimmed = list(out)
        while trimmed and not trimmed[-1]:
            trimmed.pop()
        return Polynomial._raw(self.domain, tuple(trimmed))

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise DomainError("cannot normalize the zero polynomial")
        if self.is_monic:
            return self
        inv = _one(self.domain) / self.leading
        return Polynomial._raw(self.domain, tuple(c * inv for c in self.coeffs))

    def stretch(self, k: int) -> "Polynomial":
        """Substitute X -> X**k."""
        if k < 1:
            raise DomainError("stretch factor must be positive")
        if self.is_zero or k == 1:
            return self
        out = [_zero(self.domain)] * (self.degree * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return Polynomial._raw(self.domain, tuple(out))

    def shift_up(self, s: int) -> "Polynomial":
        """Multiply by X**s."""
        if s < 0:
            raise DomainError("shift must be nonnegative")
        if self.is_zero or s == 0:
            return self
        pad = (_zero(self.domain),) * s
        return Polynomial._raw(self.domain, pad + self.coeffs)

    def __call__(self, value):
        v = _coerce(self.domain, value)
        acc = _zero(self.domain)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def to_gaussian(self) -> "Polynomial":
        if self.domain is Domain.QI:
            return self
        return Polynomial(self.coeffs, Domain.QI)

    def to_string(self) -> str:
        return format_polynomial(self)


# ---------------------------------------------------------------------------
# Spec operations


def compose(f: Polynomial, g: Polynomial) -> Polynomial:
    """f(g(X)), exact."""
    f._check_domain(g)
    if f.is_zero:
        return Polynomial.zero(f.domain)
    if f.domain is Domain.Q and g.degree >= 1:
        fi, df = _q_ints(f.coeffs)
        gi, dg = _q_ints(g.coeffs)
        out = _int_compose(fi, gi, dg)
        return Polynomial._raw(Domain.Q, _q_back(out, df * dg ** (len(fi) - 1)))
    acc = Polynomial.constant(f.coeffs[-1], f.domain)
    for k in range(f.degree - 1, -1, -1):
        acc = acc * g + Polynomial.constant(f.coeffs[k], f.domain)
    return acc


def iterate(f: Polynomial, n: int) -> Polynomial:
    """n-fold composition of f with itself, n >= 1."""
    if not isinstance(n, int) or n < 1:
        raise DomainError("iteration count must be a positive integer")
    result = f
    for _ in range(n - 1):
        result = compose(f, result)
    return result


@dataclass(frozen=True, slots=True)
class SquarefreeDecomposition:
    """content * prod(g**e for g, e in parts) == source, with the g monic,
    squarefree, pairwise coprime, and exponents strictly increasing."""

    content: object
    parts: tuple[tuple[Polynomial, int], ...]
    domain: Domain

    def reconstruct(self) -> Polynomial:
        out = Polynomial.constant(self.content, self.domain)
        for g, e in self.parts:
            out = out * g**e
        return out

    def multiplicities(self) -> list[tuple[int, int]]:
        """(multiplicity, number of distinct roots at it) pairs."""
        return [(e, g.degree) for g, e in self.parts]

    def max_multiplicity(self) -> int:
        return max((e for _, e in self.parts), default=0)

    def distinct_root_count(self) -> int:
        return sum(g.degree for g, _ in self.parts)


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd over the coefficient field (zero if both inputs are zero)."""
    f._check_domain(g)
    if f.is_zero and g.is_zero:
        return Polynomial.zero(f.domain)
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    if f.domain is Domain.Q:
        return _gcd_q(f, g)
    return _gcd_euclid(f, g)


def _gcd_euclid(f: Polynomial, g: Polynomial) -> Polynomial:
    a, b = f.monic(), g.monic()
    while not b.is_zero:
        a, b = b, a % b
        if not b.is_zero:
            b = b.monic()
    return a.monic()


def _int_primitive(coeffs):
    content = 0
    for c in coeffs:
        content = gcd(content, c)
        if content == 1:
            break
    if content == 0:
        return list(coeffs)
    prim = [c // content for c in coeffs]
    if prim[-1] < 0:
        prim = [-c for c in prim]
    return prim


def _int_eval(coeffs, x):
    acc = _MPZ(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _int_divides(a, g):
    """Quotient of a by g over Z, or None (both primitive integer polys)."""
    if len(g) > len(a):
        return None
    rem = list(a)
    lead = g[-1]
    quot = [0] * (len(a) - len(g) + 1)
    for k in range(len(quot) - 1, -1, -1):
        top = rem[k + len(g) - 1]
        if top % lead:
            return None
        c = top // lead
        quot[k] = c
        if c:
            for j, gv in enumerate(g):
                rem[k + j] -= c * gv
    if any(rem):
        return None
    return quot


_GCD_CHECK_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579)


def _modgcd_degree(a, b, p):
    am = [c % p for c in a]
    bm = [c % p for c in b]

    def trim(v):
        while v and not v[-1]:
            v.pop()
        return v

    am, bm = trim(am), trim(bm)
    while bm:
        inv = pow(bm[-1], -1, p)
        bm = [(c * inv) % p for c in bm]
        dq = len(am) - len(bm)
        if dq < 0:
            am, bm = bm, am
            continue
        for k in range(dq, -1, -1):
            c = am[k + len(bm) - 1]
            if c:
                for j, gv in enumerate(bm):
                    am[k + j] = (am[k + j] - c * gv) % p
        am = trim(am)
        am, bm = bm, am
    return len(am) - 1


def _heuristic_candidate(a, b, xi):
    va, vb = _int_eval(a, xi), _int_eval(b, xi)
    if va == 0 or vb == 0:
        return None
    gamma = int(gmpy2.gcd(va, vb))
    digits = []
    half = xi // 2
    while gamma:
        r = gamma % xi
        if r > half:
            r -= xi
        digits.append(int(r))
        gamma = (gamma - r) // xi
    if not digits:
        digits = [0]
    return _int_primitive(digits)


def _gcd_q(f: Polynomial, g: Polynomial) -> Polynomial:
    a, _ = _q_ints(f.coeffs)
    b, _ = _q_ints(g.coeffs)
    a, b = _int_primitive(a), _int_primitive(b)
    if len(a) == 1 or len(b) == 1:
        return Polynomial.one(Domain.Q)
    xi = 2 * max(max(map(abs, a)), max(map(abs, b))) + 29
    for _ in range(6):
        cand = _heuristic_candidate(a, b, xi)
        xi = xi * xi // 3 + 31
        if cand is None or not any(cand):
            continue
        if _int_divides(a, cand) is None or _int_divides(b, cand) is None:
            continue
        target = len(cand) - 1
        for p in _GCD_CHECK_PRIMES:
            if a[-1] % p == 0 or b[-1] % p == 0:
                continue
            if _modgcd_degree(a, b, p) == target:
                return Polynomial(cand, Domain.Q).monic()
        # degree never confirmed: candidate may be a proper divisor; retry
    return _gcd_euclid(f, g)


def squarefree_decompose(f: Polynomial) -> SquarefreeDecomposition:
    """Yun's gcd cascade (characteristic zero)."""
    if f.is_zero:
        raise DomainError("zero polynomial has no squarefree decomposition")
    content = f.leading
    if f.degree == 0:
        return SquarefreeDecomposition(content, (), f.domain)
    fm = f.monic()
    d = fm.derivative()
    g = poly_gcd(fm, d)
    parts: list[tuple[Polynomial, int]] = []
    if g.degree == 0:
        parts.append((fm, 1))
    else:
        w = fm.div_exact(g)
        y = d.div_exact(g)
        i = 1
        while w.degree > 0:
            z = y - w.derivative()
            h = poly_gcd(w, z) if not z.is_zero else w.monic()
            if h.degree > 0:
                parts.append((h, i))
            w = w.div_exact(h)
            y = z.div_exact(h) if not z.is_zero else Polynomial.zero(f.domain)
            i += 1
    result = SquarefreeDecomposition(content, tuple(parts), f.domain)
    assert result.reconstruct() == f, "squarefree reconstruction failed"
    return result


def radical(f: Polynomial) -> Polynomial:
    """Product of the distinct monic irreducible factors of f."""
    if f.is_zero:
        raise DomainError("zero polynomial has no radical")
    out = Polynomial.one(f.domain)
    for g, _ in squarefree_decompose(f).parts:
        out = out * g
    return out


def dickson(m: int, a, domain: Domain | None = None) -> Polynomial:
    """Dickson polynomial via D_0 = 2, D_1 = X, D_m = X*D_{m-1} - a*D_{m-2}."""
    if m < 0:
        raise DomainError("Dickson index must be nonnegative")
    if domain is None:
        domain = Domain.QI if isinstance(a, GaussianRational) else Domain.Q
    a = _coerce(domain, a)
    two = Polynomial.constant(2, domain)
    if m == 0:
        return two
    x = Polynomial.x(domain)
    prev, cur = two, x
    for _ in range(m - 1):
        prev, cur = cur, x * cur - prev.scale(a)
    return cur


def twist(f: Polynomial, alpha) -> Polynomial:
    """The scaled conjugate alpha * f(X / alpha)."""
    a = _coerce(f.domain, alpha)
    if not a:
        raise DomainError("twist scale must be nonzero")
    out = []
    power = a  # alpha**(1 - k) for k = 0
    inv = _one(f.domain) / a
    for c in f.coeffs:
        out.append(c * power)
        power = power * inv
    return Polynomial(out, f.domain)


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def decompose_functional(f: Polynomial, max_degree: int = 24) -> list[tuple[Polynomial, Polynomial]]:
    """All decompositions f = g(h) with deg g, deg h >= 2, up to the
    normalization that h is monic with zero constant term.

    For each divisor of deg f the candidate inner polynomial is forced by
    matching the top coefficients, then accepted iff the base-h expansion
    of f has constant digits.
    """
    n = f.degree
    if n < 4:
        raise DomainError("functional decomposition needs degree >= 4")
    if n > max_degree:
        raise DomainError(f"degree {n} exceeds the decomposition cap {max_degree}")
    monic_f = f.monic()
    results = []
    for s in _divisors(n):
        if s < 2 or n // s < 2:
            continue
        r = n // s
        coeffs = [_zero(f.domain)] * s + [_one(f.domain)]
        for j in range(1, s):
            h = Polynomial(coeffs, f.domain)
            hr = h**r
            diff = monic_f.coefficient(n - j) - hr.coefficient(n - j)
            coeffs[s - j] = diff / _coerce(f.domain, r)
        h = Polynomial(coeffs, f.domain)
        digits = []
        t = f
        ok = True
        while not t.is_zero:
            t, rem = divmod(t, h)
            if rem.degree > 0:
                ok = False
                break
            digits.append(rem.coefficient(0))
        if ok:
            g = Polynomial(digits, f.domain)
            if g.degree == r and compose(g, h) == f:
                results.append((g, h))
    return results


# ---------------------------------------------------------------------------
# Text format

_TOKEN_RE = re.compile(r"\s*(\d+|[Xx]|i|[()+*/^-])")


def _tokenize(text: str):
    text = text.replace("−", "-")
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise DomainError(f"cannot tokenize polynomial text at: {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, domain: Domain):
        self.tokens = tokens
        self.pos = 0
        self.domain = domain

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, tok):
        if self.take() != tok:
            raise DomainError(f"expected {tok!r} in polynomial text")

    def parse_sum(self) -> Polynomial:
        sign = 1
        tok = self.peek()
        if tok in ("+", "-"):
            self.take()
            sign = -1 if tok == "-" else 1
        result = self.parse_term()
        if sign < 0:
            result = -result
        while self.peek() in ("+", "-"):
            op = self.take()
            term = self.parse_term()
            result = result - term if op == "-" else result + term
        return result

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while self.peek() == "*":
            self.take()
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> Polynomial:
        tok = self.take()
        if tok is None:
            raise DomainError("unexpected end of polynomial text")
        if tok == "(":
            inner = self.parse_sum()
            self.expect(")")
            return self._maybe_power(inner)
        if tok in ("X", "x"):
            return self._maybe_power(Polynomial.x(self.domain))
        if tok == "i":
            if self.domain is not Domain.QI:
                raise DomainError("imaginary unit needs the Q(i) domain")
            return Polynomial.constant(GaussianRational(Fraction(0), Fraction(1)), self.domain)
        if tok.isdigit():
            num = int(tok)
            if self.peek() == "/":
                self.take()
                den = self.take()
                if den is None or not den.isdigit():
                    raise DomainError("malformed rational coefficient")
                return Polynomial.constant(Fraction(num, int(den)), self.domain)
            return Polynomial.constant(Fraction(num), self.domain)
        raise DomainError(f"unexpected token {tok!r} in polynomial text")

    def _maybe_power(self, base: Polynomial) -> Polynomial:
        if self.peek() == "^":
            self.take()
            exp = self.take()
            if exp is None or not exp.isdigit():
                raise DomainError("exponent must be a nonnegative integer")
            return base ** int(exp)
        return base


def parse_polynomial(text: str, domain: Domain | None = None) -> Polynomial:
    """Parse text like '3/2*X^4 - X + 5' or 'X^3-6*i*X^2-9*X+4*i'."""
    tokens = _tokenize(text)
    if not tokens:
        raise DomainError("empty polynomial text")
    if domain is None:
        domain = Domain.QI if "i" in tokens else Domain.Q
    parser = _Parser(tokens, domain)
    result = parser.parse_sum()
    if parser.peek() is not None:
        raise DomainError(f"trailing input in polynomial text: {parser.tokens[parser.pos:]}")
    return result


def _format_q(c: Fraction):
    return (c < 0), str(abs(c))


def _format_qi(c: GaussianRational):
    if not c.im:
        return (c.re < 0), str(abs(c.re))
    if not c.re:
        mag = abs(c.im)
        return (c.im < 0), ("i" if mag == 1 else f"{mag}*i")
    return False, f"({c})"


def format_polynomial(p: Polynomial) -> str:
    """Printer for the text grammar; round-trips through parse_polynomial."""
    if p.is_zero:
        return "0"
    pieces = []
    one = _one(p.domain)
    for k in range(p.degree, -1, -1):
        c = p.coefficient(k)
        if not c:
            continue
        negative, mag = (_format_q(c) if p.domain is Domain.Q else _format_qi(c))
        if k == 0:
            body = mag
        else:
            xpart = "X" if k == 1 else f"X^{k}"
            body = xpart if mag == "1" else f"{mag}*{xpart}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)

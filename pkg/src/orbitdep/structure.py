"""Polynomial shape analysis: reduced-multiplicity profiles and the
superelliptic finiteness condition on them, exceptional forms X^s p(X)^m,
the iterate classifier, exceptional exponent sets, semiconjugacy
construction and verification, common-iterate search, standard pairs, and
generation of verified rank-1 dependent orbit pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd

from .errors import BudgetError, DomainError
from .exactmath import (
    GAUSSIAN_UNITS,
    GaussianRational,
    RATIONAL_UNITS,
    as_rational,
    gaussian_nth_root,
    rational_nth_root,
)
from .multdep import DependenceStatus, MultRelation, test_dependence
from .poly import (
    Domain,
    Polynomial,
    compose,
    dickson,
    iterate,
    squarefree_decompose,
)

# ---------------------------------------------------------------------------
# Reduced multiplicity profiles


@dataclass(frozen=True, slots=True)
class LeVequeProfile:
    """Sorted reduced multiplicities m_i = m / gcd(m, e_i) with root counts."""

    m: int
    entries: tuple[tuple[int, int], ...]  # (m_i, number of distinct roots)

    def expanded(self) -> tuple[int, ...]:
        out = []
        for mi, count in self.entries:
            out.extend([mi] * count)
        return tuple(out)

    def satisfies(self) -> bool:
        ms = self.expanded()
        if len(ms) >= 2 and ms[0] >= 3 and ms[1] >= 2:
            return True
        return len(ms) >= 3 and ms[0] == ms[1] == ms[2] == 2


def _profile_from_multiplicities(mults, m: int) -> LeVequeProfile:
    agg: dict[int, int] = {}
    for e, count in mults:
        mi = m // gcd(m, e)
        agg[mi] = agg.get(mi, 0) + count
    entries = tuple(sorted(agg.items(), reverse=True))
    return LeVequeProfile(m, entries)


def leveque_profile(f: Polynomial, m: int) -> LeVequeProfile:
    if f.degree < 1:
        raise DomainError("profiles need a nonconstant polynomial")
    if m < 2:
        raise DomainError("profile exponent must be at least 2")
    return _profile_from_multiplicities(squarefree_decompose(f).multiplicities(), m)


def satisfies_leveque(f: Polynomial, m: int) -> bool:
    """True iff the reduced multiplicity tuple of (f, m) satisfies
    m_1 >= 3, m_2 >= 2, or m_1 = m_2 = m_3 = 2."""
    return leveque_profile(f, m).satisfies()


# ---------------------------------------------------------------------------
# Exceptional forms X^s p(X)^m


@dataclass(frozen=True, slots=True)
class ExceptionalForm:
    """Witness that a polynomial equals content * X^s * p(X)^m exactly."""

    s: int
    p: Polynomial
    content: object
    m: int
    content_is_power: bool

    def reconstruct(self) -> Polynomial:
        return (self.p ** self.m).shift_up(self.s).scale(self.content)


def _scalar_nth_root(value, k: int, domain: Domain):
    if domain is Domain.Q:
        return rational_nth_root(as_rational(value), k)
    return gaussian_nth_root(GaussianRational.of(value), k)


def exceptional_form(f: Polynomial, m: int) -> ExceptionalForm | None:
    """The form witness when every nonzero-root multiplicity of f is
    divisible by m; None otherwise."""
    if f.degree < 1:
        raise DomainError("exceptional form needs a nonconstant polynomial")
    if m < 2:
        raise DomainError("form exponent must be at least 2")
    x = Polynomial.x(f.domain)
    s = 0
    p = Polynomial.one(f.domain)
    for g, e in squarefree_decompose(f).parts:
        if not g.coefficient(0):  # g vanishes at 0
            s = e
            h = g.div_exact(x)
            if h.degree > 0:
                if e % m:
                    return None
                p = p * h ** (e // m)
        else:
            if e % m:
                return None
            p = p * g ** (e // m)
    content = f.leading
    has_root = _scalar_nth_root(content, m, f.domain) is not None
    form = ExceptionalForm(s=s, p=p, content=content, m=m, content_is_power=has_root)
    assert form.reconstruct() == f
    return form


class LeVequeCaseKind(Enum):
    EXCEPTIONAL_FORM = "exceptional-form"
    SQUARE_ITERATE_EXCEPTIONAL = "square-iterate-exceptional"
    LEVEQUE_ITERATE = "leveque-iterate"


@dataclass(frozen=True, slots=True)
class LeVequeCase:
    kind: LeVequeCaseKind
    form: ExceptionalForm | None = None
    square: Polynomial | None = None
    j: int | None = None


#: Iterates beyond this are never needed for the trichotomy to resolve.
ITERATE_BOUND = 6


def classify_leveque_case(f: Polynomial, m: int) -> LeVequeCase:
    """Trichotomy for a non-linear, non-monomial f and exponent m >= 2:
    f is of exceptional form, or (m = 2 only) f^2 is, or some iterate
    f^j with j <= 6 satisfies the profile condition."""
    if f.degree <= 1:
        raise DomainError("classification needs degree at least 2")
    if f.is_monomial:
        raise DomainError("classification excludes monomials")
    if m < 2:
        raise DomainError("classification exponent must be at least 2")
    form = exceptional_form(f, m)
    if form is not None:
        return LeVequeCase(LeVequeCaseKind.EXCEPTIONAL_FORM, form=form)
    if m == 2:
        f2 = iterate(f, 2)
        form2 = exceptional_form(f2, 2)
        if form2 is not None:
            return LeVequeCase(
                LeVequeCaseKind.SQUARE_ITERATE_EXCEPTIONAL, form=form2, square=f2
            )
    g = f
    for j in range(1, ITERATE_BOUND + 1):
        if satisfies_leveque(g, m):
            return LeVequeCase(LeVequeCaseKind.LEVEQUE_ITERATE, j=j)
        if j < ITERATE_BOUND:
            g = compose(f, g)
    raise AssertionError("no iterate within the guaranteed bound satisfied the condition")


# ---------------------------------------------------------------------------
# Exceptional exponent sets


def exceptional_exponents(f: Polynomial) -> set[int]:
    """E(f) = {1} plus every exponent at which (f, l) fails the profile
    condition.  Finite: beyond twice the largest multiplicity every reduced
    multiplicity is at least 3, which the code asserts."""
    decomp = squarefree_decompose(f)
    if decomp.distinct_root_count() < 2:
        raise DomainError("exceptional exponents need at least two distinct roots")
    mults = decomp.multiplicities()
    bound = 2 * decomp.max_multiplicity()
    out = {1}
    for ell in range(2, bound + 1):
        if not _profile_from_multiplicities(mults, ell).satisfies():
            out.add(ell)
    probe = bound + 1
    probe_profile = _profile_from_multiplicities(mults, probe)
    assert all(mi >= 3 for mi, _ in probe_profile.entries) and probe_profile.satisfies()
    return out


def coprime_exponent_pairs(k_set, ell_set) -> set[tuple[int, int]]:
    """Cartesian filter {(k, l) : gcd(k, l) = 1}."""
    return {(k, ell) for k in k_set for ell in ell_set if gcd(k, ell) == 1}


def exceptional_pairs(f: Polynomial, g: Polynomial) -> set[tuple[int, int]]:
    """E(f, g): pairs (k, l) with k from E(g), l from E(f), gcd(k, l) = 1."""
    return coprime_exponent_pairs(exceptional_exponents(g), exceptional_exponents(f))


# ---------------------------------------------------------------------------
# Semiconjugacies


def build_hat(form: ExceptionalForm) -> Polynomial:
    """From f = c X^s p(X)^l build the semiconjugate X^s ftilde(X^l) where
    ftilde = c^(1/l) p.  Errors when c has no l-th root in the domain."""
    ell = form.m
    root = _scalar_nth_root(form.content, ell, form.p.domain)
    if root is None:
        raise DomainError(
            f"content {form.content} is not an exact {ell}-th power in the "
            "working domain, so the semiconjugate cannot be built over it"
        )
    f_tilde = form.p.scale(root)
    return f_tilde.stretch(ell).shift_up(form.s)


def verify_semiconjugacy(f: Polynomial, f_hat: Polynomial, ell: int, n: int) -> bool:
    """Exact coefficientwise check of f^N(X^l) == fhat^N(X)^l."""
    if n < 1:
        raise DomainError("semiconjugacy check needs N >= 1")
    if ell < 1:
        raise DomainError("semiconjugacy check needs l >= 1")
    f._check_domain(f_hat)
    lhs = iterate(f, n).stretch(ell)
    rhs = iterate(f_hat, n) ** ell
    return lhs == rhs


# ---------------------------------------------------------------------------
# Common iterates

_FILTER_PRIMES = (2305843009213693951, 4611686018427387847)


def _iterated_eval_mod(f: Polynomial, x: int, times: int, p: int) -> int | None:
    """f^times(x) mod p, or None when a denominator is not invertible."""
    num_den = [(c.numerator, c.denominator) for c in f.coeffs]
    for _, d in num_den:
        if d % p == 0:
            return None
    coeffs = [(n * pow(d, -1, p)) % p for n, d in num_den]
    v = x % p
    for _ in range(times):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * v + c) % p
        v = acc
    return v


def common_iterate_search(
    f: Polynomial,
    g: Polynomial,
    maxdeg: int = 10**6,
    exact_degree_cap: int = 4096,
) -> tuple[int, int] | None:
    """Smallest (n, m) with deg(f)^n = deg(g)^m <= maxdeg and f^n = g^m,
    or None when no candidate within the bound matches.

    Degree matching prunes the search; candidates are rejected exactly by
    modular evaluation before any large iterate is constructed.
    """
    if f.degree < 2 or g.degree < 2:
        raise DomainError("common-iterate search needs degrees at least 2")
    if f.domain is not Domain.Q or g.domain is not Domain.Q:
        raise DomainError("common-iterate search is implemented over Q")
    df, dg = f.degree, g.degree
    n = 1
    deg_f = df
    while deg_f <= maxdeg:
        t, m = deg_f, 0
        while t > 1 and t % dg == 0:
            t //= dg
            m += 1
        if t == 1 and m >= 1:
            mismatch = False
            for p in _FILTER_PRIMES:
                for x in range(1, 9):
                    a = _iterated_eval_mod(f, x, n, p)
                    b = _iterated_eval_mod(g, x, m, p)
                    if a is None or b is None:
                        continue
                    if a != b:
                        mismatch = True
                        break
                if mismatch:
                    break
            if not mismatch:
                if deg_f > exact_degree_cap:
                    raise BudgetError(
                        f"candidate pair ({n}, {m}) of degree {deg_f} passed "
                        "filters but exceeds the exact comparison cap",
                        candidate=(n, m),
                    )
                if iterate(f, n) == iterate(g, m):
                    return (n, m)
        n += 1
        deg_f *= df
    return None


# ---------------------------------------------------------------------------
# Standard pairs


class StandardPairKind(Enum):
    FIRST = "first"
    SECOND = "second"
    THIRD = "third"
    FOURTH = "fourth"
    FIFTH = "fifth"
    SPECIFIC = "specific"


@dataclass(frozen=True, slots=True)
class StandardPair:
    kind: StandardPairKind
    parameters: dict = field(hash=False)
    f1: Polynomial = None
    g1: Polynomial = None
    switched: bool = False


def _require(condition: bool, constraint: str):
    if not condition:
        raise DomainError(f"standard pair constraint violated: {constraint}")


def _as_poly(p, domain: Domain) -> Polynomial:
    if p is None:
        return Polynomial.one(domain)
    if isinstance(p, Polynomial):
        if p.domain is not domain:
            raise DomainError("parameter polynomial domain mismatch")
        return p
    return Polynomial.constant(p, domain)


def make_standard_pair(
    kind: StandardPairKind,
    *,
    m: int | None = None,
    n: int | None = None,
    r: int | None = None,
    a=None,
    b=None,
    p=None,
    switched: bool = False,
    domain: Domain = Domain.Q,
) -> StandardPair:
    """Construct one of the five standard pairs, or the Dickson specific
    pair, validating the parameter constraints of its kind."""
    x = Polynomial.x(domain)
    params: dict = {}
    if kind is StandardPairKind.FIRST:
        _require(m is not None and m >= 1, "m >= 1")
        _require(r is not None and 0 <= r < m, "0 <= r < m")
        _require(gcd(r, m) == 1, "gcd(r, m) = 1")
        a_s = _coerce_scalar(a, domain)
        _require(bool(a_s), "a != 0")
        p_poly = _as_poly(p, domain)
        _require(not p_poly.is_zero, "p != 0")
        _require(r + p_poly.degree > 0, "r + deg p > 0")
        f1 = x**m
        g1 = (p_poly**m).shift_up(r).scale(a_s)
        params = {"m": m, "r": r, "a": a_s, "p": p_poly}
    elif kind is StandardPairKind.SECOND:
        a_s, b_s = _coerce_scalar(a, domain), _coerce_scalar(b, domain)
        _require(bool(a_s), "a != 0")
        _require(bool(b_s), "b != 0")
        p_poly = _as_poly(p, domain)
        _require(not p_poly.is_zero, "p != 0")
        f1 = x**2
        g1 = ((x**2).scale(a_s) + Polynomial.constant(b_s, domain)) * p_poly**2
        params = {"a": a_s, "b": b_s, "p": p_poly}
    elif kind is StandardPairKind.THIRD:
        _require(m is not None and n is not None and m >= 1 and n >= 1, "m, n >= 1")
        _require(gcd(m, n) == 1, "gcd(m, n) = 1")
        a_s = _coerce_scalar(a, domain)
        _require(bool(a_s), "a != 0")
        f1 = dickson(m, a_s**n, domain)
        g1 = dickson(n, a_s**m, domain)
        params = {"m": m, "n": n, "a": a_s}
    elif kind is StandardPairKind.FOURTH:
        _require(m is not None and n is not None and m >= 1 and n >= 1, "m, n >= 1")
        _require(gcd(m, n) == 2, "gcd(m, n) = 2")
        a_s, b_s = _coerce_scalar(a, domain), _coerce_scalar(b, domain)
        _require(bool(a_s), "a != 0")
        _require(bool(b_s), "b != 0")
        f1 = dickson(m, a_s, domain).scale(a_s ** (-(m // 2)))
        g1 = -dickson(n, b_s, domain).scale(b_s ** (n // 2))
        params = {"m": m, "n": n, "a": a_s, "b": b_s}
    elif kind is StandardPairKind.FIFTH:
        a_s = _coerce_scalar(a, domain)
        _require(bool(a_s), "a != 0")
        f1 = ((x**2).scale(a_s) - Polynomial.one(domain)) ** 3
        g1 = (x**4).scale(3) - (x**3).scale(4)
        params = {"a": a_s}
    elif kind is StandardPairKind.SPECIFIC:
        _require(m is not None and n is not None and m >= 1 and n >= 1, "m, n >= 1")
        d = gcd(m, n)
        _require(d >= 3, "gcd(m, n) >= 3")
        _require(d in (3, 4, 6), "cos(2*pi/d) must be rational, so d in {3, 4, 6}")
        if d != 3:
            # cos(2*pi/d) is rational for d in {4, 6} but the printed formula
            # scales by cos(pi/d), which is irrational there; refuse rather
            # than guess an intended variant.
            raise DomainError(
                f"specific pair with d = {d}: cos(pi/{d}) is not rational, so "
                "the pair as printed is not constructible over this domain"
            )
        a_s = _coerce_scalar(a, domain)
        _require(bool(a_s), "a != 0")
        cos_pi_d = Fraction(1, 2)
        f1 = dickson(m, a_s ** (n // d), domain)
        g1 = -compose(dickson(n, a_s ** (m // d), domain), x.scale(cos_pi_d))
        params = {"m": m, "n": n, "a": a_s, "d": d}
    else:
        raise DomainError(f"unknown standard pair kind: {kind}")
    if switched:
        f1, g1 = g1, f1
    return StandardPair(kind=kind, parameters=params, f1=f1, g1=g1, switched=switched)


def _coerce_scalar(value, domain: Domain):
    if value is None:
        raise DomainError("standard pair constraint violated: missing scalar parameter")
    if domain is Domain.Q:
        return as_rational(value)
    return GaussianRational.of(value)


# ---------------------------------------------------------------------------
# Separated-variable solution scans and shape verification


def scan_separated_solutions(f: Polynomial, g: Polynomial, bound: int) -> list[tuple[int, int]]:
    """All integer pairs (x, y) with |x|, |y| <= bound and f(x) = g(y)."""
    if bound < 1:
        raise DomainError("scan bound must be at least 1")
    if f.domain is not Domain.Q or g.domain is not Domain.Q:
        raise DomainError("solution scans run over Q")
    table: dict = {}
    for x in range(-bound, bound + 1):
        table.setdefault(f(x), []).append(x)
    out = []
    for y in range(-bound, bound + 1):
        for x in table.get(g(y), ()):
            out.append((x, y))
    out.sort()
    return out


def _units(domain: Domain):
    return RATIONAL_UNITS if domain is Domain.Q else GAUSSIAN_UNITS


def verify_bt_shape(f, g, phi, f1, g1, lam, mu, k: int, ell: int, zeta=1) -> bool:
    """Check f^k = phi(f1(lam)) and zeta g^l = phi(g1(mu)) exactly, with
    lam and mu linear and zeta a unit of the working domain."""
    for poly in (g, phi, f1, g1, lam, mu):
        f._check_domain(poly)
    if lam.degree != 1 or mu.degree != 1:
        raise DomainError("the inner compositions must be linear polynomials")
    if k < 1 or ell < 1:
        raise DomainError("shape exponents must be positive")
    zeta_s = _coerce_scalar(zeta, f.domain)
    if zeta_s not in _units(f.domain):
        raise DomainError("zeta must be a root of unity of the working domain")
    left = f**k == compose(phi, compose(f1, lam))
    right = (g**ell).scale(zeta_s) == compose(phi, compose(g1, mu))
    return left and right


# ---------------------------------------------------------------------------
# Rank-1 dependent families from semiconjugacy data


@dataclass(frozen=True, slots=True)
class SemiconjugacyData:
    """Decomposition data feeding the dependent family construction:
    f = X^s ftilde^l with fhat = X^s ftilde(X^l), g = X^t gtilde^k with
    ghat likewise, and fhat^n = ghat^m a common iterate."""

    f: Polynomial
    g: Polynomial
    s: int
    t: int
    k: int
    ell: int
    f_hat: Polynomial
    g_hat: Polynomial
    n: int
    m: int


@dataclass(frozen=True, slots=True)
class DependentPair:
    r: int
    index_f: int
    index_g: int
    left: Fraction
    right: Fraction
    relation: MultRelation


def dependent_family(data: SemiconjugacyData, x, count: int) -> list[DependentPair]:
    """First `count` members of the rank-1 dependent family
    (f^{nr}(x), g^{mr}(y^k)) with y^l = x, each chain identity asserted
    exactly and each pair re-verified dependent of rank 1."""
    if count < 0:
        raise DomainError("family size must be nonnegative")
    if count == 0:
        return []
    f, g = data.f, data.g
    if f.domain is not Domain.Q or g.domain is not Domain.Q:
        raise DomainError("dependent families are generated over Q")
    if data.k < 1 or data.ell < 1 or gcd(data.k, data.ell) != 1:
        raise DomainError("exponents k and l must be coprime positive integers")
    if data.k == 1 and data.ell == 1:
        raise DomainError(
            "degenerate exponents k = l = 1: the construction needs a "
            "nontrivial relation to force rank 1"
        )
    if not verify_semiconjugacy(f, data.f_hat, data.ell, 1):
        raise DomainError("f and fhat do not satisfy the semiconjugacy identity")
    if not verify_semiconjugacy(g, data.g_hat, data.k, 1):
        raise DomainError("g and ghat do not satisfy the semiconjugacy identity")
    if iterate(data.f_hat, data.n) != iterate(data.g_hat, data.m):
        raise DomainError("fhat^n and ghat^m are not equal polynomials")
    x = as_rational(x)
    y = rational_nth_root(x, data.ell)
    if y is None:
        raise DomainError("x must be an exact l-th power in Q")
    pairs = []
    zf = x  # f^{n r}(x)
    hy = y  # fhat^{n r}(y)
    gy = y  # ghat^{m r}(y)
    wg = y**data.k  # g^{m r}(y^k)
    for r in range(1, count + 1):
        for _ in range(data.n):
            zf = f(zf)
            hy = data.f_hat(hy)
        for _ in range(data.m):
            gy = data.g_hat(gy)
            wg = g(wg)
        if hy != gy:
            raise AssertionError(f"common iterate values diverged at r = {r}")
        if zf != hy**data.ell:
            raise AssertionError(f"f-side semiconjugacy identity failed at r = {r}")
        if wg != gy**data.k:
            raise AssertionError(f"g-side semiconjugacy identity failed at r = {r}")
        verdict = test_dependence((zf, wg))
        if verdict.status is not DependenceStatus.DEPENDENT or verdict.rank != 1:
            raise AssertionError(f"emitted pair failed the rank-1 check at r = {r}")
        pairs.append(
            DependentPair(
                r=r,
                index_f=data.n * r,
                index_g=data.m * r,
                left=zf,
                right=wg,
                relation=verdict.relation,
            )
        )
    return pairs

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbitdep.errors import DomainError
from orbitdep.exactmath import GaussianRational
from orbitdep.poly import (
    Domain,
    Polynomial,
    compose,
    decompose_functional,
    dickson,
    iterate,
    parse_polynomial,
    poly_gcd,
    radical,
    squarefree_decompose,
    twist,
)

X = Polynomial.x()


def P(text, domain=None):
    return parse_polynomial(text, domain)


# ---------------------------------------------------------------------------
# compose / iterate


def test_compose_identity():
    g = 3 * X**5 - X + 7
    assert compose(X, g) == g


def test_compose_quadratic():
    f = X**2 + 2
    assert compose(f, f) == X**4 + 4 * X**2 + 6


def test_compose_monomials():
    assert compose(X**2, X**3) == X**6


def test_compose_domain_mismatch():
    with pytest.raises(DomainError):
        compose(X, Polynomial.x(Domain.QI))


def test_iterate_base_and_square():
    f = X**2 + 2
    assert iterate(f, 1) == f
    assert iterate(f, 2) == X**4 + 4 * X**2 + 6
    with pytest.raises(DomainError):
        iterate(f, 0)


def test_iterate_gaussian_example():
    # (X - 4i)(X - i)^2 squares to X times a quadratic-in-shape factor
    f = P("X^3-6*i*X^2-9*X+4*i")
    expected = P("X*(X^4-9*i*X^3-27*X^2+30*i*X+9)^2")
    assert iterate(f, 2) == expected


def test_iterate_additivity():
    rng = random.Random(5)
    for _ in range(10):
        deg = rng.randint(2, 3)
        f = Polynomial([Fraction(rng.randint(-3, 3)) for _ in range(deg)] + [Fraction(1)])
        a = rng.randint(1, 3)
        b = rng.randint(1, 3)
        if a + b > 6:
            continue
        assert iterate(f, a + b) == compose(iterate(f, a), iterate(f, b))


# ---------------------------------------------------------------------------
# squarefree decomposition and radicals


def test_squarefree_mixed_powers():
    f = X**2 * (X - 1) ** 3
    d = squarefree_decompose(f)
    assert d.content == 1
    assert [(g.to_string(), e) for g, e in d.parts] == [("X", 2), ("X - 1", 3)]


def test_squarefree_already_squarefree():
    f = X**2 - 1
    d = squarefree_decompose(f)
    assert d.content == 1
    assert [(g.to_string(), e) for g, e in d.parts] == [("X^2 - 1", 1)]


def test_squarefree_content():
    f = 4 * (X - 1) ** 2
    d = squarefree_decompose(f)
    assert d.content == 4
    assert [(g.to_string(), e) for g, e in d.parts] == [("X - 1", 2)]


def test_squarefree_random_reconstruction():
    rng = random.Random(11)
    for _ in range(30):
        f = Polynomial([Fraction(rng.randint(1, 5))])
        for _ in range(rng.randint(1, 3)):
            root = rng.randint(-4, 4)
            f = f * (X - root) ** rng.randint(1, 3)
        if f.degree < 1:
            continue
        d = squarefree_decompose(f)
        assert d.reconstruct() == f
        assert sum(e * g.degree for g, e in d.parts) == f.degree
        exps = [e for _, e in d.parts]
        assert exps == sorted(exps) and len(set(exps)) == len(exps)
        assert radical(f) == _product([g for g, _ in d.parts])


def _product(polys):
    out = Polynomial.one()
    for p in polys:
        out = out * p
    return out


def test_radical_fixtures():
    assert radical(X**2 * (X - 1) ** 3) == X**2 - X
    assert radical(X**2 + 1) == X**2 + 1
    assert radical(5 * X**4) == X


def test_gaussian_squarefree():
    f = P("X*(X^4-9*i*X^3-27*X^2+30*i*X+9)^2")
    d = squarefree_decompose(f)
    assert [(g.degree, e) for g, e in d.parts] == [(1, 1), (4, 2)]
    assert d.reconstruct() == f


# ---------------------------------------------------------------------------
# Dickson polynomials


def test_dickson_base_cases():
    a = Fraction(7)
    assert dickson(0, a) == Polynomial([2])
    assert dickson(1, a) == X


def test_dickson_low_degrees():
    a = Fraction(3)
    assert dickson(2, a) == X**2 - 6
    assert dickson(3, a) == X**3 - 9 * X


def test_dickson_functional_equation():
    # D_m(z + a/z, a) == z^m + (a/z)^m at rational points
    for m in range(0, 7):
        for a in (Fraction(2), Fraction(-3), Fraction(1, 2)):
            d = dickson(m, a)
            for z in (Fraction(1), Fraction(2), Fraction(-3), Fraction(5, 7)):
                assert d(z + a / z) == z**m + (a / z) ** m


def test_dickson_composition_identity():
    for m in range(1, 6):
        for n in range(1, 6):
            for a in (Fraction(2), Fraction(-1)):
                lhs = dickson(m * n, a)
                rhs = compose(dickson(m, a**n), dickson(n, a))
                assert lhs == rhs


# ---------------------------------------------------------------------------
# twists


def test_twist_fixtures():
    f = 3 * X**2 + X - 5
    assert twist(f, 1) == f
    assert twist(X**2, 2) == Polynomial([0, 0, Fraction(1, 2)])
    assert twist(X**3 - X, -1) == X**3 - X
    with pytest.raises(DomainError):
        twist(f, 0)


def test_twist_conjugates_iteration():
    rng = random.Random(3)
    for _ in range(8):
        f = Polynomial([Fraction(rng.randint(-3, 3)) for _ in range(3)] + [Fraction(1)])
        alpha = Fraction(rng.randint(1, 5), rng.randint(1, 3))
        for n in range(1, 5):
            assert iterate(twist(f, alpha), n) == twist(iterate(f, n), alpha)


# ---------------------------------------------------------------------------
# functional decomposition


def _linear_equivalent(found, known):
    """Is the found (g, h) the known pair after a linear change between them?"""
    g, h = found
    g0, h0 = known
    if h.degree != h0.degree:
        return False
    a = h0.leading / h.leading
    b = h0.coefficient(0) - a * h.coefficient(0)
    lam = Polynomial([b, a], h.domain)
    if compose(lam, h) != h0:
        return False
    lam_inv = Polynomial([-b / a, 1 / a], h.domain)
    return compose(g, lam_inv) == g0


def test_decompose_known_iterate():
    f = X**4 + 4 * X**2 + 6
    results = decompose_functional(f)
    assert any(_linear_equivalent(pair, (X**2 + 2, X**2 + 2)) for pair in results)
    for g, h in results:
        assert compose(g, h) == f


def test_decompose_monomial():
    results = decompose_functional(X**4)
    assert any(g == X**2 and h == X**2 for g, h in results)


def test_decompose_indecomposable():
    assert decompose_functional(X**6 + X + 1) == []


def test_decompose_degree_guards():
    with pytest.raises(DomainError):
        decompose_functional(X**2)
    with pytest.raises(DomainError):
        decompose_functional(X**30, max_degree=24)


# ---------------------------------------------------------------------------
# integer multiplication kernels


def test_packed_multiplication_matches_schoolbook():
    from orbitdep.poly import _kron_mul

    rng = random.Random(19)
    for _ in range(25):
        a = [rng.randint(-(10**6), 10**6) for _ in range(rng.randint(1, 90))]
        b = [rng.randint(-(10**6), 10**6) for _ in range(rng.randint(1, 90))]
        if not any(a) or not any(b):
            continue
        expected = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                expected[i + j] += x * y
        assert _kron_mul(a, b) == expected


# ---------------------------------------------------------------------------
# gcd


def test_gcd_shared_factor():
    a = (X - 1) ** 2 * (X + 2)
    b = (X - 1) * (X + 3)
    assert poly_gcd(a, b) == X - 1


def test_gcd_coprime():
    assert poly_gcd(X**2 + 1, X - 1) == Polynomial.one()


def test_gcd_random_products():
    rng = random.Random(17)
    for _ in range(25):
        common = _random_poly(rng, rng.randint(0, 3))
        a = common * _random_poly(rng, rng.randint(0, 3))
        b = common * _random_poly(rng, rng.randint(0, 3))
        if a.is_zero or b.is_zero:
            continue
        g = poly_gcd(a, b)
        assert (a % g).is_zero and (b % g).is_zero
        if common.degree >= 0 and not common.is_zero:
            assert g.degree >= common.degree or poly_gcd(common, g) == common.monic()


def _random_poly(rng, deg):
    coeffs = [Fraction(rng.randint(-5, 5)) for _ in range(deg)] + [
        Fraction(rng.choice([1, 2, 3, -1]))
    ]
    return Polynomial(coeffs)


# ---------------------------------------------------------------------------
# polynomial ABC inequality (tested, not assumed)


def test_polynomial_abc():
    rng = random.Random(29)
    done = 0
    while done < 60:
        a = _random_poly(rng, rng.randint(0, 6))
        b = _random_poly(rng, rng.randint(0, 6))
        if a.is_zero or b.is_zero or (a + b).is_zero:
            continue
        if max(a.degree, b.degree) < 1:
            continue
        if poly_gcd(a, b).degree != 0:
            continue
        c = -(a + b)
        done += 1
        rad = radical(a * b * c)
        assert rad.degree >= max(a.degree, b.degree, c.degree) + 1


# ---------------------------------------------------------------------------
# text format round-trips


@pytest.mark.parametrize(
    "text",
    [
        "3/2*X^4 - X + 5",
        "X^3-6*i*X^2-9*X+4*i",
        "i",
        "-i",
        "0",
        "7",
        "-2/3",
        "(1/2-i)*X^2 + (3+2*i)",
        "X",
    ],
)
def test_parse_print_fixtures(text):
    p = parse_polynomial(text)
    assert parse_polynomial(p.to_string(), p.domain) == p


def test_parse_rejects_garbage():
    with pytest.raises(DomainError):
        parse_polynomial("X^")
    with pytest.raises(DomainError):
        parse_polynomial("3 + $")
    with pytest.raises(DomainError):
        parse_polynomial("i", Domain.Q)


@given(
    st.lists(
        st.fractions(min_value=-50, max_value=50, max_denominator=20),
        min_size=0,
        max_size=7,
    )
)
@settings(max_examples=120)
def test_roundtrip_rational(coeffs):
    p = Polynomial(coeffs)
    assert parse_polynomial(p.to_string(), Domain.Q) == p


@given(
    st.lists(
        st.tuples(
            st.fractions(min_value=-9, max_value=9, max_denominator=6),
            st.fractions(min_value=-9, max_value=9, max_denominator=6),
        ),
        min_size=0,
        max_size=5,
    )
)
@settings(max_examples=120)
def test_roundtrip_gaussian(pairs):
    p = Polynomial([GaussianRational(re, im) for re, im in pairs], Domain.QI)
    assert parse_polynomial(p.to_string(), Domain.QI) == p

import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from orbitdep.errors import DomainError
from orbitdep.multdep import (
    DependenceStatus,
    MultRelation,
    is_rank_one_pair,
    mult_rank,
)
from orbitdep.multdep import test_dependence as dependence_of  # pytest-safe alias

PRIMES = (2, 3, 5, 7)


def random_value(rng):
    """Signed product of small primes with exponents in [-3, 3]."""
    exps = [rng.randint(-3, 3) for _ in PRIMES]
    sign = rng.choice([1, -1])
    v = Fraction(sign)
    for p, e in zip(PRIMES, exps):
        v *= Fraction(p) ** e
    return v, exps, sign


def oracle_dependent(exp_rows, signs, box=8):
    """Exhaustive search for a relation with |k_i| <= box, done with exact
    integer matrix arithmetic, independent of the library path."""
    n = len(exp_rows)
    E = np.array(exp_rows, dtype=np.int64)
    neg = np.array([1 if s < 0 else 0 for s in signs], dtype=np.int64)
    grid = np.array(list(product(range(-box, box + 1), repeat=n)), dtype=np.int64)
    prods = grid @ E
    zero_rows = np.all(prods == 0, axis=1)
    parity_ok = (grid @ neg) % 2 == 0
    nonzero = np.any(grid != 0, axis=1)
    hits = grid[zero_rows & parity_ok & nonzero]
    return hits


def test_dependent_pair_fixture():
    verdict = dependence_of((4, 8))
    assert verdict.status is DependenceStatus.DEPENDENT
    assert verdict.relation.k == (3, -2)
    assert Fraction(4) ** 3 * Fraction(8) ** -2 == 1
    assert verdict.rank == 1


def test_independent_pair_fixture():
    # brute force |k_i| <= 10 finds nothing for (2, 3)
    for k1 in range(-10, 11):
        for k2 in range(-10, 11):
            if (k1, k2) != (0, 0):
                assert Fraction(2) ** k1 * Fraction(3) ** k2 != 1
    verdict = dependence_of((2, 3))
    assert verdict.status is DependenceStatus.INDEPENDENT
    assert verdict.rank == 2


def test_zero_coordinate_is_undefined():
    verdict = dependence_of((5, 0))
    assert verdict.status is DependenceStatus.UNDEFINED
    assert verdict.relation is None and verdict.rank is None


def test_relation_requires_nonzero():
    with pytest.raises(DomainError):
        MultRelation((0, 0))


def test_negative_values_need_even_sign_count():
    verdict = dependence_of((-2, 2))
    assert verdict.status is DependenceStatus.DEPENDENT
    assert verdict.relation.verify((-2, 2))
    verdict = dependence_of((-1,))
    assert verdict.status is DependenceStatus.DEPENDENT
    assert verdict.relation.k == (2,)


def test_oracle_equivalence_small():
    rng = random.Random(41)
    for _ in range(120):
        n = rng.randint(1, 4)
        triples = [random_value(rng) for _ in range(n)]
        values = [t[0] for t in triples]
        rows = [t[1] for t in triples]
        signs = [1 if t[0] > 0 else -1 for t in triples]
        hits = oracle_dependent(rows, signs)
        verdict = dependence_of(values)
        if len(hits):
            # box search conclusive: some relation exists
            assert verdict.status is DependenceStatus.DEPENDENT
        if verdict.status is DependenceStatus.INDEPENDENT:
            assert not len(hits)
        else:
            assert verdict.relation.verify(values)
            if all(abs(e) <= 8 for e in verdict.relation.k):
                assert len(hits)


def test_rank_fixtures():
    assert mult_rank((1, 5)) == 0
    assert mult_rank((2, 4)) == 1
    assert mult_rank((2, 3, 6)) == 2
    assert mult_rank((2, 3, 5)) == 3


def test_rank_rejects_zero():
    with pytest.raises(DomainError):
        mult_rank((2, 0))


def test_rank_repeated_values():
    assert mult_rank((2, 2)) == 1
    assert mult_rank((Fraction(1, 2), 2)) == 1


def test_rank_is_n_iff_independent():
    rng = random.Random(43)
    for _ in range(40):
        n = rng.randint(1, 4)
        values = [random_value(rng)[0] for _ in range(n)]
        if any(v in (1, -1) for v in values):
            continue
        verdict = dependence_of(values)
        r = mult_rank(values)
        assert (r == n) == (verdict.status is DependenceStatus.INDEPENDENT)


def test_rank_monotone_under_extension():
    rng = random.Random(47)
    for _ in range(30):
        n = rng.randint(2, 4)
        values = [random_value(rng)[0] for _ in range(n)]
        if any(v in (1, -1) for v in values):
            continue
        r = mult_rank(values)
        extra = random_value(rng)[0]
        if extra in (1, -1):
            continue
        r2 = mult_rank(values + [extra])
        assert r2 <= r + 1
        # dropping a coordinate keeps all small subsets independent
        for i in range(n):
            sub = values[:i] + values[i + 1 :]
            if sub:
                assert mult_rank(sub) >= min(r, len(sub))


def test_rank_one_pair_fixtures():
    pair = is_rank_one_pair(4, 8)
    assert (pair.k, pair.ell, pair.unit) == (3, 2, 1)
    assert is_rank_one_pair(2, 3) is None
    mixed = is_rank_one_pair(9, Fraction(1, 3))
    assert (mixed.k, mixed.ell) == (1, -2)
    assert mixed.mixed_sign
    assert mixed.verify(9, Fraction(1, 3))


def test_rank_one_pair_signs():
    pair = is_rank_one_pair(-4, 8)
    assert pair is not None
    assert Fraction(-4) ** pair.k == pair.unit * Fraction(8) ** pair.ell


def test_rank_one_pair_guards():
    with pytest.raises(DomainError):
        is_rank_one_pair(1, 8)
    with pytest.raises(DomainError):
        is_rank_one_pair(4, 0)


def test_certificates_always_reverify():
    rng = random.Random(53)
    for _ in range(80):
        n = rng.randint(1, 4)
        values = [random_value(rng)[0] for _ in range(n)]
        verdict = dependence_of(values)
        if verdict.status is DependenceStatus.DEPENDENT:
            assert verdict.relation.verify(values)

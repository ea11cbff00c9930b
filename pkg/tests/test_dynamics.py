import json
import random
from fractions import Fraction

import pytest

from orbitdep.errors import BudgetError, DomainError
from orbitdep.exactmath import FactorEffort
from orbitdep.dynamics import (
    PartialSquarefree,
    check_divisibility_sequence,
    check_rigid,
    count_multdep,
    largest_squarefree_factor,
    orbit,
    primitive_part,
)
from orbitdep.poly import Polynomial

X = Polynomial.x()
F2 = X**2 + 2


def test_orbit_fixture():
    table = orbit(F2, 0, 4)
    assert table.values == (2, 6, 38, 1446)
    assert not table.preperiodic


def test_orbit_preperiodic_flag():
    table = orbit(X**2 - 2, 0, 4)
    assert table.values == (-2, 2, 2, 2)
    assert table.preperiodic and table.repeat == (3, 2)


def test_orbit_rejects_linear():
    with pytest.raises(DomainError):
        orbit(X, 5, 3)


def test_orbit_size_guard():
    with pytest.raises(BudgetError):
        orbit(F2, 3, 50, bit_cap=200)


def test_orbit_rational_start():
    table = orbit(F2, Fraction(1, 2), 3)
    assert table.values[0] == Fraction(9, 4)
    assert table.values[1] == F2(Fraction(9, 4))


def test_divisibility_fixtures():
    assert check_divisibility_sequence((2, 6, 38, 1446)).ok
    bad = check_divisibility_sequence((2, 4, 7))
    assert not bad.ok and bad.violation == (1, 3)
    assert check_divisibility_sequence((1, 1, 1)).ok
    with pytest.raises(DomainError):
        check_divisibility_sequence((2, 0))


def test_rigid_fixture_orbit():
    table = orbit(F2, 0, 5)
    report = check_rigid(table.values, 1000)
    assert report.ok
    assert report.exponents[2] == 1
    assert report.exponents[3] == 1
    assert report.exponents[19] == 1


def test_rigid_violations():
    report = check_rigid((2, 4), 100)
    assert not report.ok and report.violation[0] == 2
    report = check_rigid((3, 9, 3), 100)
    assert not report.ok and report.violation[0] == 3


def test_primitive_part_fixtures():
    table = orbit(F2, 0, 4)
    assert primitive_part(table, 1) == 2
    assert primitive_part(table, 3) == 19
    assert primitive_part(table, 4) == 241


def test_primitive_part_postconditions():
    from math import gcd

    table = orbit(F2, 0, 10)
    for m in range(1, 11):
        part = primitive_part(table, m)
        assert table.value(m) % part == 0
        for k in range(1, m):
            assert gcd(abs(part), abs(table.value(k))) == 1


def test_primitive_part_needs_integer_orbit():
    table = orbit(F2, Fraction(1, 2), 3)
    with pytest.raises(DomainError):
        primitive_part(table, 2)


def test_largest_squarefree_fixtures():
    assert largest_squarefree_factor(1446) == 1446
    assert largest_squarefree_factor(72) == 6
    assert largest_squarefree_factor(1) == 1
    assert largest_squarefree_factor(-72) == 6
    with pytest.raises(DomainError):
        largest_squarefree_factor(0)


def test_largest_squarefree_partial():
    import gmpy2

    p = int(gmpy2.next_prime(10**29 + 11))
    q = int(gmpy2.next_prime(10**29 + 1000))
    effort = FactorEffort(trial_bound=100, rho_iterations=5, rho_restarts=1)
    result = largest_squarefree_factor(p * q * 4, effort)
    assert isinstance(result, PartialSquarefree)
    assert result.known == 2
    assert result.unfactored == p * q


# ---------------------------------------------------------------------------
# rigid divisibility sequence families


def random_zero_linear_poly(rng):
    """Monic, zero linear coefficient, nonzero constant term, degree 2..4."""
    deg = rng.randint(2, 4)
    coeffs = [Fraction(rng.choice([c for c in range(-9, 10) if c]))]
    coeffs.append(Fraction(0))
    coeffs.extend(Fraction(rng.randint(-9, 9)) for _ in range(deg - 2))
    coeffs.append(Fraction(1))
    return Polynomial(coeffs)


def test_zero_linear_coefficient_orbits_are_rigid():
    rng = random.Random(83)
    for _ in range(6):
        f = random_zero_linear_poly(rng)
        table = orbit(f, 0, 8, bit_cap=2**22)
        if any(v == 0 for v in table.values):
            continue
        assert check_divisibility_sequence(table.values).ok
        assert check_rigid(table.values, 10**4).ok


def test_conjugated_orbit_is_rigid():
    rng = random.Random(89)
    for _ in range(4):
        r = rng.choice([1, -1, 2, -2, 3])
        b = rng.choice([1, -1, 2, 3])
        # (X - r)(X^2 + bX + rb) is monic with zero linear coefficient
        f = (X - r) * (X**2 + b * X + r * b)
        shifted = _conjugate(f, r)
        table = orbit(shifted, 0, 8, bit_cap=2**22)
        if any(v == 0 for v in table.values):
            continue
        assert check_divisibility_sequence(table.values).ok
        assert check_rigid(table.values, 10**4).ok


def _conjugate(f, r):
    from orbitdep.poly import compose

    return compose(f, X + r) - r


# ---------------------------------------------------------------------------
# counting


def test_count_diagonal_small():
    report = count_multdep((F2, F2), (0, 0), 3)
    assert report.count == 3
    assert [indices for indices, _ in report.certificates] == [(1, 1), (2, 2), (3, 3)]
    for indices, relation in report.certificates:
        assert relation.k == (1, -1)


def test_count_single_component():
    report = count_multdep((F2,), (0,), 4)
    assert report.count == 0


def test_count_monomial_guard():
    with pytest.raises(DomainError):
        count_multdep((X**2, X**2), (0, 0), 3)
    with pytest.raises(DomainError):
        count_multdep((X + 1, F2), (0, 0), 3)


def test_count_budget():
    with pytest.raises(BudgetError) as err:
        count_multdep((F2, F2), (0, 0), 100, budget=1000)
    assert err.value.info["largest_completed_N"] >= 1


def test_count_rank_filter_drops_units():
    # orbit of 0 under X^2 - 1 hits -1 and 0: (-1, 0, -1, 0, ...)
    f = X**2 - 1
    plain = count_multdep((f, f), (1, 1), 4)
    filtered = count_multdep((f, f), (1, 1), 4, rank_filter=True)
    assert filtered.count <= plain.count
    # values here are 0 and -1 only; every counted tuple is rank 0
    assert filtered.count == 0


def test_count_threads_deterministic():
    single = count_multdep((F2, F2), (0, 0), 6)
    threaded = count_multdep((F2, F2), (0, 0), 6, threads=3)
    assert single.count == threaded.count
    assert single.certificates == threaded.certificates


def test_count_report_emission():
    report = count_multdep((F2, F2), (0, 0), 3)
    csv_text = report.to_csv()
    lines = csv_text.strip().splitlines()
    assert lines[0] == "m_1,m_2,k_1,k_2"
    assert lines[1:] == ["1,1,1,-1", "2,2,1,-1", "3,3,1,-1"]
    summary = report.summary()
    json.dumps(summary)
    assert summary["count"] == 3 and summary["ratio_power"] == 1.0

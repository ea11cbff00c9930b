"""orbitdep: exact computational arithmetic dynamics.

Multiplicative dependence of polynomial orbit values over Q and Q(i):
dependence certificates and ranks, reduced-multiplicity classification,
semiconjugacy construction, standard pairs, rigid divisibility sequences,
primitive prime divisors, and dependent-tuple counting.
"""

from .errors import BudgetError, DomainError, OrbitdepError
from .exactmath import (
    CoprimeBasis,
    FactorEffort,
    Factorization,
    GaussianRational,
    IntegerMatrix,
    Rational,
    factor_bounded,
    factor_refine,
    hermite_normal_form,
    is_probable_prime,
    is_root_of_unity,
    left_kernel,
    rational_nth_root,
    gaussian_nth_root,
)
from .poly import (
    Domain,
    Polynomial,
    SquarefreeDecomposition,
    compose,
    decompose_functional,
    dickson,
    format_polynomial,
    iterate,
    parse_polynomial,
    poly_gcd,
    radical,
    squarefree_decompose,
    twist,
)
from .multdep import (
    DependenceStatus,
    DependenceVerdict,
    MultRelation,
    RankOnePair,
    is_rank_one_pair,
    mult_rank,
    test_dependence,
)
from .structure import (
    ExceptionalForm,
    LeVequeCase,
    LeVequeCaseKind,
    LeVequeProfile,
    SemiconjugacyData,
    StandardPair,
    StandardPairKind,
    build_hat,
    classify_leveque_case,
    common_iterate_search,
    coprime_exponent_pairs,
    dependent_family,
    exceptional_exponents,
    exceptional_form,
    exceptional_pairs,
    leveque_profile,
    make_standard_pair,
    satisfies_leveque,
    scan_separated_solutions,
    verify_bt_shape,
    verify_semiconjugacy,
)
from .dynamics import (
    CountReport,
    OrbitTable,
    PartialSquarefree,
    check_divisibility_sequence,
    check_rigid,
    count_multdep,
    largest_squarefree_factor,
    orbit,
    primitive_part,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

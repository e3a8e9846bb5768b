"""Exact criteria checker for Fermat-type equations C x^2 + q^k y^(2n) = z^n.

The package decides, pair by pair (C, q) and exponent parity k mod 2,
whether the algorithmic sufficient conditions for an asymptotic exponent
bound hold: the associated power-of-two, Ramanujan-Nagell and q-power
obstruction equations are searched exactly over an exponent box, backed by
the Frey-curve construction, congruence sieves, candidate-curve realization
and Mordell-curve reductions used to justify them.
"""

from .candidates import (
    CandidateCurve,
    ShapeDescriptor,
    candidates_for_solution,
    enumerate_shapes,
    inertia_check,
    obstruction_for_shape,
    realize_candidates,
)
from .curvedb import CurveDatabase, CurveRecord, by_conductor, load_db, parse_db, serialize_db
from .diophantine import (
    MAIN,
    QPOW,
    RN,
    LookupResult,
    MordellCurve,
    ObstructionSolution,
    SPoint,
    SPointSearch,
    lookup_solve,
    mordell_family,
    point_to_solution,
    s_point_search,
    solution_to_point,
    solve_main,
    solve_qpow,
    solve_rn,
)
from .ellcurve import (
    CurveAB,
    CurveGeneral,
    InvariantTriple,
    RationalCurve,
    ReducedCurve,
    count_points,
    full_two_torsion_mod_ell,
    general_invariants,
    has_order4_subgroup_mod_ell,
    invariants_ab,
    minimal_reduce_ab,
    reduce_mod,
    trace_of_frobenius,
    two_isogenous_curve,
)
from .frey import (
    ADAPTED,
    FreyCurve,
    FreyInstance,
    TwoStructureReport,
    build_frey,
    frey_conductor,
    frey_discriminant,
    frey_two_structure_report,
    lowered_level,
)
from .intmath import (
    PrimeSet,
    Valuation,
    is_perfect_square,
    is_prime,
    legendre,
    primes_up_to,
    radical_excluding,
    squarefree_check,
    valuation,
)
from .pipeline import (
    OBSTRUCTED,
    SATISFIED_WITHIN_BOX,
    VACUOUS,
    PairTask,
    SurveyReport,
    Verdict,
    check_pair,
    mod8_filter,
    render_report,
    survey,
)
from .sieve import (
    NewformCoefficient,
    TraceSets,
    WitnessSearch,
    admissible_traces,
    chebotarev_witness,
    congruence_divisor,
    galois_witness,
    kraus_product,
    newform_bound,
)

__version__ = "0.1.0"

"""Arithmetical-rank bounds and radical-generation certificates for squarefree monomial ideals."""

from .certificates import (
    CheckResult,
    GSVCertificate,
    Prop1Certificate,
    ProcedureTrace,
    SVCertificate,
    check_gsv,
    check_prop1,
    check_sv,
    prop1_to_gsv,
    replay_trace,
    sv_to_gsv,
)
from .combinatorics import (
    HeightReport,
    MinimalPrime,
    MonomialIdeal,
    SimplicialComplex,
    build_Im,
    build_ngon,
    height_report,
    is_connected_one_dim,
    minimal_primes,
    minimalize,
    stanley_reisner_ideal,
)
from .fields import QQ, Field4, PrimeField, RationalField, parse_field
from .fixtures import load_fixture
from .oracle import (
    GroebnerBasis,
    Identity,
    MembershipVerdict,
    MonomialOrder,
    groebner,
    point_counterexample,
    radical_equal,
    radical_member,
    verify_identity,
)
from .ring import (
    Polynomial,
    RingSpec,
    SquarefreeMonomial,
    parse_entity,
    parse_polynomial,
    poly_arith,
    poly_eval,
    sqf_divides,
)
from .search import AraReport, SearchConfig, ara_report, run_search, search_grouping

__version__ = "0.1.0"

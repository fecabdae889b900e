import random
from fractions import Fraction

import pytest

from ararank.combinatorics import MonomialIdeal, build_Im_family
from ararank.fields import QQ, Field4, PrimeField
from ararank.fixtures import load_fixture
from ararank.oracle import (
    DEGREVLEX,
    LEX,
    Identity,
    MembershipVerdict,
    MonomialOrder,
    UnsupportedQueryError,
    change_field,
    groebner,
    point_counterexample,
    radical_equal,
    radical_member,
    s_polynomial,
    specialize_params,
    unreduced_s_polynomials,
    verify_identity,
)
from ararank.ring import Polynomial, RingSpec, SquarefreeMonomial, parse_monomial, parse_polynomial

from conftest import random_monomials

R5 = RingSpec(5)


def P(text, ring=R5):
    return parse_polynomial(text, ring)


def M(text, ring=R5):
    return parse_monomial(text, ring)


# ------------------------------------------------------------------ a naive reference reduction

def naive_remainder(f: Polynomial, basis, order: MonomialOrder) -> Polynomial:
    """Textbook multivariate division with exact field arithmetic."""
    ring = f.ring
    fld = ring.field
    key = order.sort_key(ring.nvars_total)
    leads = [max(g.terms, key=key) for g in basis]
    rem = ring.zero()
    p = f
    while not p.is_zero():
        lt = max(p.terms, key=key)
        c = p.terms[lt]
        for g, lg in zip(basis, leads):
            if all(a >= b for a, b in zip(lt, lg)):
                q = tuple(a - b for a, b in zip(lt, lg))
                coef = fld.div(c, g.terms[lg])
                p = p - Polynomial(ring, {q: coef}) * g
                break
        else:
            term = Polynomial(ring, {lt: c})
            rem = rem + term
            p = p - term
    return rem


def naive_spoly(f, g, order):
    ring = f.ring
    fld = ring.field
    key = order.sort_key(ring.nvars_total)
    lf, lg = max(f.terms, key=key), max(g.terms, key=key)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = Polynomial(ring, {tuple(a - b for a, b in zip(lcm, lf)): fld.inv(f.terms[lf])})
    mg = Polynomial(ring, {tuple(a - b for a, b in zip(lcm, lg)): fld.inv(g.terms[lg])})
    return mf * f - mg * g


def assert_groebner_basis(gens, gb):
    for g in gens:
        assert naive_remainder(g, gb.basis, gb.order).is_zero()
    for i in range(len(gb.basis)):
        for j in range(i + 1, len(gb.basis)):
            s = naive_spoly(gb.basis[i], gb.basis[j], gb.order)
            assert naive_remainder(s, gb.basis, gb.order).is_zero()
    assert unreduced_s_polynomials(gb) == []


# ------------------------------------------------------------------ groebner

def test_groebner_examples():
    gb = groebner([P("x1")])
    assert [str(g) for g in gb.basis] == ["x1"]
    gb = groebner([P("x1 + x2"), P("x2")])
    assert sorted(str(g) for g in gb.basis) == ["x1", "x2"]
    R2 = RingSpec(2)
    gb = groebner([P("x1*x2 - 1", R2), P("x1", R2)])
    assert gb.is_unit()
    assert [str(g) for g in gb.basis] == ["1"]
    empty = groebner([], ring=R5)
    assert empty.basis == () and not empty.is_unit()


def test_groebner_self_checks_on_fixture_queries():
    f = load_fixture("example1")
    ring = f.ring.extended("y")
    y = ring.var("y")
    emb = lambda q: Polynomial(ring, {e + (0,): c for e, c in q.terms.items()})
    for g in f.ideal.generators:
        gens = [emb(q) for q in f.candidates] + [ring.one() - y * emb(g.to_poly())]
        for order in (DEGREVLEX, LEX):
            gb = groebner(gens, order)
            assert gb.is_unit()
    gens = list(f.candidates)
    for order in (DEGREVLEX, LEX, MonomialOrder("degrevlex", (4, 3, 2, 1, 0))):
        assert_groebner_basis(gens, groebner(gens, order))


@pytest.mark.parametrize("fld", [QQ, PrimeField(2), PrimeField(5), Field4()])
def test_groebner_self_checks_random(fld):
    rng = random.Random(hash(str(fld)) & 0xFFFF)
    ring = RingSpec(3, field=fld)
    els = [e for e in fld.elements()] if fld.finite else [Fraction(k) for k in range(-2, 3)]
    for _ in range(15):
        gens = []
        for _ in range(rng.randint(1, 3)):
            terms = {tuple(rng.randint(0, 2) for _ in range(3)): rng.choice(els) for _ in range(rng.randint(1, 3))}
            gens.append(Polynomial(ring, terms))
        gens = [g for g in gens if not g.is_zero()] or [ring.var(1)]
        for order in (DEGREVLEX, LEX):
            assert_groebner_basis(gens, groebner(gens, order))


def test_groebner_matches_sympy():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(99)
    xs = sympy.symbols("x1:5")
    ring = RingSpec(4)
    for _ in range(15):
        gens = []
        for _ in range(rng.randint(2, 3)):
            terms = {tuple(rng.randint(0, 2) for _ in range(4)): Fraction(rng.randint(-3, 3)) for _ in range(3)}
            g = Polynomial(ring, terms)
            if not g.is_zero():
                gens.append(g)
        if not gens:
            continue
        ours = groebner(gens, DEGREVLEX)
        sym = sympy.groebner([sympy.sympify(str(g).replace("^", "**")) for g in gens], *xs, order="grevlex", domain="QQ")
        for g in ours.basis:
            assert sym.contains(sympy.sympify(str(g).replace("^", "**")))
        theirs = [Polynomial(ring, {e: Fraction(int(c.p), int(c.q)) for e, c in sympy.Poly(p, *xs).terms()})
                  for p in sym.exprs]
        for q in theirs:
            assert ours.contains(q)
        # same leading-term ideal: the minimal leading monomials agree
        key = DEGREVLEX.sort_key(4)
        lead_theirs = {max(q.terms, key=key) for q in theirs}
        lead_ours = set(ours.leading_exponents())
        minimal = {e for e in lead_ours
                   if not any(f != e and all(a <= b for a, b in zip(f, e)) for f in lead_ours)}
        assert minimal == lead_theirs


def test_s_polynomial_of_monic_versions():
    s = s_polynomial(P("x1^2 + x2"), P("2*x1*x2 + 1"))
    assert s == P("x2^2 - 1/2*x1")


# ------------------------------------------------------------------ radical membership

EX1_J = [P("x1*x3"), P("x1*x4 + x2*x5"), P("x2*x4 + x3*x5")]


def test_radical_member_examples():
    assert radical_member(M("x1*x4"), EX1_J).member
    assert radical_member(M("x2*x3"), [M("x2*x3").to_poly()]).member
    v = radical_member(M("x1*x2"), [P("x1*x3")])
    assert not v.member
    assert v.witness == (1, 1, 0, 0, 0)


def test_witnesses_are_rechecked():
    with pytest.raises(ValueError):
        MembershipVerdict(True, (1, 0))
    v = radical_member(M("x1*x2"), [P("x1*x3"), P("x2*x3 + x4")])
    assert not v.member
    assert all(q.evaluate(v.witness) == 0 for q in [P("x1*x3"), P("x2*x3 + x4")])
    assert M("x1*x2").to_poly().evaluate(v.witness) != 0


def test_radical_member_rejects_parameters():
    R = RingSpec(3, param_vars=("t",))
    with pytest.raises(UnsupportedQueryError):
        radical_member(parse_monomial("x1", R), [parse_polynomial("t*x1", R)])


def test_membership_invariant_under_permutation_and_scaling():
    rng = random.Random(41)
    for _ in range(20):
        m = rng.choice([M("x1*x3"), M("x1*x4"), M("x2*x5"), M("x1*x2")])
        J = list(EX1_J)
        base = radical_member(m, J, find_witness=False).member
        rng.shuffle(J)
        J = [q * Fraction(rng.choice([-3, -1, 2, 5]), rng.choice([1, 2, 7])) for q in J]
        assert radical_member(m, J, find_witness=False).member == base


def test_witness_implies_non_membership_on_finite_fields():
    rng = random.Random(43)
    cases = 0
    for k in range(50):
        fld = PrimeField(2) if k % 2 else PrimeField(3)
        ring = RingSpec(rng.randint(2, 4), field=fld)
        gens = random_monomials(rng, ring, rng.randint(1, 4), max_degree=2)
        J = []
        for _ in range(rng.randint(1, 3)):
            picks = rng.sample(gens, rng.randint(1, len(gens)))
            J.append(sum((g.to_poly() for g in picks[1:]), picks[0].to_poly()))
        m = random_monomials(rng, ring, 1, max_degree=2)[0]
        pt = point_counterexample(m, J, fld)
        verdict = radical_member(m, J, find_witness=False).member
        if pt is not None:
            cases += 1
            assert not verdict
        if verdict:
            assert pt is None
    assert cases > 5


# ------------------------------------------------------------------ radical equality

def test_radical_equal_examples():
    ex2 = load_fixture("example2")
    assert radical_equal(ex2.ideal, list(ex2.candidates))
    hexagon = load_fixture("hexagon")
    assert radical_equal(hexagon.ideal, list(hexagon.candidates))
    assert not radical_equal(MonomialIdeal(R5, [M("x1*x3")]), [P("x1*x4")])


def test_radical_equal_checks_the_easy_inclusion_termwise():
    ideal = MonomialIdeal(R5, [M("x1*x3"), M("x2*x4")])
    assert not radical_equal(ideal, [P("x1*x3"), P("x2*x4 + x5")])
    assert radical_equal(ideal, [P("x1*x3"), P("x2*x4 + x1*x2*x3")])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_Im_candidates_generate_up_to_radical(m):
    fam = build_Im_family(m)
    assert radical_equal(fam.ideal, list(fam.candidates))


def test_dropping_a_candidate_breaks_radical_equality():
    f = load_fixture("hexagon")
    for k in range(len(f.candidates)):
        fewer = [q for i, q in enumerate(f.candidates) if i != k]
        assert not radical_equal(f.ideal, fewer)


# ------------------------------------------------------------------ point scans

def test_point_counterexample_examples():
    R = RingSpec(5, field=PrimeField(2))
    pt = point_counterexample(parse_monomial("x1*x2", R), [parse_polynomial("x1*x3", R)], PrimeField(2))
    assert pt is not None and pt[:3] == (1, 1, 0)
    for fld in (PrimeField(2), PrimeField(3), Field4()):
        Rf = RingSpec(5, field=fld)
        assert point_counterexample(parse_monomial("x1", Rf), [parse_polynomial("x1", Rf)], fld) is None
    assert point_counterexample(M("x1*x4"), EX1_J, PrimeField(3)) is None


def test_point_counterexample_limits():
    with pytest.raises(ValueError):
        point_counterexample(M("x1"), [P("x1")], QQ)
    R13 = RingSpec(13, field=PrimeField(2))
    with pytest.raises(ValueError):
        point_counterexample(parse_monomial("x1", R13), [R13.var(1)], PrimeField(2))
    # sampling mode has no size limit
    assert point_counterexample(parse_monomial("x1", R13), [R13.var(2)], PrimeField(2), exhaustive=False) is not None


# ------------------------------------------------------------------ characteristic 2

def test_char2_candidates_specialized_to_gf4():
    f = load_fixture("example4_char2")
    F4 = Field4()
    J = specialize_params(list(f.candidates), {"t": F4.PRIMITIVE}, F4)
    ring = J[0].ring
    ideal = MonomialIdeal(ring, [SquarefreeMonomial(ring, g.bits) for g in f.ideal.generators])
    assert radical_equal(ideal, J)


def test_change_field():
    R3 = RingSpec(5, field=PrimeField(3))
    assert change_field(P("1/2*x1 + 4*x2"), R3) == parse_polynomial("2*x1 + x2", R3)
    with pytest.raises(ValueError):
        change_field(parse_polynomial("x1", R3), RingSpec(5, field=PrimeField(5)))


# ------------------------------------------------------------------ identities

def test_verify_identity_examples():
    ex2 = load_fixture("example2")
    assert ex2.identities[0].holds()
    f = load_fixture("example4_char2")
    assert all(i.holds() for i in f.identities)
    assert not verify_identity(P("x1"), P("x2"))
    with pytest.raises(ValueError):
        verify_identity(P("x1"), parse_polynomial("x1", RingSpec(6)))


def test_perturbed_identity_fails():
    good = load_fixture("example2").identities[1]
    bad = Identity(good.name, good.lhs, good.rhs + P("x1", good.ring.without_params()) if False else good.rhs + good.ring.var(1))
    assert good.holds() and not bad.holds()


def test_char0_identities_in_cleared_form():
    f = load_fixture("example4_char0")
    for ident in f.identities:
        two = ident.ring.const(2)
        assert verify_identity(ident.lhs, two * ident.rhs, two)


def test_char2_identities_need_the_clearing_factor():
    f = load_fixture("example4_char2")
    for ident in f.identities:
        assert not verify_identity(ident.lhs, ident.rhs)

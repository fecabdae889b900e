import random

import pytest
from hypothesis import given, strategies as st

from ararank.certificates import SVCertificate
from ararank.combinatorics import MonomialIdeal, SimplicialComplex
from ararank.fixtures import FIXTURE_NAMES, load_fixture
from ararank.formats import (
    Report,
    detect_kind,
    format_certificate,
    format_complex,
    format_identities,
    format_ideal,
    parse_certificate,
    parse_complex,
    parse_identities,
    parse_ideal,
    parse_machine,
)
from ararank.ring import ParseError, RingSpec

from conftest import random_monomials

NAMES = [n for n in FIXTURE_NAMES if n not in ("im", "ngon")] + ["im(2)", "ngon(6)"]


@pytest.mark.parametrize("name", NAMES)
def test_fixture_round_trips(name):
    f = load_fixture(name)
    assert parse_ideal(format_ideal(f.ideal)) == f.ideal
    if f.complex is not None:
        c = parse_complex(format_complex(f.complex))
        assert sorted(map(sorted, c.facets)) == sorted(map(sorted, f.complex.facets))
    certs = ([f.certificate] if f.certificate is not None else []) + [c for _, c, _ in f.extra_certificates]
    for cert in certs:
        assert parse_certificate(format_certificate(cert)) == cert
    if f.identities:
        back = parse_identities(format_identities(f.identities))
        assert [(i.name, i.lhs, i.rhs, i.clear) for i in back] == \
            [(i.name, i.lhs, i.rhs, i.clear) for i in f.identities]


def test_sv_exponents_round_trip():
    R = RingSpec(4)
    from ararank.ring import parse_monomial as pm
    cert = SVCertificate(((pm("x1*x2", R),), (pm("x1*x3", R), pm("x2*x4", R))), {(1, pm("x2*x4", R)): 3})
    text = format_certificate(cert)
    assert "exp x2*x4 3" in text
    assert parse_certificate(text) == cert


def test_random_ideals_round_trip():
    rng = random.Random(8)
    for _ in range(50):
        ring = RingSpec(rng.randint(1, 9))
        ideal = MonomialIdeal(ring, random_monomials(rng, ring, rng.randint(0, 6)))
        assert parse_ideal(format_ideal(ideal)) == ideal


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 3"):
        parse_ideal("ring 3\nx1*x2\nx7\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_complex("complex 3\n1 a\n")
    with pytest.raises(ParseError):
        parse_certificate("ring 3\npart 0:\n x1\npart 2:\n x2\n")
    with pytest.raises(ParseError):
        parse_certificate("ring 3\nkind gsv\npart 0:\n x1\n exp x1 2\n")
    with pytest.raises(ParseError, match="lacks"):
        parse_certificate("ring 3\nkind prop1\np0: x1\n")
    with pytest.raises(ParseError):
        parse_identities("ring 2\nlhs: x1\n")
    with pytest.raises(ParseError):
        detect_kind("# only a comment\n")
    assert detect_kind("# c\ncomplex 2\n1 2\n") == "complex"


def test_identity_continuation_lines():
    ids = parse_identities("ring 3\nname: sum\nlhs: x1 + x2\n  + x3\nrhs: x3 + x2 + x1\n")
    assert len(ids) == 1 and ids[0].holds() and ids[0].name == "sum"


json_values = st.recursive(
    st.none() | st.booleans() | st.integers() | st.text(max_size=10),
    lambda inner: st.lists(inner, max_size=4) | st.dictionaries(st.text(max_size=5), inner, max_size=4),
    max_leaves=10,
)


@given(st.lists(st.tuples(st.text(alphabet="abcxyz_", min_size=1, max_size=8), json_values), max_size=6))
def test_machine_report_round_trip(entries):
    rep = Report()
    for k, v in entries:
        rep.add(k, v)
    assert parse_machine(rep.render_machine()).entries == entries


def test_report_rejects_bad_keys_and_lines():
    with pytest.raises(ValueError):
        Report().add("a\tb", 1)
    with pytest.raises(ParseError):
        parse_machine("no tab here\n")

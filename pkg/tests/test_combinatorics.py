import random

import pytest

from ararank.combinatorics import (
    MonomialIdeal,
    SimplicialComplex,
    UnitIdealError,
    build_Im,
    build_Im_family,
    build_ngon,
    height_report,
    is_connected_one_dim,
    is_minimalized,
    minimal_primes,
    minimal_transversals,
    minimal_transversals_bruteforce,
    minimalize,
    stanley_reisner_ideal,
)
from ararank.fixtures import FIXTURE_NAMES, load_fixture
from ararank.ring import RingSpec, SquarefreeMonomial, bits_to_indices, parse_monomial


def gens_str(ideal):
    return [str(g) for g in ideal.generators]


def ideal_of(ring, text):
    return MonomialIdeal(ring, [parse_monomial(s, ring) for s in text.split(",")])


PENTAGON = SimplicialComplex(5, [{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}])


# ------------------------------------------------------------------ complexes

def test_complex_validation():
    with pytest.raises(ValueError):
        SimplicialComplex(3, [{1, 2}, {1, 2, 3}])
    with pytest.raises(ValueError):
        SimplicialComplex(3, [{1, 4}])
    c = SimplicialComplex(3, [{1, 2}, {2, 1}, {3}])
    assert len(c.facets) == 2 and c.is_face({2}) and not c.is_face({1, 3})


def test_stanley_reisner_examples():
    assert gens_str(stanley_reisner_ideal(PENTAGON)) == ["x1*x3", "x1*x4", "x2*x4", "x2*x5", "x3*x5"]
    assert gens_str(stanley_reisner_ideal(build_ngon(4))) == ["x1*x3", "x2*x4"]
    hexagon = stanley_reisner_ideal(build_ngon(6))
    assert sorted(gens_str(hexagon)) == sorted(
        ["x1*x3", "x1*x4", "x1*x5", "x2*x4", "x2*x5", "x2*x6", "x3*x5", "x3*x6", "x4*x6"]
    )


def test_stanley_reisner_brute_force(rng):
    """Minimal non-faces by direct subset enumeration."""
    for _ in range(30):
        n = rng.randint(2, 7)
        facets = [set(rng.sample(range(1, n + 1), rng.randint(1, n))) for _ in range(rng.randint(1, 4))]
        facets = [f for f in facets if not any(f < g for g in facets)]
        c = SimplicialComplex(n, facets)
        nonfaces = [s for s in range(1, 1 << n) if not c.is_face(bits_to_indices(s))]
        minimal = {s for s in nonfaces if not any(t != s and t & ~s == 0 for t in nonfaces)}
        ideal = stanley_reisner_ideal(c)
        assert {g.bits for g in ideal.generators} == minimal
        assert is_minimalized(ideal)


def test_void_complex_is_rejected():
    with pytest.raises(UnitIdealError):
        stanley_reisner_ideal(SimplicialComplex(3, []))


# ------------------------------------------------------------------ minimalize

def test_minimalize_examples():
    R = RingSpec(5)
    assert gens_str(minimalize(ideal_of(R, "x1*x3, x1*x3*x5"))) == ["x1*x3"]
    assert gens_str(minimalize(ideal_of(R, "x1*x3, x2*x4"))) == ["x1*x3", "x2*x4"]
    mixed = ideal_of(R, "x1, x1*x3, x1*x4, x2*x4, x2*x5, x3*x5")
    assert gens_str(minimalize(mixed)) == ["x1", "x2*x4", "x2*x5", "x3*x5"]


def test_minimalize_unit_ideal():
    R = RingSpec(2)
    with pytest.raises(UnitIdealError, match="whole ring"):
        minimalize(MonomialIdeal(R, [SquarefreeMonomial(R, 0), R.monomial(1)]))


# ------------------------------------------------------------------ minimal primes

def test_minimal_primes_examples():
    ex1 = stanley_reisner_ideal(PENTAGON)
    primes = minimal_primes(ex1)
    assert len(primes) == 5 and all(len(p) == 3 for p in primes)
    assert primes[0].vars == (1, 2, 3)
    I2, _ = build_Im(2)
    vars_ = {p.vars for p in minimal_primes(I2)}
    assert (2, 4, 5, 7) in vars_ and (1, 5, 6, 8, 9) in vars_
    R = RingSpec(2)
    assert [p.vars for p in minimal_primes(MonomialIdeal(R, [R.monomial(1, 2)]))] == [(1,), (2,)]
    assert minimal_primes(MonomialIdeal(R, [])) == []


def test_minimal_transversals_match_bruteforce_on_random_hypergraphs():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 12)
        edges = [sum(1 << i for i in rng.sample(range(n), rng.randint(1, min(n, 4)))) for _ in range(rng.randint(1, 10))]
        fast = minimal_transversals(edges)
        slow = minimal_transversals_bruteforce(edges, n)
        assert fast == slow
        for cover in fast:
            assert all(e & cover for e in edges)
            v = cover
            while v:
                low = v & -v
                v ^= low
                assert not all(e & (cover ^ low) for e in edges)


def test_minimal_primes_match_bruteforce_on_ideals():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(2, 12)
        ring = RingSpec(n)
        gens = [SquarefreeMonomial(ring, sum(1 << i for i in rng.sample(range(n), rng.randint(1, min(n, 3)))))
                for _ in range(rng.randint(1, 9))]
        ideal = minimalize(MonomialIdeal(ring, gens))
        got = [p.bits for p in minimal_primes(ideal)]
        assert got == minimal_transversals_bruteforce([g.bits for g in ideal.generators], n)


# ------------------------------------------------------------------ heights

def test_height_report_examples():
    hr = height_report(stanley_reisner_ideal(PENTAGON))
    assert (hr.height, hr.big_height, hr.pure) == (3, 3, True)
    hr = height_report(build_Im(2)[0])
    assert (hr.height, hr.big_height, hr.pure) == (4, 5, False)
    hr = height_report(load_fixture("octagon_bridged").ideal)
    assert (hr.height, hr.big_height, hr.pure) == (6, 6, True)


def test_pure_complexes_have_pure_height_n_minus_d():
    for name in FIXTURE_NAMES:
        f = load_fixture(name, m=2, n=7)
        c = f.complex
        if c is None or not c.is_pure():
            continue
        d = len(c.facets[0])
        hr = height_report(f.ideal)
        assert hr.pure and hr.height == c.num_vertices - d, name
    for n in range(4, 10):
        hr = height_report(stanley_reisner_ideal(build_ngon(n)))
        assert hr.pure and hr.height == n - 2


@pytest.mark.parametrize("m,height,big", [(1, 3, 3), (2, 4, 5), (3, 6, 7), (4, 8, 9)])
def test_Im_heights(m, height, big):
    hr = height_report(build_Im(m)[0])
    assert (hr.height, hr.big_height) == (height, big)


def test_Im_named_primes():
    """The primes built from S (size 2m+1) and T (size 2m) are minimal."""
    for m in range(2, 5):
        ideal = build_Im(m)[0]
        primes = {p.vars for p in minimal_primes(ideal)}
        S = tuple(sorted({1} | {3 * n + 2 for n in range(1, m + 1)} | {3 * n + 3 for n in range(1, m + 1)}))
        T = tuple(sorted({2} | {3 * n + 1 for n in range(1, m)} | {3 * n + 2 for n in range(1, m)} | {3 * m + 1}))
        assert S in primes and len(S) == 2 * m + 1
        assert T in primes and len(T) == 2 * m


# ------------------------------------------------------------------ connectivity

def test_connectivity():
    assert is_connected_one_dim(PENTAGON)
    assert not is_connected_one_dim(SimplicialComplex(4, [{1, 2}, {3, 4}]))
    assert is_connected_one_dim(build_ngon(6))
    assert not is_connected_one_dim(SimplicialComplex(3, [{1, 2}]))  # isolated vertex 3
    with pytest.raises(ValueError):
        is_connected_one_dim(SimplicialComplex(3, [{1, 2, 3}]))


# ------------------------------------------------------------------ families

def test_build_Im_examples():
    I1, J1 = build_Im(1)
    assert sorted(gens_str(I1)) == sorted(["x1*x2", "x1*x5", "x4*x6", "x4*x5", "x2*x6"])
    assert len(J1) == 3
    assert str(J1[1]) == "x1*x5 + x4*x6"
    I2, J2 = build_Im(2)
    assert len(I2.generators) == 9 and I2.ring.num_vars == 9 and len(J2) == 5
    for m in range(1, 6):
        I, J = build_Im(m)
        assert len(I.generators) == 4 * m + 1 and len(J) == 2 * m + 1
    with pytest.raises(ValueError):
        build_Im(0)


def test_I1_is_example1_after_renaming():
    ex1 = stanley_reisner_ideal(PENTAGON)
    I1 = build_Im_family(1).ideal
    # x3 of the 6-variable ring does not occur in I_1
    assert all(3 not in g.support for g in I1.generators)
    renamed = ex1.rename({1: 1, 3: 2, 5: 6, 2: 4, 4: 5}, I1.ring)
    assert set(renamed.generators) == set(I1.generators)


def test_build_ngon():
    assert build_ngon(5) == PENTAGON
    assert build_ngon(6).facets == SimplicialComplex(6, [{i, i % 6 + 1} for i in range(1, 7)]).facets
    with pytest.raises(ValueError):
        build_ngon(3)

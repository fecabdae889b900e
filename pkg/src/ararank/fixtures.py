"""Built-in example bundles, generated from their defining formulas.

Each bundle carries the ring, the ideal (and complex when there is one), the
candidate radical generators, certificates, displayed polynomial identities
and the expected invariants. Variables are named x1..xN and the char-2
parameter is t.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .certificates import GSVCertificate, Prop1Certificate, SVCertificate, prop1_proof_identities, prop1_to_gsv
from .combinatorics import MonomialIdeal, SimplicialComplex, build_Im_family, build_ngon, stanley_reisner_ideal
from .fields import PrimeField
from .oracle import Identity
from .ring import Polynomial, RingSpec, parse_monomial, parse_polynomial


@dataclass(frozen=True)
class Expected:
    height: int | None = None
    big_height: int | None = None
    pure: bool | None = None
    ara: int | None = None
    stci: bool | None = None


@dataclass(frozen=True)
class Fixture:
    name: str
    title: str
    ring: RingSpec
    ideal: MonomialIdeal
    complex: SimplicialComplex | None = None
    candidates: tuple[Polynomial, ...] = ()
    certificate: GSVCertificate | None = None
    # labelled auxiliary certificates (SV, five-element, GSV), with the verdict they should get
    extra_certificates: tuple[tuple[str, object, bool], ...] = ()
    identities: tuple[Identity, ...] = ()
    expected: Expected = field(default_factory=Expected)
    stated_generators: tuple[str, ...] = ()


FIXTURE_NAMES = (
    "example1",
    "example2",
    "im",
    "example4_char0",
    "example4_char2",
    "hexagon",
    "pentagon_chord",
    "hexagon_augmented",
    "octagon_bridged",
    "ngon",
)


def _monos(ring: RingSpec, text: str):
    return [parse_monomial(s, ring) for s in text.split(",")]


def _polys(ring: RingSpec, *texts: str) -> tuple[Polynomial, ...]:
    return tuple(parse_polynomial(s, ring) for s in texts)


def _gsv(ring: RingSpec, *parts: str) -> GSVCertificate:
    return GSVCertificate.from_parts([_monos(ring, p) for p in parts])


def _identity(name: str, ring: RingSpec, lhs: str, rhs: str, clear: str | None = None) -> Identity:
    return Identity(name, parse_polynomial(lhs, ring), parse_polynomial(rhs, ring),
                    parse_polynomial(clear, ring) if clear else None)


def _sr(n: int, facets) -> tuple[SimplicialComplex, MonomialIdeal]:
    c = SimplicialComplex(n, facets)
    return c, stanley_reisner_ideal(c)


def _cycle(n: int, *extra) -> list[set[int]]:
    return [{i, i % n + 1} for i in range(1, n + 1)] + [set(e) for e in extra]


def _prop1_identities(label: str, cert: Prop1Certificate) -> tuple[Identity, ...]:
    return tuple(Identity(f"{label}: {name}", lhs, rhs) for name, lhs, rhs in prop1_proof_identities(cert))


# ------------------------------------------------------------------ bundles

def example1() -> Fixture:
    c, ideal = _sr(5, _cycle(5))
    R = ideal.ring
    p0, p11, p12, p21, p22 = _monos(R, "x1*x3, x1*x4, x2*x5, x2*x4, x3*x5")
    prop1 = Prop1Certificate(p0, p11, p12, p21, p22)
    sv_rejected = SVCertificate(((p0,), (p11, p12), (p21, p22)))
    return Fixture(
        "example1",
        "pentagon: five-element criterion",
        R,
        ideal,
        c,
        _polys(R, "x1*x3", "x1*x4 + x2*x5", "x2*x4 + x3*x5"),
        prop1_to_gsv(prop1),
        (("five-element", prop1, True), ("schmitt-vogel grouping", sv_rejected, False)),
        _prop1_identities("five-element proof", prop1),
        Expected(3, 3, True, 3, True),
        ("x1*x3", "x1*x4", "x2*x4", "x2*x5", "x3*x5"),
    )


def example2() -> Fixture:
    c, ideal = _sr(6, _cycle(5, (5, 6), (2, 6)))
    R = ideal.ring
    three = Prop1Certificate(*_monos(R, "x3*x5, x3*x6, x2*x4, x4*x6, x2*x5"))
    ids = (
        _identity(
            "x1^3*x3^3", R, "x1^3*x3^3",
            "x3^2*(x2*x4 - x1*x3)*x1*x6 + x1*x2^2*x3*x3*x5 + x1^2*x3^2*(x1*x3 + x2*x4 + x3*x6)"
            " - x1*x2*x3^2*(x1*x4 + x2*x5 + x4*x6)",
        ),
        _identity(
            "x1^2*x4^2", R, "x1^2*x4^2",
            "(x3*x5 - x4^2)*x1*x6 + x1^2*x3*x5 - x1*x5*(x1*x3 + x2*x4 + x3*x6) + x1*x4*(x1*x4 + x2*x5 + x4*x6)",
        ),
    )
    return Fixture(
        "example2",
        "pentagon with a pendant triangle",
        R,
        ideal,
        c,
        _polys(R, "x1*x6", "x3*x5", "x1*x3 + x2*x4 + x3*x6", "x1*x4 + x2*x5 + x4*x6"),
        _gsv(R, "x1*x6", "x3*x5", "x1*x3, x2*x4, x3*x6", "x1*x4, x2*x5, x4*x6"),
        (("five-element on the subideal", three, True),),
        ids,
        Expected(4, 4, True, 4, True),
        ("x1*x3", "x1*x4", "x1*x6", "x2*x4", "x2*x5", "x3*x5", "x3*x6", "x4*x6"),
    )


def im(m: int) -> Fixture:
    fam = build_Im_family(m)
    R = fam.ideal.ring
    nm = fam.named
    cert = GSVCertificate.from_parts(fam.parts)
    extras: list = []
    ids: tuple[Identity, ...] = ()
    for n in range(1, m + 1):
        p0 = nm["r1"] if n == 1 else nm[f"u{n - 1}"]
        step = Prop1Certificate(p0, nm[f"s{n}"], nm[f"t{n}"], nm[f"u{n}"], nm[f"v{n}"])
        extras.append((f"five-element step {n}", step, True))
        if n == 1:
            ids = _prop1_identities("five-element proof, step 1", step)
    big = 2 * m + 1
    height = 3 if m == 1 else 2 * m
    return Fixture(
        f"im({m})",
        f"the family I_m at m={m}",
        R,
        fam.ideal,
        None,
        fam.candidates,
        cert,
        tuple(extras),
        ids,
        Expected(height, big, m == 1, big, m == 1),
    )


_EX4_FACETS = _cycle(5, (4, 6), (5, 6))
_EX4_GENS = ("x1*x3", "x1*x4", "x1*x6", "x2*x4", "x2*x5", "x2*x6", "x3*x5", "x3*x6", "x4*x5*x6")


def example4_char0() -> Fixture:
    c, ideal = _sr(6, _EX4_FACETS)
    R = ideal.ring
    J = _polys(R, "x1*x4 + x3*x5", "x1*x3 + x2*x6 + x4*x5*x6", "x1*x6 + x2*x5", "x2*x4 + x3*x6")
    ids = (
        _identity(
            "x4^2*x5^2*x6^2", R, "x4^2*x5^2*x6^2",
            "1/2*x6*(x6^2 - x1*x4)*(x1*x4 + x3*x5) + x4*x5*x6*(x1*x3 + x2*x6 + x4*x5*x6)"
            " + 1/2*x4*(x1*x4 - x6^2)*(x1*x6 + x2*x5) - 1/2*x5*(x1*x4 + x6^2)*(x2*x4 + x3*x6)",
        ),
        _identity(
            "x3^2*x5^2", R, "x3^2*x5^2",
            "(x3*x5 - 1/2*x6^2)*(x1*x4 + x3*x5) - x4*x5*(x1*x3 + x2*x6)"
            " + 1/2*x4*x6*(x1*x6 + x2*x5) + 1/2*x5*x6*(x2*x4 + x3*x6)",
        ),
    )
    extras = (
        ("five-element", Prop1Certificate(*_monos(R, "x3*x5, x1*x3, x2*x6, x1*x6, x2*x5")), True),
        ("schmitt-vogel", SVCertificate((tuple(_monos(R, "x2*x6")), tuple(_monos(R, "x2*x4, x3*x6")))), True),
    )
    return Fixture(
        "example4_char0",
        "field-dependent generators, characteristic other than 2",
        R, ideal, c, J, None, extras, ids,
        Expected(4, 4, True, 4, True),
        _EX4_GENS,
    )


def example4_char2() -> Fixture:
    R = RingSpec(6, field=PrimeField(2), param_vars=("t",))
    c = SimplicialComplex(6, _EX4_FACETS)
    ideal = stanley_reisner_ideal(c, R)
    J = _polys(R, "x1*x4 + x3*x5", "x1*x3 + x2*x6 + x4*x5*x6", "x1*x6 + t*x2*x5", "x2*x4 + x3*x6")
    ids = (
        _identity(
            "x4^2*x5^2*x6^3", R, "x4^2*x5^2*x6^3",
            "(x6^4 - t*x1*x2*x3 - t*x2^2*x6)*(x1*x4 + x3*x5)"
            " + (t + 1)*x6*(x4*x5*x6 - x1*x3)*(x1*x3 + x2*x6 + x4*x5*x6)"
            " + (x1*x3^2 + x2*x3*x6 - x4*x6^3)*(x1*x6 + t*x2*x5)"
            " + (t*x1^2*x3 + t*x1*x2*x6 - x5*x6^3)*(x2*x4 + x3*x6)",
            "t + 1",
        ),
        _identity(
            "x3^2*x5^2", R, "x3^2*x5^2",
            "((t + 1)*x3*x5 - x6^2)*(x1*x4 + x3*x5) - (t + 1)*x4*x5*(x1*x3 + x2*x6)"
            " + x4*x6*(x1*x6 + t*x2*x5) + x5*x6*(x2*x4 + x3*x6)",
            "t + 1",
        ),
    )
    return Fixture(
        "example4_char2",
        "field-dependent generators, characteristic 2",
        R, ideal, c, J, None, (), ids,
        Expected(4, 4, True, 4, True),
        _EX4_GENS,
    )


def hexagon() -> Fixture:
    c, ideal = _sr(6, _cycle(6))
    R = ideal.ring
    cert = _gsv(R, "x3*x6", "x1*x4, x2*x5", "x1*x3, x2*x4, x3*x5", "x1*x5, x2*x6, x4*x6")
    return Fixture(
        "hexagon", "hexagon", R, ideal, c, cert.emitted(), cert, (), (),
        Expected(4, 4, True, 4, True),
        ("x1*x3", "x1*x4", "x1*x5", "x2*x4", "x2*x5", "x2*x6", "x3*x5", "x3*x6", "x4*x6"),
    )


def pentagon_chord() -> Fixture:
    c, ideal = _sr(6, _cycle(6, (2, 5)))
    R = ideal.ring
    cert = _gsv(R, "x1*x4", "x3*x6", "x1*x3, x1*x5, x2*x4", "x2*x6, x3*x5, x4*x6")
    return Fixture(
        "pentagon_chord", "hexagon with the chord 25", R, ideal, c, cert.emitted(), cert, (), (),
        Expected(4, 4, True, 4, True),
        ("x1*x3", "x1*x4", "x1*x5", "x2*x4", "x2*x6", "x3*x5", "x3*x6", "x4*x6"),
    )


def hexagon_augmented() -> Fixture:
    c, ideal = _sr(6, _cycle(6, (2, 5), (2, 6), (1, 5)))
    R = ideal.ring
    cert = _gsv(R, "x1*x4", "x3*x6", "x1*x3, x2*x4, x1*x2*x5", "x3*x5, x4*x6, x1*x2*x6, x1*x5*x6, x2*x5*x6")
    return Fixture(
        "hexagon_augmented", "hexagon with chords 25, 26, 15", R, ideal, c, cert.emitted(), cert, (), (),
        Expected(4, 4, True, 4, True),
        ("x1*x3", "x1*x4", "x2*x4", "x3*x5", "x3*x6", "x4*x6", "x1*x2*x5", "x1*x2*x6", "x1*x5*x6", "x2*x5*x6"),
    )


def octagon_bridged() -> Fixture:
    c, ideal = _sr(8, _cycle(5) + [{5, 6}, {6, 7}, {7, 8}, {8, 4}])
    R = ideal.ring
    cert = _gsv(
        R,
        "x3*x6",
        "x1*x8, x2*x7",
        "x1*x3, x2*x8, x3*x7",
        "x1*x7, x2*x6, x6*x8",
        "x1*x4, x2*x5, x3*x8, x4*x7, x5*x8",
        "x1*x6, x2*x4, x3*x5, x4*x6, x5*x7",
    )
    return Fixture(
        "octagon_bridged", "two cycles sharing the edge 45", R, ideal, c, cert.emitted(), cert, (), (),
        Expected(6, 6, True, 6, True),
        (
            "x1*x3", "x1*x4", "x1*x6", "x1*x7", "x1*x8",
            "x2*x4", "x2*x5", "x2*x6", "x2*x7", "x2*x8",
            "x3*x5", "x3*x6", "x3*x7", "x3*x8", "x4*x6", "x4*x7", "x5*x7", "x5*x8", "x6*x8",
        ),
    )


def ngon(n: int) -> Fixture:
    c = build_ngon(n)
    ideal = stanley_reisner_ideal(c)
    R = ideal.ring
    cert = None
    expected = Expected(n - 2, n - 2, True)
    if n == 4:
        cert = _gsv(R, "x1*x3", "x2*x4")
        expected = Expected(2, 2, True, 2, True)
    elif n == 5:
        cert = example1().certificate
        expected = Expected(3, 3, True, 3, True)
    elif n == 6:
        cert = hexagon().certificate
        expected = Expected(4, 4, True, 4, True)
    return Fixture(
        f"ngon({n})", f"{n}-gon", R, ideal, c, cert.emitted() if cert else (), cert, (), (), expected,
    )


_PLAIN = {
    "example1": example1,
    "example2": example2,
    "example4_char0": example4_char0,
    "example4_char2": example4_char2,
    "hexagon": hexagon,
    "pentagon_chord": pentagon_chord,
    "hexagon_augmented": hexagon_augmented,
    "octagon_bridged": octagon_bridged,
}


def load_fixture(name: str, m: int | None = None, n: int | None = None) -> Fixture:
    """Resolve a fixture id. ``im`` needs ``m`` and ``ngon`` needs ``n``; the
    forms ``im(2)`` and ``ngon(7)`` are accepted too."""
    match = re.fullmatch(r"\s*(im|ngon)\s*\(\s*(\d+)\s*\)\s*", name)
    if match:
        name, arg = match.group(1), int(match.group(2))
        if name == "im":
            m = arg
        else:
            n = arg
    name = name.strip()
    if name in _PLAIN:
        return _PLAIN[name]()
    if name == "im":
        if m is None:
            raise ValueError("fixture im needs --m")
        return im(m)
    if name == "ngon":
        if n is None:
            raise ValueError("fixture ngon needs --n")
        return ngon(n)
    raise ValueError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")

"""Text formats: complexes, ideals, certificates, identities, machine reports.

Complex file::

    complex 5
    1 2
    2 3

Ideal file: a ring header, then one monomial per line.

Certificate file::

    ring 5
    kind gsv            # sv | gsv | prop1 (default gsv)
    generators:         # optional, defaults to the union of the parts
      x1*x3
    part 0:
      x1*x3
    part 1:
      x1*x4
      x2*x5
      exp x2*x5 2       # SV only: exponent of a member of the enclosing part

A five-element certificate lists ``p0: ...``, ``p11: ...``, ``p12: ...``,
``p21: ...``, ``p22: ...`` instead of parts.

Identity file: a ring header, then one or more blocks of ``name:``
(optional), ``lhs:``, ``rhs:`` and ``clear:`` (optional). A value may
continue on the following lines until the next key.

Machine reports have one ``key<TAB>json-value`` entry per line.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Iterable

from .certificates import GSVCertificate, Prop1Certificate, SVCertificate
from .combinatorics import MonomialIdeal, SimplicialComplex
from .oracle import Identity
from .ring import ParseError, Polynomial, RingSpec, SquarefreeMonomial, parse_monomial, parse_polynomial, parse_ring_header


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _at(no: int, msg: str) -> ParseError:
    return ParseError(f"line {no}: {msg}")


def _header(lines: list[tuple[int, str]]) -> RingSpec:
    if not lines:
        raise ParseError("empty input")
    no, line = lines[0]
    try:
        return parse_ring_header(line)
    except ParseError as e:
        raise _at(no, str(e)) from None


def detect_kind(text: str) -> str:
    """'complex' or 'ring' according to the first non-comment line."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    word = lines[0][1].split()[0]
    if word in ("complex", "ring"):
        return word
    raise _at(lines[0][0], f"expected 'complex' or 'ring' header, got {word!r}")


# ------------------------------------------------------------------ complexes and ideals

def parse_complex(text: str) -> SimplicialComplex:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    no, head = lines[0]
    m = re.fullmatch(r"complex\s+(\d+)", head)
    if not m:
        raise _at(no, "expected 'complex N'")
    n = int(m.group(1))
    facets = []
    for no, line in lines[1:]:
        try:
            facets.append([int(v) for v in line.split()])
        except ValueError:
            raise _at(no, f"facet line must list vertex numbers: {line!r}") from None
    try:
        return SimplicialComplex(n, facets)
    except ValueError as e:
        raise ParseError(str(e)) from None


def format_complex(c: SimplicialComplex) -> str:
    rows = [f"complex {c.num_vertices}"] + [" ".join(map(str, sorted(f))) for f in c.facets]
    return "\n".join(rows) + "\n"


def parse_ideal(text: str) -> MonomialIdeal:
    lines = _lines(text)
    ring = _header(lines)
    gens = []
    for no, line in lines[1:]:
        try:
            gens.append(parse_monomial(line, ring))
        except ParseError as e:
            raise _at(no, str(e)) from None
    return MonomialIdeal(ring, gens)


def format_ideal(ideal: MonomialIdeal) -> str:
    return "\n".join([ideal.ring.header()] + [str(g) for g in ideal.generators]) + "\n"


# ------------------------------------------------------------------ certificates

_PROP1_KEYS = ("p0", "p11", "p12", "p21", "p22")


def parse_certificate(text: str) -> GSVCertificate | SVCertificate | Prop1Certificate:
    lines = _lines(text)
    ring = _header(lines)
    kind = "gsv"
    generators: list[SquarefreeMonomial] = []
    parts: dict[int, list[SquarefreeMonomial]] = {}
    exps: dict[tuple[int, SquarefreeMonomial], int] = {}
    prop1: dict[str, SquarefreeMonomial] = {}
    block: tuple[str, int] | None = None

    def mono(no: int, s: str) -> SquarefreeMonomial:
        try:
            return parse_monomial(s, ring)
        except ParseError as e:
            raise _at(no, str(e)) from None

    for no, line in lines[1:]:
        if m := re.fullmatch(r"kind\s+(\w+)", line):
            kind = m.group(1)
            if kind not in ("sv", "gsv", "prop1"):
                raise _at(no, f"unknown certificate kind {kind!r}")
        elif line == "generators:":
            block = ("gens", 0)
        elif m := re.fullmatch(r"part\s+(\d+)\s*:", line):
            i = int(m.group(1))
            if i in parts:
                raise _at(no, f"part {i} given twice")
            parts[i] = []
            block = ("part", i)
        elif m := re.fullmatch(r"(p0|p11|p12|p21|p22)\s*:\s*(.+)", line):
            prop1[m.group(1)] = mono(no, m.group(2))
            block = None
        elif m := re.fullmatch(r"exp\s+(\S+)\s+(-?\d+)", line):
            if block is None or block[0] != "part":
                raise _at(no, "'exp' must appear inside a part block")
            exps[(block[1], mono(no, m.group(1)))] = int(m.group(2))
        elif block is None:
            raise _at(no, f"unexpected line {line!r}")
        elif block[0] == "gens":
            generators.append(mono(no, line))
        else:
            parts[block[1]].append(mono(no, line))

    try:
        if kind == "prop1":
            missing = [k for k in _PROP1_KEYS if k not in prop1]
            if missing:
                raise ParseError(f"five-element certificate lacks {', '.join(missing)}")
            return Prop1Certificate(*(prop1[k] for k in _PROP1_KEYS))
        if prop1:
            raise ParseError("p0/p11/... lines need 'kind prop1'")
        if sorted(parts) != list(range(len(parts))):
            raise ParseError("parts must be numbered 0, 1, 2, ... without gaps")
        ordered = tuple(tuple(parts[i]) for i in range(len(parts)))
        if kind == "sv":
            return SVCertificate(ordered, exps, tuple(generators))
        if exps:
            raise ParseError("exponents are only meaningful for kind sv")
        return GSVCertificate(tuple(generators), ordered)
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from None


def format_certificate(cert: GSVCertificate | SVCertificate | Prop1Certificate) -> str:
    if isinstance(cert, Prop1Certificate):
        rows = [cert.ring.header(), "kind prop1"]
        rows += [f"{k}: {m}" for k, m in zip(_PROP1_KEYS, cert.elements())]
        return "\n".join(rows) + "\n"
    rows = [cert.ring.header(), "kind " + ("sv" if isinstance(cert, SVCertificate) else "gsv"), "generators:"]
    rows += [f"  {g}" for g in cert.generators]
    for i, part in enumerate(cert.parts):
        rows.append(f"part {i}:")
        for m in part:
            rows.append(f"  {m}")
            if isinstance(cert, SVCertificate) and cert.exponent(i, m) != 1:
                rows.append(f"  exp {m} {cert.exponent(i, m)}")
    return "\n".join(rows) + "\n"


# ------------------------------------------------------------------ identities

def parse_identities(text: str) -> list[Identity]:
    lines = _lines(text)
    ring = _header(lines)
    blocks: list[dict[str, tuple[int, str]]] = []
    key = None
    for no, line in lines[1:]:
        m = re.match(r"(name|lhs|rhs|clear)\s*:\s*(.*)", line)
        if m:
            key = m.group(1)
            if not blocks or key in blocks[-1] or (key in ("name", "lhs") and "rhs" in blocks[-1]):
                blocks.append({})
            blocks[-1][key] = (no, m.group(2))
        elif key is None:
            raise _at(no, f"expected 'lhs:', 'rhs:', 'clear:' or 'name:', got {line!r}")
        else:
            start, val = blocks[-1][key]
            blocks[-1][key] = (start, f"{val} {line}")
    out = []
    for k, b in enumerate(blocks, 1):
        for need in ("lhs", "rhs"):
            if need not in b:
                raise ParseError(f"identity {k} lacks '{need}:'")

        def poly(which: str) -> Polynomial | None:
            if which not in b:
                return None
            no, s = b[which]
            try:
                return parse_polynomial(s, ring)
            except ParseError as e:
                raise _at(no, str(e)) from None

        name = b["name"][1].strip() if "name" in b else f"identity {k}"
        out.append(Identity(name, poly("lhs"), poly("rhs"), poly("clear")))
    if not out:
        raise ParseError("no identities found")
    return out


def format_identities(ids: Iterable[Identity]) -> str:
    ids = list(ids)
    if not ids:
        raise ValueError("nothing to format")
    rows = [ids[0].ring.header()]
    for ident in ids:
        rows += [f"name: {ident.name}", f"lhs: {ident.lhs}", f"rhs: {ident.rhs}"]
        if ident.clear is not None:
            rows.append(f"clear: {ident.clear}")
    return "\n".join(rows) + "\n"


# ------------------------------------------------------------------ reports

@dataclass
class Report:
    """Ordered key/value entries plus free-form text lines for humans."""

    entries: list[tuple[str, Any]] = field(default_factory=list)
    text: list[str] = field(default_factory=list)

    def add(self, key: str, value: Any, line: str | None = None) -> None:
        if "\t" in key or "\n" in key:
            raise ValueError("report keys may not contain tabs or newlines")
        self.entries.append((key, value))
        if line is not None:
            self.text.append(line)

    def say(self, line: str) -> None:
        self.text.append(line)

    def get(self, key: str, default=None):
        for k, v in self.entries:
            if k == key:
                return v
        return default

    def render_text(self) -> str:
        return "\n".join(self.text) + ("\n" if self.text else "")

    def render_machine(self) -> str:
        return "".join(f"{k}\t{json.dumps(v, sort_keys=True)}\n" for k, v in self.entries)


def parse_machine(text: str) -> Report:
    rep = Report()
    for no, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        key, sep, value = line.partition("\t")
        if not sep:
            raise _at(no, "machine report lines are key<TAB>value")
        try:
            rep.entries.append((key, json.loads(value)))
        except json.JSONDecodeError as e:
            raise _at(no, f"bad JSON value: {e.msg}") from None
    return rep

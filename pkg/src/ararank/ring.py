"""Polynomial rings K[x1..xN, params], squarefree monomials and exact polynomials."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .fields import QQ, FieldSpec, parse_field

MAX_VARS = 64

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class RingMismatchError(ValueError):
    pass


class ParseError(ValueError):
    """Syntax or semantic error in textual input; ``pos`` is a 0-based character offset."""

    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.message = message
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


@dataclass(frozen=True)
class RingSpec:
    num_vars: int
    var_names: tuple[str, ...] = ()
    field: FieldSpec = QQ
    param_vars: tuple[str, ...] = ()

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("a ring needs at least one variable")
        if self.num_vars > MAX_VARS:
            raise ValueError(f"at most {MAX_VARS} variables are supported, got {self.num_vars}")
        if not self.var_names:
            object.__setattr__(self, "var_names", tuple(f"x{i}" for i in range(1, self.num_vars + 1)))
        object.__setattr__(self, "var_names", tuple(self.var_names))
        object.__setattr__(self, "param_vars", tuple(self.param_vars))
        if len(self.var_names) != self.num_vars:
            raise ValueError("var_names must have num_vars entries")
        names = self.var_names + self.param_vars
        if len(set(names)) != len(names):
            raise ValueError("variable and parameter names must be distinct")
        for name in names:
            if not _IDENT.match(name):
                raise ValueError(f"bad identifier {name!r}")

    @property
    def nvars_total(self) -> int:
        return self.num_vars + len(self.param_vars)

    @property
    def all_names(self) -> tuple[str, ...]:
        return self.var_names + self.param_vars

    def index_of(self, name: str) -> int:
        """0-based position in the exponent vector."""
        try:
            return self.all_names.index(name)
        except ValueError:
            raise KeyError(name) from None

    def with_field(self, fld: FieldSpec) -> "RingSpec":
        return RingSpec(self.num_vars, self.var_names, fld, self.param_vars)

    def without_params(self) -> "RingSpec":
        return RingSpec(self.num_vars, self.var_names, self.field)

    def extended(self, extra: str) -> "RingSpec":
        """This ring with one more ordinary variable appended (after the existing ones)."""
        return RingSpec(self.num_vars + 1, self.var_names + (extra,), self.field, self.param_vars)

    # convenience constructors
    def monomial(self, *indices: int) -> "SquarefreeMonomial":
        """Squarefree monomial from 1-based variable indices."""
        return SquarefreeMonomial.from_indices(self, indices)

    def var(self, name_or_index: str | int) -> "Polynomial":
        i = name_or_index - 1 if isinstance(name_or_index, int) else self.index_of(name_or_index)
        exps = [0] * self.nvars_total
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field.one()})

    def const(self, c) -> "Polynomial":
        if isinstance(c, Fraction):
            c = self.field.from_fraction(c.numerator, c.denominator)
        elif isinstance(c, int):
            c = self.field.from_int(c)
        return Polynomial(self, {(0,) * self.nvars_total: c})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def header(self) -> str:
        parts = [f"ring {self.num_vars}"]
        default = tuple(f"x{i}" for i in range(1, self.num_vars + 1))
        if self.var_names != default:
            raise ValueError("only rings with default variable names have a text header")
        if self.field != QQ:
            parts.append(f"over {self.field}")
        if self.param_vars:
            parts.append("params " + ",".join(self.param_vars))
        return " ".join(parts)


def parse_ring_header(line: str) -> RingSpec:
    """Parse ``ring N [over QQ|GF(p)|GF4] [params t,...]``."""
    m = re.fullmatch(
        r"\s*ring\s+(\d+)(?:\s+over\s+(\S+))?(?:\s+params\s+([A-Za-z_][A-Za-z0-9_]*(?:\s*,\s*[A-Za-z_][A-Za-z0-9_]*)*))?\s*",
        line,
    )
    if not m:
        raise ParseError(f"bad ring header {line.strip()!r}", 0, line)
    n = int(m.group(1))
    try:
        fld = parse_field(m.group(2)) if m.group(2) else QQ
        params = tuple(p.strip() for p in m.group(3).split(",")) if m.group(3) else ()
        return RingSpec(n, field=fld, param_vars=params)
    except ValueError as exc:
        raise ParseError(str(exc), 0, line) from exc


def _check_same_ring(a, b) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")


class SquarefreeMonomial:
    """Product of distinct ring variables, stored as a bit set (bit i <-> variable x_{i+1})."""

    __slots__ = ("ring", "bits")

    def __init__(self, ring: RingSpec, bits: int):
        if bits < 0 or bits >> ring.num_vars:
            raise ValueError("support outside the ring variables")
        self.ring = ring
        self.bits = bits

    @classmethod
    def from_indices(cls, ring: RingSpec, indices: Iterable[int]) -> "SquarefreeMonomial":
        bits = 0
        for i in indices:
            if not 1 <= i <= ring.num_vars:
                raise ValueError(f"variable index {i} out of range 1..{ring.num_vars}")
            bits |= 1 << (i - 1)
        return cls(ring, bits)

    @property
    def support(self) -> tuple[int, ...]:
        """Sorted 1-based variable indices."""
        return bits_to_indices(self.bits)

    @property
    def degree(self) -> int:
        return self.bits.bit_count()

    def divides(self, other: "SquarefreeMonomial") -> bool:
        _check_same_ring(self, other)
        return self.bits & ~other.bits == 0

    def __mul__(self, other: "SquarefreeMonomial") -> "SquarefreeMonomial":
        """Radical of the product (support union)."""
        _check_same_ring(self, other)
        return SquarefreeMonomial(self.ring, self.bits | other.bits)

    def exponents(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.ring.num_vars)) + (0,) * len(self.ring.param_vars)

    def to_poly(self) -> "Polynomial":
        return Polynomial(self.ring, {self.exponents(): self.ring.field.one()})

    def sort_key(self) -> tuple[int, ...]:
        return self.support

    def __eq__(self, other) -> bool:
        if not isinstance(other, SquarefreeMonomial):
            return NotImplemented
        return self.bits == other.bits and self.ring == other.ring

    def __hash__(self) -> int:
        return hash((self.bits, self.ring.num_vars))

    def __lt__(self, other: "SquarefreeMonomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if not self.bits:
            return "1"
        return "*".join(self.ring.var_names[i - 1] for i in self.support)

    def __repr__(self) -> str:
        return f"SquarefreeMonomial({self})"


def bits_to_indices(bits: int) -> tuple[int, ...]:
    out = []
    i = 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


def sqf_divides(a: SquarefreeMonomial, b: SquarefreeMonomial) -> bool:
    return a.divides(b)


def divides_product(a: SquarefreeMonomial, *factors: SquarefreeMonomial) -> bool:
    """True iff ``a`` divides the product of ``factors`` (squarefree ``a``: support containment)."""
    union = 0
    for f in factors:
        _check_same_ring(a, f)
        union |= f.bits
    return a.bits & ~union == 0


Exps = tuple[int, ...]


class Polynomial:
    """Immutable polynomial: a map from exponent vectors to nonzero field coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping[Exps, object] = ()):
        fld = ring.field
        n = ring.nvars_total
        clean: dict[Exps, object] = {}
        for e, c in dict(terms).items():
            if len(e) != n:
                raise ValueError(f"exponent vector {e} has wrong length for {n} variables")
            if not fld.is_zero(c):
                clean[tuple(e)] = c
        self.ring = ring
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingSpec, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    @property
    def terms(self) -> Mapping[Exps, object]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            _check_same_ring(self, other)
            return other
        if isinstance(other, SquarefreeMonomial):
            _check_same_ring(self, other)
            return other.to_poly()
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        fld = self.ring.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            if e in out:
                s = fld.add(out[e], c)
                if fld.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        fld = self.ring.field
        return Polynomial._raw(self.ring, {e: fld.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        fld = self.ring.field
        out: dict[Exps, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = fld.mul(c1, c2)
                if e in out:
                    s = fld.add(out[e], c)
                    if fld.is_zero(s):
                        del out[e]
                    else:
                        out[e] = s
                else:
                    out[e] = c
        return Polynomial._raw(self.ring, {e: c for e, c in out.items() if not fld.is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        fld = self.ring.field
        if fld.is_zero(c):
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: fld.mul(v, c) for e, v in self._terms.items()})

    def evaluate(self, point: Sequence) -> object:
        return poly_eval(self, point)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def uses_params(self) -> bool:
        k = self.ring.num_vars
        return any(any(e[k:]) for e in self._terms)

    def substitute(self, values: Mapping[str, object], ring: RingSpec | None = None) -> "Polynomial":
        """Replace named variables by field constants. The result lives in ``ring``
        (default: same ring) whose variables must cover the surviving names."""
        target = ring or self.ring
        fld = target.field
        src_names = self.ring.all_names
        keep = [(i, target.index_of(n)) for i, n in enumerate(src_names) if n not in values]
        fixed = [(i, values[n]) for i, n in enumerate(src_names) if n in values]
        out: dict[Exps, object] = {}
        for e, c in self._terms.items():
            coef = c
            for i, v in fixed:
                if e[i]:
                    coef = fld.mul(coef, fld.pow(v, e[i]))
            if fld.is_zero(coef):
                continue
            ne = [0] * target.nvars_total
            for i, j in keep:
                ne[j] = e[i]
            ne = tuple(ne)
            out[ne] = fld.add(out[ne], coef) if ne in out else coef
        return Polynomial(target, out)

    def as_squarefree_monomial(self) -> SquarefreeMonomial | None:
        """The monomial if this is a single squarefree term with coefficient 1 and no parameters."""
        if len(self._terms) != 1 or self.uses_params():
            return None
        (e, c), = self._terms.items()
        if c != self.ring.field.one() or any(x > 1 for x in e) or not any(e):
            return None
        return SquarefreeMonomial(self.ring, sum(1 << i for i, x in enumerate(e[: self.ring.num_vars]) if x))

    def __eq__(self, other) -> bool:
        if isinstance(other, SquarefreeMonomial):
            other = other.to_poly()
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def poly_arith(op: str, f: Polynomial, g: Polynomial) -> Polynomial:
    _check_same_ring(f, g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def poly_eval(f: Polynomial, point: Sequence) -> object:
    ring = f.ring
    fld = ring.field
    if len(point) != ring.nvars_total:
        raise ValueError(f"point has {len(point)} coordinates, ring has {ring.nvars_total} variables")
    if fld.finite:
        # ints that already encode a field element are kept (GF4 encodes w as 2)
        pt = [fld.from_int(v) if isinstance(v, int) and not isinstance(v, bool) and not 0 <= v < fld.size else v
              for v in point]
    else:
        pt = [Fraction(v) for v in point]
    total = fld.zero()
    for e, c in f._terms.items():
        t = c
        for v, k in zip(pt, e):
            if k:
                t = fld.mul(t, fld.pow(v, k))
                if fld.is_zero(t):
                    break
        total = fld.add(total, t)
    return total


# ---------------------------------------------------------------- formatting

def term_order_key(e: Exps) -> tuple:
    """Display order: higher total degree first, then lexicographically larger first."""
    return (-sum(e), tuple(-x for x in e))


def format_monomial_exps(ring: RingSpec, e: Exps) -> str:
    names = ring.all_names
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    fld = f.ring.field
    one = fld.one()
    out = []
    for e in sorted(f.terms, key=term_order_key):
        c = f.terms[e]
        mono = format_monomial_exps(f.ring, e)
        neg = False
        if fld.characteristic == 0 and c < 0:
            neg, c = True, -c
        if not mono:
            body = fld.format(c)
        elif c == one:
            body = mono
        else:
            body = f"{fld.format(c)}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _strip_comment(text: str) -> str:
    i = text.find("#")
    return text if i < 0 else text[:i]


class _Parser:
    """Recursive-descent parser for polynomial expressions.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := INT ['/' INT] | NAME | '(' expr ')'
    """

    def __init__(self, text: str, ring: RingSpec):
        self.text = text
        self.ring = ring
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[start]!r}", start, text)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos, self.text)

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty expression", 0, self.text)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos, self.text)
        return p

    def expr(self) -> Polynomial:
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("expected integer exponent", pos, self.text)
            base = base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "num":
            num = int(val)
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "num":
                    raise ParseError("expected integer denominator", p3, self.text)
                if int(v3) == 0:
                    raise ParseError("zero denominator", p3, self.text)
                try:
                    c = self.ring.field.from_fraction(num, int(v3))
                except ZeroDivisionError as exc:
                    raise ParseError(str(exc), p3, self.text) from exc
                return Polynomial(self.ring, {(0,) * self.ring.nvars_total: c})
            return self.ring.const(num)
        if kind == "name":
            try:
                return self.ring.var(val)
            except KeyError:
                raise ParseError(f"unknown variable {val!r}", pos, self.text) from None
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos, self.text)


def parse_polynomial(text: str, ring: RingSpec) -> Polynomial:
    return _Parser(_strip_comment(text), ring).parse()


def parse_monomial(text: str, ring: RingSpec) -> SquarefreeMonomial:
    """Parse a product of distinct variables, e.g. ``x1*x3``."""
    body = _strip_comment(text)
    names = [s.strip() for s in body.split("*")]
    bits = 0
    pos = 0
    for name in names:
        start = body.index(name, pos) if name else pos
        if not name:
            raise ParseError("empty factor in monomial", start, text)
        if not _IDENT.match(name):
            raise ParseError(f"expected a variable, found {name!r}", start, text)
        if name in ring.param_vars:
            raise ParseError(f"parameter {name!r} cannot occur in a squarefree monomial", start, text)
        if name not in ring.var_names:
            raise ParseError(f"unknown variable {name!r}", start, text)
        b = 1 << ring.var_names.index(name)
        if bits & b:
            raise ParseError(f"variable {name!r} repeated: not squarefree", start, text)
        bits |= b
        pos = start + len(name)
    return SquarefreeMonomial(ring, bits)


def parse_entity(text: str, ring: RingSpec, kind: str = "auto") -> SquarefreeMonomial | Polynomial:
    """Parse ``text`` as a squarefree monomial (``kind="monomial"``), a polynomial
    (``kind="polynomial"``) or whichever fits best (``"auto"``)."""
    if kind == "monomial":
        return parse_monomial(text, ring)
    poly = parse_polynomial(text, ring)
    if kind == "polynomial":
        return poly
    if kind != "auto":
        raise ValueError(f"unknown kind {kind!r}")
    mono = poly.as_squarefree_monomial()
    plain = re.fullmatch(r"\s*[A-Za-z_][A-Za-z0-9_]*(\s*\*\s*[A-Za-z_][A-Za-z0-9_]*)*\s*", _strip_comment(text))
    return mono if mono is not None and plain else poly

"""Buchberger's algorithm over QQ (fraction-free) and small finite fields.

Monomials are packed into Python ints so that integer comparison *is* the
monomial order:

* every variable gets a ``FIELD_BITS``-wide field whose top bit is a guard;
* degrevlex stores ``MAXEXP - e_i`` per variable with the last variable in the
  most significant position and the total degree above all of them;
* lex stores ``e_i`` with the first variable most significant.

Products are additions of codes (plus a constant offset for degrevlex) and
divisibility is a single subtraction checked against the guard bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .fields import FieldSpec, PrimeField, RationalField
from .ring import Polynomial, RingSpec

FIELD_BITS = 16
MAXEXP = (1 << (FIELD_BITS - 1)) - 1


class ExponentOverflowError(ArithmeticError):
    pass


class WorkBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "degrevlex"
    perm: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def permutation(self, nvars: int) -> tuple[int, ...]:
        """``perm[k]`` is the variable in position k (position 0 = largest variable)."""
        perm = self.perm if self.perm is not None else tuple(range(nvars))
        if sorted(perm) != list(range(nvars)):
            raise ValueError("variable permutation does not match the ring")
        return tuple(perm)

    def sort_key(self, nvars: int):
        """A key on exponent tuples that increases with the order (reference implementation)."""
        perm = self.permutation(nvars)
        if self.kind == "lex":
            return lambda e: tuple(e[i] for i in perm)
        rev = tuple(reversed(perm))
        return lambda e: (sum(e),) + tuple(-e[i] for i in rev)


DEGREVLEX = MonomialOrder()
LEX = MonomialOrder("lex")


class Encoding:
    """Packing of exponent vectors for one ring and order."""

    def __init__(self, nvars: int, order: MonomialOrder):
        self.n = nvars
        self.order = order
        self.perm = order.permutation(nvars)
        self.inverted = order.kind == "degrevlex"
        B = FIELD_BITS
        # slot[v]: field index of variable v (0 = least significant)
        if self.inverted:
            # last variable of the order is most significant among variable fields
            self.slot = [0] * nvars
            for pos, v in enumerate(self.perm):
                self.slot[v] = pos
        else:
            self.slot = [0] * nvars
            for pos, v in enumerate(self.perm):
                self.slot[v] = nvars - 1 - pos
        self.low_mask = (1 << (B * nvars)) - 1
        self.guard = sum(1 << (B * k + B - 1) for k in range(nvars))
        self.low_max = sum(MAXEXP << (B * k) for k in range(nvars))
        self.deg_shift = B * nvars
        self.one = self.low_max if self.inverted else 0
        self.field_mask = (1 << B) - 1

    def encode(self, e: Sequence[int]) -> int:
        B = FIELD_BITS
        code = 0
        for v, k in enumerate(e):
            if k > MAXEXP:
                raise ExponentOverflowError(f"exponent {k} exceeds {MAXEXP}")
            code |= ((MAXEXP - k) if self.inverted else k) << (B * self.slot[v])
        if self.inverted:
            code |= sum(e) << self.deg_shift
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        B = FIELD_BITS
        fm = self.field_mask
        out = []
        for v in range(self.n):
            f = (code >> (B * self.slot[v])) & fm
            out.append(MAXEXP - f if self.inverted else f)
        return tuple(out)

    def mul(self, a: int, b: int) -> int:
        return a + b - self.one

    def divides(self, a: int, b: int) -> bool:
        if self.inverted:
            return ((a & self.low_mask) | self.guard) - (b & self.low_mask) & self.guard == self.guard
        return ((b | self.guard) - a) & self.guard == self.guard

    def quotient(self, b: int, a: int) -> int:
        """b / a, assuming a divides b."""
        return b - a + self.one

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.decode(a), self.decode(b)
        return self.encode([max(x, y) for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        return not any(x and y for x, y in zip(self.decode(a), self.decode(b)))

    def degree(self, a: int) -> int:
        if self.inverted:
            return a >> self.deg_shift
        return sum(self.decode(a))


# ------------------------------------------------------------------ coefficient domains

class _IntDomain:
    """Fraction-free arithmetic for QQ: polynomials are kept primitive over ZZ."""

    exact_division = False

    def normalize(self, p: dict) -> dict:
        if not p:
            return p
        g = 0
        for c in p.values():
            g = gcd(g, c)
            if g == 1:
                break
        lead = p[max(p)]
        if lead < 0:
            g = -g
        if g != 1:
            p = {k: c // g for k, c in p.items()}
        return p


class _ModDomain:
    exact_division = True

    def __init__(self, p: int):
        self.p = p

    def normalize(self, f: dict) -> dict:
        if not f:
            return f
        c = f[max(f)]
        if c == 1:
            return f
        inv = pow(c, -1, self.p)
        p = self.p
        return {k: v * inv % p for k, v in f.items()}


class _FieldDomain:
    """Generic (slow) path for fields given only through their operations, e.g. GF4."""

    exact_division = True

    def __init__(self, fld: FieldSpec):
        self.fld = fld

    def normalize(self, f: dict) -> dict:
        if not f:
            return f
        c = f[max(f)]
        if c == self.fld.one():
            return f
        inv = self.fld.inv(c)
        return {k: self.fld.mul(v, inv) for k, v in f.items()}


class Engine:
    """Buchberger with sugar pair selection and the Gebauer-Moeller update."""

    def __init__(self, ring: RingSpec, order: MonomialOrder = DEGREVLEX, max_work: int | None = None):
        self.ring = ring
        self.max_work = max_work
        self.work = 0
        self.enc = Encoding(ring.nvars_total, order)
        fld = ring.field
        if isinstance(fld, RationalField):
            self.dom = _IntDomain()
        elif isinstance(fld, PrimeField):
            self.dom = _ModDomain(fld.p)
        else:
            self.dom = _FieldDomain(fld)
        self.fld = fld
        self.reductions = 0

    # -------- conversion
    def from_poly(self, f: Polynomial) -> dict:
        enc = self.enc.encode
        if isinstance(self.dom, _IntDomain):
            den = 1
            for c in f.terms.values():
                den = den * c.denominator // gcd(den, c.denominator)
            p = {enc(e): int(c * den) for e, c in f.terms.items()}
        else:
            p = {enc(e): c for e, c in f.terms.items()}
        return self.dom.normalize(p)

    def to_poly(self, p: dict, scale=None) -> Polynomial:
        """Back to a Polynomial; monic unless ``scale`` (an exact divisor) is given."""
        dec = self.enc.decode
        if isinstance(self.dom, _IntDomain):
            s = scale if scale is not None else (p[max(p)] if p else 1)
            return Polynomial(self.ring, {dec(k): Fraction(c, s) for k, c in p.items()})
        if scale is not None and scale != self.fld.one():
            inv = self.fld.inv(scale)
            return Polynomial(self.ring, {dec(k): self.fld.mul(c, inv) for k, c in p.items()})
        return Polynomial(self.ring, {dec(k): c for k, c in p.items()})

    # -------- reduction
    def reduce(self, f: dict, basis: Sequence[dict], leads: Sequence[int]):
        """Full normal form. Returns ``(remainder, scale)`` with remainder equal to
        ``scale * NF(f)``; ``scale`` is 1 except in the fraction-free QQ case."""
        enc = self.enc
        divides, quotient, one = enc.divides, enc.quotient, enc.one
        f = dict(f)
        rem: dict = {}
        scale = 1
        dom = self.dom
        int_mode = isinstance(dom, _IntDomain)
        mod_p = dom.p if isinstance(dom, _ModDomain) else None
        fld = self.fld
        while f:
            e = max(f)
            c = f[e]
            for g, ge in zip(basis, leads):
                if divides(ge, e):
                    break
            else:
                rem[e] = f.pop(e)
                continue
            self.reductions += 1
            self.work += len(g)
            if self.max_work is not None and self.work > self.max_work:
                raise WorkBudgetExceeded(f"more than {self.max_work} term operations")
            shift = quotient(e, ge) - one
            if int_mode:
                a = g[ge]
                k = gcd(a, c)
                fa, fc = a // k, c // k
                if fa < 0:
                    fa, fc = -fa, -fc
                if fa != 1:
                    self.work += len(f) + len(rem)
                    for t in f:
                        f[t] *= fa
                    for t in rem:
                        rem[t] *= fa
                    scale *= fa
                for t, v in g.items():
                    t2 = t + shift
                    w = f.get(t2, 0) - fc * v
                    if w:
                        f[t2] = w
                    else:
                        f.pop(t2, None)
            elif mod_p is not None:
                for t, v in g.items():
                    t2 = t + shift
                    w = (f.get(t2, 0) - c * v) % mod_p
                    if w:
                        f[t2] = w
                    else:
                        f.pop(t2, None)
            else:
                for t, v in g.items():
                    t2 = t + shift
                    w = fld.sub(f.get(t2, 0), fld.mul(c, v))
                    if w:
                        f[t2] = w
                    else:
                        f.pop(t2, None)
        if int_mode and rem:
            g = 0
            for v in rem.values():
                g = gcd(g, v)
            g = gcd(g, scale)
            if g > 1:
                rem = {t: v // g for t, v in rem.items()}
                scale //= g
        return rem, scale

    def spoly(self, f: dict, fe: int, g: dict, ge: int, lcm: int) -> dict:
        one = self.enc.one
        sf, sg = self.enc.quotient(lcm, fe) - one, self.enc.quotient(lcm, ge) - one
        a, b = f[fe], g[ge]
        if isinstance(self.dom, _IntDomain):
            k = gcd(a, b)
            ma, mb = b // k, a // k
            out = {t + sf: v * ma for t, v in f.items()}
            for t, v in g.items():
                t2 = t + sg
                w = out.get(t2, 0) - v * mb
                if w:
                    out[t2] = w
                else:
                    out.pop(t2, None)
            return out
        fld = self.fld
        out = {t + sf: v for t, v in f.items()}
        for t, v in g.items():
            t2 = t + sg
            w = fld.sub(out.get(t2, fld.zero()), v)
            if fld.is_zero(w):
                out.pop(t2, None)
            else:
                out[t2] = w
        return out

    # -------- Buchberger
    def groebner(self, gens: Iterable[dict]) -> list[dict]:
        enc = self.enc
        polys: list[dict] = []
        leads: list[int] = []
        sugar: list[int] = []
        alive: list[int] = []
        pairs: dict[tuple[int, int], tuple[int, int]] = {}  # (i, j) -> (sugar, lcm)

        def active():
            return [polys[i] for i in alive], [leads[i] for i in alive]

        def insert(h: dict, s: int) -> bool:
            h = self.dom.normalize(h)
            hl = max(h)
            k = len(polys)
            polys.append(h)
            leads.append(hl)
            sugar.append(s)
            if hl == enc.one:
                return True
            self._update(k, alive, pairs, polys, leads, sugar)
            return False

        for g in gens:
            if not g:
                continue
            basis, bl = active()
            r, _ = self.reduce(g, basis, bl)
            if not r:
                continue
            s = max(enc.degree(t) for t in r)
            if insert(r, s):
                return [self.dom.normalize(r)]

        while pairs:
            (i, j), (s, lcm) = min(pairs.items(), key=lambda kv: (kv[1][0], kv[1][1], kv[0]))
            del pairs[(i, j)]
            sp = self.spoly(polys[i], leads[i], polys[j], leads[j], lcm)
            if not sp:
                continue
            basis, bl = active()
            r, _ = self.reduce(sp, basis, bl)
            if r and insert(r, s):
                return [self.dom.normalize(r)]
        return self.interreduce([polys[i] for i in alive])

    def _update(self, k, alive, pairs, polys, leads, sugar) -> None:
        enc = self.enc
        hl = leads[k]
        hdeg = enc.degree(hl)
        cand = {}
        for i in alive:
            l = enc.lcm(leads[i], hl)
            ldeg = enc.degree(l)
            s = max(sugar[i] + ldeg - enc.degree(leads[i]), sugar[k] + ldeg - hdeg)
            cand[i] = (l, s, enc.coprime(leads[i], hl))
        # criterion M: drop (i, k) when another new lcm properly divides its lcm
        survivors = {
            i: v for i, v in cand.items()
            if not any(enc.divides(w[0], v[0]) and w[0] != v[0] for j, w in cand.items() if j != i)
        }
        # criterion F: among equal lcms keep one pair, none if any of them is coprime
        by_lcm: dict[int, list[int]] = {}
        for i in sorted(survivors):
            by_lcm.setdefault(survivors[i][0], []).append(i)
        keep = {}
        for l, idx in by_lcm.items():
            if any(survivors[i][2] for i in idx):
                continue
            i = idx[0]
            keep[i] = survivors[i]
        # old pairs made redundant by the new lead term
        for (a, b), (s, l) in list(pairs.items()):
            if enc.divides(hl, l) and enc.lcm(leads[a], hl) != l and enc.lcm(leads[b], hl) != l:
                del pairs[(a, b)]
        for i, (l, s, _) in keep.items():
            pairs[(i, k)] = (s, l)
        alive[:] = [i for i in alive if not enc.divides(hl, leads[i])] + [k]

    def interreduce(self, basis: list[dict]) -> list[dict]:
        basis = sorted(basis, key=lambda p: max(p))
        leads = [max(p) for p in basis]
        keep = [
            i for i, l in enumerate(leads)
            if not any(j != i and self.enc.divides(leads[j], l) and (leads[j] != l or j < i) for j in range(len(leads)))
        ]
        out = []
        for i in keep:
            others = [basis[j] for j in keep if j != i]
            ol = [leads[j] for j in keep if j != i]
            r, _ = self.reduce(basis[i], others, ol)
            out.append(self.dom.normalize(r))
        out.sort(key=max)
        return out


# ------------------------------------------------------------------ public surface

@dataclass(frozen=True)
class GroebnerBasis:
    basis: tuple[Polynomial, ...]
    order: MonomialOrder
    ring: RingSpec

    def is_unit(self) -> bool:
        return any(len(g) == 1 and not any(next(iter(g.terms))) for g in self.basis)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.basis, self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def leading_exponents(self) -> list[tuple[int, ...]]:
        key = self.order.sort_key(self.ring.nvars_total)
        return [max(g.terms, key=key) for g in self.basis]


def groebner(
    gens: Sequence[Polynomial],
    order: MonomialOrder = DEGREVLEX,
    ring: RingSpec | None = None,
    max_work: int | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis (monic) of the ideal generated by ``gens``.

    An empty generator list gives the basis of the zero ideal; pass ``ring``
    in that case. ``max_work`` caps the number of term operations spent in
    reductions (``WorkBudgetExceeded`` beyond it).
    """
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators from different rings")
    eng = Engine(ring, order, max_work)
    basis = eng.groebner(eng.from_poly(g) for g in gens if not g.is_zero())
    return GroebnerBasis(tuple(eng.to_poly(b) for b in basis), order, ring)


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> Polynomial:
    eng = Engine(f.ring, order)
    polys = [eng.from_poly(g) for g in basis if not g.is_zero()]
    r, scale = eng.reduce(_raw(eng, f), polys, [max(p) for p in polys])
    if not r:
        return f.ring.zero()
    return eng.to_poly(r, scale=scale * _raw_scale(eng, f))


def _raw(eng: Engine, f: Polynomial) -> dict:
    """Encode f without normalization (QQ: cleared denominators only)."""
    enc = eng.enc.encode
    if isinstance(eng.dom, _IntDomain):
        den = _den(f)
        return {enc(e): int(c * den) for e, c in f.terms.items()}
    return {enc(e): c for e, c in f.terms.items()}


def _den(f: Polynomial) -> int:
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return den


def _raw_scale(eng: Engine, f: Polynomial):
    return _den(f) if isinstance(eng.dom, _IntDomain) else 1


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    """S-polynomial of the monic versions of f and g."""
    key = order.sort_key(f.ring.nvars_total)
    fld = f.ring.field
    fe, ge = max(f.terms, key=key), max(g.terms, key=key)
    lcm = tuple(max(a, b) for a, b in zip(fe, ge))
    def mono(e, c):
        return Polynomial(f.ring, {e: c})

    left = mono(tuple(a - b for a, b in zip(lcm, fe)), fld.inv(f.terms[fe])) * f
    right = mono(tuple(a - b for a, b in zip(lcm, ge)), fld.inv(g.terms[ge])) * g
    return left - right


def unreduced_s_polynomials(gb: GroebnerBasis) -> list[tuple[int, int, Polynomial]]:
    """Pairs whose S-polynomial has a nonzero normal form (empty for a valid basis)."""
    bad = []
    n = len(gb.basis)
    for i in range(n):
        for j in range(i + 1, n):
            r = gb.reduce(s_polynomial(gb.basis[i], gb.basis[j], gb.order))
            if not r.is_zero():
                bad.append((i, j, r))
    return bad

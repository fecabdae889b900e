"""Exact algebra used to cross-check certificates.

* radical membership through the Rabinowitsch trick,
* finite-field point scans that exhibit non-membership witnesses,
* exact polynomial identity checks.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .fields import FieldSpec, PrimeField
from .groebner import (  # noqa: F401  (re-exported)
    DEGREVLEX,
    LEX,
    GroebnerBasis,
    MonomialOrder,
    WorkBudgetExceeded,
    groebner,
    normal_form,
    s_polynomial,
    unreduced_s_polynomials,
)
from .ring import Polynomial, RingSpec, SquarefreeMonomial



class UnsupportedQueryError(ValueError):
    pass


# ------------------------------------------------------------------ field changes

def change_field(f: Polynomial, ring: RingSpec) -> Polynomial:
    """Map ``f`` into ``ring`` (same variable layout) by coercing coefficients.

    Rationals map through numerator/denominator; finite-field integers map
    through ``from_int`` (used for GF(p) -> GF(p) and GF(2) -> GF4).
    """
    if ring.all_names != f.ring.all_names:
        raise ValueError("rings differ in their variables")
    fld = ring.field
    out = {}
    for e, c in f.terms.items():
        if isinstance(c, Fraction):
            out[e] = fld.from_fraction(c.numerator, c.denominator)
        else:
            if f.ring.field.characteristic != fld.characteristic:
                raise ValueError(f"cannot map coefficients of {f.ring.field} into {fld}")
            out[e] = fld.from_int(c) if isinstance(fld, PrimeField) else c
    return Polynomial(ring, out)


def specialize_params(polys: Sequence[Polynomial], values: Mapping[str, object], fld: FieldSpec) -> list[Polynomial]:
    """Substitute parameter values (elements of ``fld``) and drop the parameters.

    Typical use: t -> w (a primitive element of GF4) to run membership queries
    in characteristic 2 numerically.
    """
    if not polys:
        return []
    src = polys[0].ring
    mid = RingSpec(src.num_vars, src.var_names, fld, src.param_vars)
    target = RingSpec(src.num_vars, src.var_names, fld)
    return [change_field(p, mid).substitute(values, target) for p in polys]


# ------------------------------------------------------------------ radical membership

@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    witness: tuple | None = None

    def __post_init__(self):
        if self.witness is not None and self.member:
            raise ValueError("a member cannot have a non-vanishing witness")


def _embed(f: Polynomial, ring: RingSpec) -> Polynomial:
    pad = ring.nvars_total - f.ring.nvars_total
    return Polynomial(ring, {e + (0,) * pad: c for e, c in f.terms.items()})


def _drop_params(f: Polynomial, ring: RingSpec) -> Polynomial:
    k = ring.num_vars
    return Polynomial(ring, {e[:k]: c for e, c in f.terms.items()})


def _fresh_name(ring: RingSpec) -> str:
    name = "y"
    while name in ring.all_names:
        name += "_"
    return name


def _check_query(m: SquarefreeMonomial, J: Sequence[Polynomial]) -> RingSpec:
    ring = m.ring
    for q in J:
        if q.ring.num_vars != ring.num_vars or q.ring.var_names != ring.var_names or q.ring.field != ring.field:
            raise ValueError("monomial and candidates live in different rings")
        if q.uses_params():
            raise UnsupportedQueryError("parameter variables cannot occur in membership queries")
    return ring


def radical_member(m: SquarefreeMonomial, J: Sequence[Polynomial], find_witness: bool = True) -> MembershipVerdict:
    """Decide m in sqrt(J) via 1 in J + (1 - y*m) with a fresh variable y."""
    ring = _check_query(m, J).without_params()
    ext = ring.extended(_fresh_name(ring))
    y = ext.var(ext.num_vars)
    gens = [_embed(_drop_params(q, ring), ext) for q in J]
    gens.append(ext.one() - y * _embed(_drop_params(m.to_poly(), ring), ext))
    if _is_unit_ideal(gens, ext):
        return MembershipVerdict(True)
    witness = _small_witness(m, J) if find_witness else None
    return MembershipVerdict(False, witness)


def _is_unit_ideal(gens: Sequence[Polynomial], ring: RingSpec) -> bool:
    """Run degrevlex under two variable orders with a growing work budget.

    Running time of Buchberger's algorithm depends heavily on the variable
    order and the better order differs between inputs; alternating with a
    budget that quadruples each round bounds the loss to a constant factor.
    """
    n = ring.nvars_total
    # the reversed order puts the Rabinowitsch variable first; it wins on the I_m family
    orders = [MonomialOrder("degrevlex", tuple(reversed(range(n)))), DEGREVLEX]
    budget = 4000
    while True:
        for order in orders:
            try:
                return groebner(gens, order, ring, max_work=budget).is_unit()
            except WorkBudgetExceeded:
                pass
        budget *= 4


def _small_witness(m: SquarefreeMonomial, J: Sequence[Polynomial]) -> tuple | None:
    """Look for a point with coordinates in {0, 1} (then {-1, 0, 1}) where J vanishes and m does not."""
    n = m.ring.num_vars
    fld = m.ring.field
    value_sets = [(0, 1)]
    if n <= 8:
        value_sets.append((0, 1, -1))
    for values in value_sets:
        for pt in itertools.product(values, repeat=n):
            if all(pt[i - 1] for i in m.support) and all(fld.is_zero(q.evaluate(pt)) for q in J):
                return tuple(fld.from_int(v) for v in pt)
    return None


def radical_equal(ideal, J: Sequence[Polynomial]) -> bool:
    """sqrt(I) == sqrt(J) for a squarefree monomial ideal I and polynomials J.

    One inclusion is term-wise: every term of every element of J must be
    divisible by a generator of I. The other asks for each generator of I to
    lie in sqrt(J).
    """
    gens = ideal.generators
    for q in J:
        for e in q.terms:
            if any(e[ideal.ring.num_vars:]):
                raise UnsupportedQueryError("parameter variables cannot occur in membership queries")
            support = sum(1 << i for i, k in enumerate(e[: ideal.ring.num_vars]) if k)
            if not any(g.bits & ~support == 0 for g in gens):
                return False
    return all(radical_member(g, J, find_witness=False).member for g in gens)


# ------------------------------------------------------------------ point scans

def point_counterexample(
    m: SquarefreeMonomial,
    J: Sequence[Polynomial],
    fld: FieldSpec,
    exhaustive: bool = True,
    samples: int = 20000,
    seed: int = 0,
) -> tuple | None:
    """A point over ``fld`` where every element of J vanishes but m does not.

    Points have one coordinate per variable followed by one per parameter. In
    exhaustive mode every point of fld^n is scanned (n <= 12); otherwise
    ``samples`` random points are drawn. Finding nothing says nothing about
    the algebraic closure.
    """
    if not fld.finite:
        raise ValueError("point scans need a finite field")
    src = J[0].ring if J else m.ring
    ring = RingSpec(src.num_vars, src.var_names, fld, src.param_vars)
    polys = [change_field(q, ring) for q in J]
    n = ring.nvars_total
    support = [i - 1 for i in m.support]
    elements = list(fld.elements())

    def hit(pt) -> bool:
        if any(fld.is_zero(pt[i]) for i in support):
            return False
        return all(fld.is_zero(q.evaluate(pt)) for q in polys)

    if exhaustive:
        if n > 12:
            raise ValueError("exhaustive scans are limited to 12 coordinates")
        for pt in itertools.product(elements, repeat=n):
            if hit(pt):
                return pt
        return None
    rng = random.Random(seed)
    for _ in range(samples):
        pt = tuple(rng.choice(elements) for _ in range(n))
        if hit(pt):
            return pt
    return None


# ------------------------------------------------------------------ identities

def verify_identity(lhs: Polynomial, rhs: Polynomial, clear: Polynomial | None = None) -> bool:
    """Exact check of ``lhs == rhs``, or of ``clear * lhs == rhs`` when the
    printed identity reads ``lhs = rhs / clear``."""
    if lhs.ring != rhs.ring:
        raise ValueError("identity sides live in different rings")
    left = clear * lhs if clear is not None else lhs
    return (left - rhs).is_zero()


@dataclass(frozen=True)
class Identity:
    """A displayed identity ``lhs = rhs / clear`` (``clear`` absent means 1)."""

    name: str
    lhs: Polynomial
    rhs: Polynomial
    clear: Polynomial | None = None

    @property
    def ring(self) -> RingSpec:
        return self.lhs.ring

    def holds(self) -> bool:
        return verify_identity(self.lhs, self.rhs, self.clear)

"""Radical-generation certificates for sets of squarefree monomials.

Three criteria are checked here:

* the Schmitt-Vogel layering condition (``SVCertificate``),
* the five-element divisibility condition (``Prop1Certificate``),
* the generalized cancellation procedure (``GSVCertificate``), explored over
  every choice of variable and singleton part.

Each accepted certificate emits the polynomials ``q_i`` (sums over the parts)
that generate the monomial ideal up to radical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .ring import Polynomial, SquarefreeMonomial, divides_product


class CertificateError(ValueError):
    """Malformed certificate, or a conversion applied to a rejected certificate."""


NO_SINGLETON_PART = "NoSingletonPart"
CONDITION_VIOLATED = "ConditionViolated"


@dataclass(frozen=True)
class FailureReason:
    kind: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind}({self.detail})" if self.detail else self.kind


@dataclass(frozen=True)
class TraceStep:
    variable: int
    cancelled: tuple[SquarefreeMonomial, ...]
    next_part: int | None


@dataclass(frozen=True)
class ProcedureTrace:
    steps: tuple[TraceStep, ...]
    failure_reason: FailureReason
    remaining: tuple[SquarefreeMonomial, ...] = ()

    def format(self, var_names: Sequence[str] | None = None) -> str:
        lines = ["T = S_0"]
        for k, st in enumerate(self.steps, 1):
            z = var_names[st.variable - 1] if var_names else f"x{st.variable}"
            canc = ", ".join(map(str, st.cancelled)) or "-"
            nxt = f"T = S_{st.next_part}" if st.next_part is not None else "stop"
            lines.append(f"{k}. pick {z}; cancel {canc}; {nxt}")
        rem = ", ".join(map(str, self.remaining))
        lines.append(f"failure: {self.failure_reason}" + (f"; remaining {rem}" if rem else ""))
        return "\n".join(lines)


@dataclass(frozen=True)
class CheckResult:
    accepted: bool
    emitted: tuple[Polynomial, ...] = ()
    trace: ProcedureTrace | None = None
    states: int = 0

    def __bool__(self) -> bool:
        return self.accepted


def _unique(monos: Iterable[SquarefreeMonomial]) -> tuple[SquarefreeMonomial, ...]:
    out: list[SquarefreeMonomial] = []
    for m in monos:
        if m not in out:
            out.append(m)
    return tuple(out)


def _same_ring(monos: Iterable[SquarefreeMonomial]):
    ring = None
    for m in monos:
        if ring is None:
            ring = m.ring
        elif m.ring != ring:
            raise CertificateError("certificate mixes monomials from different rings")
    return ring


def _part_sum(part: Iterable[SquarefreeMonomial], ring, exps: Callable[[SquarefreeMonomial], int] | None = None) -> Polynomial:
    total = ring.zero()
    for m in part:
        p = m.to_poly()
        if exps is not None and exps(m) != 1:
            p = p ** exps(m)
        total = total + p
    return total


# ------------------------------------------------------------------ Schmitt-Vogel

@dataclass(frozen=True)
class SVCertificate:
    parts: tuple[tuple[SquarefreeMonomial, ...], ...]
    exponents: Mapping[tuple[int, SquarefreeMonomial], int] = field(default_factory=dict)
    generators: tuple[SquarefreeMonomial, ...] = ()

    def __post_init__(self):
        parts = tuple(_unique(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        union = _unique(m for p in parts for m in p)
        gens = _unique(self.generators) if self.generators else union
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "exponents", dict(self.exponents))
        if not parts or len(parts[0]) != 1:
            raise CertificateError("P_0 must have exactly one element")
        if set(union) != set(gens):
            gap = sorted(set(gens) - set(union)) or sorted(set(union) - set(gens))
            raise CertificateError(f"union of parts differs from the generator set at {', '.join(map(str, gap))}")
        for (i, m), e in self.exponents.items():
            if e < 1:
                raise CertificateError(f"exponent of {m} in part {i} must be >= 1")
            if not (0 <= i < len(parts)) or m not in parts[i]:
                raise CertificateError(f"exponent given for {m} which is not in part {i}")
        _same_ring(gens)

    @property
    def ring(self):
        return self.generators[0].ring

    def exponent(self, i: int, m: SquarefreeMonomial) -> int:
        return self.exponents.get((i, m), 1)

    def all_exponents_one(self) -> bool:
        return all(e == 1 for e in self.exponents.values())


def check_sv(cert: SVCertificate) -> CheckResult:
    """Every pair of distinct elements of a later part needs a divisor of their product in an earlier part."""
    for i in range(1, len(cert.parts)):
        earlier = [m for p in cert.parts[:i] for m in p]
        for a, b in itertools.combinations(cert.parts[i], 2):
            if not any(divides_product(d, a, b) for d in earlier):
                reason = FailureReason(
                    CONDITION_VIOLATED,
                    f"part {i}: no element of an earlier part divides {a}*{b}",
                )
                return CheckResult(False, trace=ProcedureTrace((), reason))
    ring = cert.ring
    emitted = tuple(
        _part_sum(p, ring, lambda m, i=i: cert.exponent(i, m)) for i, p in enumerate(cert.parts)
    )
    return CheckResult(True, emitted)


# ------------------------------------------------------------------ five elements

@dataclass(frozen=True)
class Prop1Certificate:
    p0: SquarefreeMonomial
    p11: SquarefreeMonomial
    p12: SquarefreeMonomial
    p21: SquarefreeMonomial
    p22: SquarefreeMonomial

    def __post_init__(self):
        _same_ring(self.elements())

    def elements(self) -> tuple[SquarefreeMonomial, ...]:
        return (self.p0, self.p11, self.p12, self.p21, self.p22)

    @property
    def ring(self):
        return self.p0.ring


def prop1_violations(cert: Prop1Certificate) -> list[str]:
    out = []
    if not divides_product(cert.p0, cert.p11, cert.p22):
        out.append(f"p0={cert.p0} does not divide p11*p22={cert.p11}*{cert.p22}")
    if not divides_product(cert.p21, cert.p11, cert.p12):
        out.append(f"p21={cert.p21} does not divide p11*p12={cert.p11}*{cert.p12}")
    if not divides_product(cert.p12, cert.p21, cert.p22):
        out.append(f"p12={cert.p12} does not divide p21*p22={cert.p21}*{cert.p22}")
    return out


def check_prop1(cert: Prop1Certificate) -> CheckResult:
    bad = prop1_violations(cert)
    if bad:
        return CheckResult(False, trace=ProcedureTrace((), FailureReason(CONDITION_VIOLATED, "; ".join(bad))))
    emitted = (
        cert.p0.to_poly(),
        cert.p11.to_poly() + cert.p12.to_poly(),
        cert.p21.to_poly() + cert.p22.to_poly(),
    )
    return CheckResult(True, emitted)


def _quotient(num: Sequence[SquarefreeMonomial], den: SquarefreeMonomial) -> Polynomial:
    exps = [sum(col) for col in zip(*(m.exponents() for m in num))]
    for i, k in enumerate(den.exponents()):
        exps[i] -= k
        if exps[i] < 0:
            raise CertificateError(f"{den} does not divide the product {'*'.join(map(str, num))}")
    return Polynomial(den.ring, {tuple(exps): den.ring.field.one()})


def prop1_proof_identities(cert: Prop1Certificate) -> list[tuple[str, Polynomial, Polynomial]]:
    """The two cube identities behind the five-element criterion.

    With p11*p22 = a*p0 and p11*p12 = b*p21:
        p11^3 = p11^2*p1 - b*p11*p2 + b*a*p0
    and symmetrically, with p22*p21 = b'*p12:
        p22^3 = p22^2*p2 - b'*p22*p1 + b'*a*p0.
    Returned as (label, lhs, rhs) triples.
    """
    if not check_prop1(cert):
        raise CertificateError("divisibility hypotheses fail")
    p0, p11, p12, p21, p22 = (m.to_poly() for m in cert.elements())
    p1, p2 = p11 + p12, p21 + p22
    a = _quotient([cert.p11, cert.p22], cert.p0)
    b = _quotient([cert.p11, cert.p12], cert.p21)
    b2 = _quotient([cert.p22, cert.p21], cert.p12)
    return [
        ("p11^3", p11 ** 3, p11 ** 2 * p1 - b * p11 * p2 + b * a * p0),
        ("p22^3", p22 ** 3, p22 ** 2 * p2 - b2 * p22 * p1 + b2 * a * p0),
    ]


# ------------------------------------------------------------------ generalized procedure

@dataclass(frozen=True)
class GSVCertificate:
    generators: tuple[SquarefreeMonomial, ...]
    parts: tuple[tuple[SquarefreeMonomial, ...], ...]

    def __post_init__(self):
        parts = tuple(_unique(p) for p in self.parts)
        gens = _unique(self.generators) if self.generators else _unique(m for p in parts for m in p)
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise CertificateError("empty generator set")
        if not parts or len(parts[0]) != 1:
            raise CertificateError("S_0 must have exactly one element")
        union = {m for p in parts for m in p}
        if union != set(gens):
            extra = union - set(gens)
            if extra:
                raise CertificateError(f"parts contain non-generators: {', '.join(map(str, sorted(extra)))}")
            raise CertificateError(
                f"parts do not cover the generators: missing {', '.join(map(str, sorted(set(gens) - union)))}"
            )
        _same_ring(gens)

    @classmethod
    def from_parts(cls, parts: Iterable[Iterable[SquarefreeMonomial]]) -> "GSVCertificate":
        parts = tuple(tuple(p) for p in parts)
        return cls(_unique(m for p in parts for m in p), parts)

    @property
    def ring(self):
        return self.generators[0].ring

    @property
    def size(self) -> int:
        return len(self.parts)

    def emitted(self) -> tuple[Polynomial, ...]:
        return tuple(_part_sum(p, self.ring) for p in self.parts)


class _Explorer:
    """Exhaustive exploration of the cancellation procedure on bit-mask encodings.

    Generators are indexed 0..n-1; ``gen_vars[k]`` is the variable mask of
    generator k and ``parts[j]`` the mask of generator indices in S_j.
    """

    def __init__(self, gen_vars: Sequence[int], parts: Sequence[int], memo: dict | None, want_trace: bool,
                 canonical_keys: bool = False):
        self.gen_vars = list(gen_vars)
        self.parts = list(parts)
        self.memo = memo
        self.want_trace = want_trace
        self.canonical_keys = canonical_keys
        self.states = 0
        nvars = max((v.bit_length() for v in gen_vars), default=0)
        # per variable: mask of generators it divides
        self.divisible = [0] * nvars
        for k, vm in enumerate(gen_vars):
            for z in range(nvars):
                if vm >> z & 1:
                    self.divisible[z] |= 1 << k

    def _key(self, remaining: int, j: int):
        if not self.canonical_keys:
            return remaining, j
        # the future depends only on the induced parts and the tracked generator
        induced = tuple(sorted({p & remaining for p in self.parts if p & remaining}))
        return induced, self.parts[j] & remaining

    def run(self):
        full = (1 << len(self.gen_vars)) - 1
        return self.explore(full, 0, 0)

    def explore(self, remaining: int, j: int, used: int):
        """Return None if every branch from this state succeeds, else a failing
        sub-trace ``(steps, reason, remaining)`` (or ``False`` without traces)."""
        if self.memo is not None:
            key = self._key(remaining, j)
            hit = self.memo.get(key, _MISSING)
            if hit is not _MISSING:
                return hit
        self.states += 1
        result = self._explore(remaining, j, used)
        if self.memo is not None:
            self.memo[key] = result
        return result

    def _explore(self, remaining: int, j: int, used: int):
        if used >> j & 1:
            raise AssertionError(f"part {j} tracked twice on one branch")
        tracked = self.parts[j] & remaining
        if tracked == 0 or tracked & (tracked - 1):
            raise AssertionError("tracked part does not have exactly one remaining element")
        used |= 1 << j
        zs = self.gen_vars[tracked.bit_length() - 1]
        while zs:
            zbit = zs & -zs
            zs ^= zbit
            z = zbit.bit_length() - 1
            cancelled = remaining & self.divisible[z]
            rest = remaining & ~cancelled
            if not rest:
                continue
            singles = [i for i, p in enumerate(self.parts) if _is_single(p & rest)]
            if not singles:
                if not self.want_trace:
                    return False
                return ((z, cancelled, None),), FailureReason(NO_SINGLETON_PART), rest
            for i in singles:
                sub = self.explore(rest, i, used)
                if sub is not None:
                    if not self.want_trace:
                        return False
                    steps, reason, rem = sub
                    return ((z, cancelled, i),) + steps, reason, rem
        return None


_MISSING = object()


def _is_single(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


def _encode(cert: GSVCertificate) -> tuple[list[int], list[int]]:
    index = {g: k for k, g in enumerate(cert.generators)}
    gen_vars = [g.bits for g in cert.generators]
    parts = [sum(1 << index[m] for m in p) for p in cert.parts]
    return gen_vars, parts


def _decode_mask(cert: GSVCertificate, mask: int) -> tuple[SquarefreeMonomial, ...]:
    return tuple(g for k, g in enumerate(cert.generators) if mask >> k & 1)


def check_gsv(cert: GSVCertificate, memoize: bool = True) -> CheckResult:
    """Run the cancellation procedure over every branch.

    From T = S_0: for each variable z dividing the single remaining element of
    T, cancel every remaining generator divisible by z; the branch succeeds if
    nothing remains, otherwise it continues from every part with exactly one
    remaining element and fails if there is none. Variables and parts are
    tried in increasing order, so the first failing branch found is
    reproducible.
    """
    gen_vars, parts = _encode(cert)
    ex = _Explorer(gen_vars, parts, {} if memoize else None, want_trace=True)
    outcome = ex.run()
    if outcome is None:
        return CheckResult(True, cert.emitted(), states=ex.states)
    raw_steps, reason, rem = outcome
    steps = tuple(TraceStep(z + 1, _decode_mask(cert, canc), nxt) for z, canc, nxt in raw_steps)
    return CheckResult(False, trace=ProcedureTrace(steps, reason, _decode_mask(cert, rem)), states=ex.states)


def gsv_accepts(gen_vars: Sequence[int], parts: Sequence[int], memo: dict | None = None) -> bool:
    """Verdict-only check on pre-encoded masks; ``memo`` may be shared between
    certificates over the same generator list."""
    ex = _Explorer(gen_vars, parts, memo, want_trace=False, canonical_keys=True)
    return ex.run() is None


class TraceReplayError(ValueError):
    pass


def replay_trace(cert: GSVCertificate, trace: ProcedureTrace) -> tuple[SquarefreeMonomial, ...]:
    """Re-execute ``trace`` from the initial state and return the generators still
    remaining at its end. Raises ``TraceReplayError`` if a step is not a legal move
    or if the recorded failure does not hold in the reached state."""
    remaining = set(cert.generators)
    j = 0
    for k, st in enumerate(trace.steps):
        left = [m for m in cert.parts[j] if m in remaining]
        if len(left) != 1:
            raise TraceReplayError(f"step {k + 1}: part {j} does not have a single remaining element")
        (tracked,) = left
        if st.variable not in tracked.support:
            raise TraceReplayError(f"step {k + 1}: x{st.variable} does not divide {tracked}")
        cancelled = {m for m in remaining if st.variable in m.support}
        if cancelled != set(st.cancelled):
            raise TraceReplayError(f"step {k + 1}: recorded cancellations differ")
        remaining -= cancelled
        if st.next_part is not None:
            j = st.next_part
            if not 0 <= j < len(cert.parts):
                raise TraceReplayError(f"step {k + 1}: no part {j}")
    if trace.failure_reason.kind == NO_SINGLETON_PART:
        if not remaining:
            raise TraceReplayError("replay cancelled every generator")
        if trace.steps and trace.steps[-1].next_part is not None:
            raise TraceReplayError("trace does not end at a failure")
        if any(sum(m in remaining for m in p) == 1 for p in cert.parts):
            raise TraceReplayError("a singleton part exists at the end of the trace")
    out = tuple(g for g in cert.generators if g in remaining)
    if set(out) != set(trace.remaining):
        raise TraceReplayError("remaining generators differ from the recorded failure state")
    return out


# ------------------------------------------------------------------ conversions

def sv_to_gsv(cert: SVCertificate) -> GSVCertificate:
    if not cert.all_exponents_one():
        raise CertificateError("conversion needs all exponents equal to 1")
    if not check_sv(cert):
        raise CertificateError("certificate is rejected by the Schmitt-Vogel check")
    return GSVCertificate(cert.generators, cert.parts)


def prop1_to_gsv(cert: Prop1Certificate) -> GSVCertificate:
    if not check_prop1(cert):
        raise CertificateError("certificate is rejected by the five-element check")
    return GSVCertificate.from_parts([(cert.p0,), (cert.p11, cert.p12), (cert.p21, cert.p22)])

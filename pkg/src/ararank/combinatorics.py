"""Simplicial complexes, squarefree monomial ideals and their minimal primes.

Minimal primes of a squarefree monomial ideal are generated by the minimal
vertex covers (transversals) of the hypergraph of generator supports, so
everything here is combinatorics on bit masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .ring import Polynomial, RingSpec, SquarefreeMonomial, bits_to_indices


class UnitIdealError(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialComplex:
    num_vertices: int
    facets: tuple[frozenset[int], ...]

    def __init__(self, num_vertices: int, facets: Iterable[Iterable[int]]):
        fs = []
        for f in facets:
            f = frozenset(f)
            if any(not 1 <= v <= num_vertices for v in f):
                raise ValueError(f"facet {sorted(f)} has a vertex outside 1..{num_vertices}")
            if f not in fs:
                fs.append(f)
        for a in fs:
            for b in fs:
                if a < b:
                    raise ValueError(f"facet {sorted(a)} is contained in facet {sorted(b)}")
        fs.sort(key=lambda f: (len(f), sorted(f)))
        object.__setattr__(self, "num_vertices", num_vertices)
        object.__setattr__(self, "facets", tuple(fs))

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def is_face(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        return any(s <= f for f in self.facets)


@dataclass(frozen=True)
class MonomialIdeal:
    ring: RingSpec
    generators: tuple[SquarefreeMonomial, ...]

    def __init__(self, ring: RingSpec, generators: Iterable[SquarefreeMonomial]):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if g not in gens:
                gens.append(g)
        gens.sort()
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def rename(self, mapping: dict[int, int], ring: RingSpec | None = None) -> "MonomialIdeal":
        """Apply a variable renaming ``x_i -> x_mapping[i]`` (1-based)."""
        target = ring or self.ring
        return MonomialIdeal(
            target,
            [SquarefreeMonomial.from_indices(target, [mapping[i] for i in g.support]) for g in self.generators],
        )


@dataclass(frozen=True)
class MinimalPrime:
    vars: tuple[int, ...]

    @property
    def bits(self) -> int:
        return sum(1 << (i - 1) for i in self.vars)

    def __len__(self) -> int:
        return len(self.vars)

    def __str__(self) -> str:
        return "(" + ", ".join(f"x{i}" for i in self.vars) + ")"


@dataclass(frozen=True)
class HeightReport:
    height: int
    big_height: int
    pure: bool
    minimal_primes: tuple[MinimalPrime, ...]


# ----------------------------------------------------------------- transversals

def minimal_transversals(edges: Sequence[int]) -> list[int]:
    """All minimal vertex covers of a hypergraph whose edges are bit masks.

    Branch on the vertices of a smallest uncovered edge; vertices already
    branched on are forbidden in later sibling branches so each cover is
    produced once. A final check keeps only covers in which every chosen vertex
    has a private edge.
    """
    edges = sorted(set(edges), key=lambda e: (e.bit_count(), e))
    if not edges:
        return [0]
    if 0 in edges:
        return []
    # drop non-minimal edges: covering a minimal edge covers its supersets
    minimal = [e for e in edges if not any(f != e and f & ~e == 0 for f in edges)]
    found: set[int] = set()

    def minimal_cover(cover: int) -> bool:
        v = cover
        while v:
            low = v & -v
            v ^= low
            if all(e & cover != low for e in minimal if e & low):
                return False
        return True

    def rec(cover: int, forbidden: int) -> None:
        best = None
        for e in minimal:
            if e & cover:
                continue
            free = e & ~forbidden
            if not free:
                return
            if best is None or free.bit_count() < best.bit_count():
                best = free
        if best is None:
            if minimal_cover(cover):
                found.add(cover)
            return
        # vertices tried in earlier siblings stay out of this subtree
        banned = forbidden
        v = best
        while v:
            low = v & -v
            v ^= low
            rec(cover | low, banned)
            banned |= low

    rec(0, 0)
    return sorted(found, key=lambda b: bits_to_indices(b))


def minimal_transversals_bruteforce(edges: Sequence[int], num_vertices: int) -> list[int]:
    """Reference enumeration over all 2^n vertex subsets."""
    covers = [s for s in range(1 << num_vertices) if all(e & s for e in edges)]
    cover_set = set(covers)
    out = []
    for s in covers:
        v = s
        ok = True
        while v:
            low = v & -v
            v ^= low
            if (s ^ low) in cover_set:
                ok = False
                break
        if ok:
            out.append(s)
    return sorted(out, key=lambda b: bits_to_indices(b))


# ----------------------------------------------------------------- ideals

def stanley_reisner_ideal(complex_: SimplicialComplex, ring: RingSpec | None = None) -> MonomialIdeal:
    """Ideal of minimal non-faces.

    A vertex set is a non-face iff it meets the complement of every facet, so
    the minimal non-faces are the minimal transversals of the facet complements.
    """
    n = complex_.num_vertices
    ring = ring or RingSpec(n)
    full = (1 << n) - 1
    complements = [full & ~sum(1 << (v - 1) for v in f) for f in complex_.facets]
    if not complex_.facets:
        raise UnitIdealError("the void complex has the whole ring as its Stanley-Reisner ideal")
    covers = minimal_transversals(complements)
    return MonomialIdeal(ring, [SquarefreeMonomial(ring, c) for c in covers if c])


def minimalize(ideal: MonomialIdeal) -> MonomialIdeal:
    gens = ideal.generators
    if any(g.bits == 0 for g in gens):
        raise UnitIdealError("ideal is the whole ring")
    keep = [g for g in gens if not any(h != g and h.bits & ~g.bits == 0 for h in gens)]
    return MonomialIdeal(ideal.ring, keep)


def is_minimalized(ideal: MonomialIdeal) -> bool:
    gens = ideal.generators
    return all(g.bits for g in gens) and not any(
        h != g and h.bits & ~g.bits == 0 for g in gens for h in gens
    )


def minimal_primes(ideal: MonomialIdeal) -> list[MinimalPrime]:
    if not ideal.generators:
        return []
    covers = minimal_transversals([g.bits for g in ideal.generators])
    return [MinimalPrime(bits_to_indices(c)) for c in covers]


def height_report(ideal: MonomialIdeal) -> HeightReport:
    primes = minimal_primes(ideal)
    if not primes:
        return HeightReport(0, 0, True, ())
    sizes = [len(p) for p in primes]
    lo, hi = min(sizes), max(sizes)
    return HeightReport(lo, hi, lo == hi, tuple(primes))


def is_connected_one_dim(complex_: SimplicialComplex) -> bool:
    """Connectedness of a complex of dimension at most one, over all its vertices."""
    if any(len(f) > 2 for f in complex_.facets):
        raise ValueError("connectivity test needs facets of cardinality at most 2")
    n = complex_.num_vertices
    parent = list(range(n + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for f in complex_.facets:
        if len(f) == 2:
            a, b = sorted(f)
            parent[find(a)] = find(b)
    return len({find(v) for v in range(1, n + 1)}) == 1


# ----------------------------------------------------------------- families

@dataclass(frozen=True)
class ImFamily:
    m: int
    ideal: MonomialIdeal
    candidates: tuple[Polynomial, ...]
    parts: tuple[tuple[SquarefreeMonomial, ...], ...]
    named: dict


def build_Im(m: int) -> tuple[MonomialIdeal, list[Polynomial]]:
    fam = build_Im_family(m)
    return fam.ideal, list(fam.candidates)


def build_Im_family(m: int) -> ImFamily:
    """The ideal I_m in 3m+3 variables with its 2m+1 candidate generators.

    Generators are r1 = x1x2 and, for n = 1..m,
    s_n = x_{3n-2}x_{3n+2}, t_n = x_{3n+1}x_{3n+3}, u_n = x_{3n+1}x_{3n+2}, v_n = x_{3n-1}x_{3n+3}.
    Candidates are r1, s_n + t_n, u_n + v_n; ``parts`` groups them the same way.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    ring = RingSpec(3 * m + 3)
    mono = ring.monomial
    r1 = mono(1, 2)
    named = {"r1": r1}
    parts = [(r1,)]
    cands = [r1.to_poly()]
    for n in range(1, m + 1):
        s = mono(3 * n - 2, 3 * n + 2)
        t = mono(3 * n + 1, 3 * n + 3)
        u = mono(3 * n + 1, 3 * n + 2)
        v = mono(3 * n - 1, 3 * n + 3)
        named.update({f"s{n}": s, f"t{n}": t, f"u{n}": u, f"v{n}": v})
        parts += [(s, t), (u, v)]
        cands += [s.to_poly() + t.to_poly(), u.to_poly() + v.to_poly()]
    gens = [g for p in parts for g in p]
    return ImFamily(m, MonomialIdeal(ring, gens), tuple(cands), tuple(parts), named)


def build_ngon(n: int) -> SimplicialComplex:
    if n < 4:
        raise ValueError("an N-gon needs N >= 4")
    return SimplicialComplex(n, [{i, i % n + 1} for i in range(1, n + 1)])

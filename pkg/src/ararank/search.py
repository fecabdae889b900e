"""Search for small partition-shaped GSV certificates and the arithmetical-rank report.

A candidate is a singleton S_0 plus a set partition of the remaining
generators into blocks. The cancellation procedure branches over every
singleton part at each step, so its verdict depends only on S_0 and the
unordered blocks; enumerating blocks by restricted-growth strings therefore
covers every ordered partition of the same shape.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .certificates import GSVCertificate, check_gsv, gsv_accepts
from .combinatorics import MonomialIdeal, height_report, minimalize
from .ring import SquarefreeMonomial

FOUND = "found"
EXHAUSTED = "exhausted"
BUDGET = "budget"

_MEMO_LIMIT = 2_000_000


@dataclass(frozen=True)
class SearchConfig:
    max_parts: int | None = None  # None: |G|
    node_budget: int = 10 ** 7
    time_budget_ms: int = 60_000
    parallel: bool = False

    def __post_init__(self):
        if self.max_parts is not None and self.max_parts < 1:
            raise ValueError("max_parts must be positive")
        if self.node_budget < 1:
            raise ValueError("node_budget must be positive")
        if self.time_budget_ms < 1:
            raise ValueError("time_budget_ms must be positive")


@dataclass(frozen=True)
class SearchOutcome:
    """``status`` is FOUND, EXHAUSTED (every tried size was enumerated completely
    without success, so no partition-shaped certificate of those sizes exists)
    or BUDGET (inconclusive)."""

    status: str
    certificate: GSVCertificate | None
    sizes_exhausted: tuple[int, ...]
    nodes: int
    elapsed_ms: float


class _OutOfBudget(Exception):
    pass


class _Counter:
    def __init__(self, node_budget: int, deadline: float):
        self.nodes = 0
        self.node_budget = node_budget
        self.deadline = deadline

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise _OutOfBudget
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _OutOfBudget


def _divisible_table(gen_vars: Sequence[int]) -> list[int]:
    nvars = max(v.bit_length() for v in gen_vars)
    table = [0] * nvars
    for k, vm in enumerate(gen_vars):
        for z in range(nvars):
            if vm >> z & 1:
                table[z] |= 1 << k
    return table


def _first_step_ok(s0: int, blocks: Sequence[int], gen_vars: Sequence[int], divisible: Sequence[int]) -> bool:
    """Necessary condition: after cancelling any variable of the S_0 element,
    something is either finished or has a singleton part to continue from."""
    full = (1 << len(gen_vars)) - 1
    zs = gen_vars[s0]
    while zs:
        zbit = zs & -zs
        zs ^= zbit
        rest = full & ~divisible[zbit.bit_length() - 1]
        if rest and not any((b & rest) and (b & rest) & ((b & rest) - 1) == 0 for b in blocks):
            return False
    return True


def _search_tier_s0(
    gen_vars: Sequence[int], k: int, s0: int, counter: _Counter, memo: dict
) -> tuple[int, ...] | None:
    """Find blocks B_1..B_{k-1} partitioning G minus {s0} such that the
    certificate ({s0}, B_1, ..., B_{k-1}) is accepted. Blocks come back in
    restricted-growth order."""
    n = len(gen_vars)
    items = [i for i in range(n) if i != s0]
    nblocks = k - 1
    if nblocks == 0:
        return () if not items else None
    if nblocks > len(items):
        return None
    divisible = _divisible_table(gen_vars)
    s0_mask = 1 << s0
    blocks = [0] * nblocks
    m = len(items)

    def rec(i: int, opened: int):
        counter.tick()
        if m - i < nblocks - opened:
            return None
        if i == m:
            if not _first_step_ok(s0, blocks, gen_vars, divisible):
                return None
            if len(memo) > _MEMO_LIMIT:
                memo.clear()
            if gsv_accepts(gen_vars, [s0_mask, *blocks], memo):
                return tuple(blocks)
            return None
        bit = 1 << items[i]
        for b in range(opened):
            blocks[b] |= bit
            found = rec(i + 1, opened)
            blocks[b] ^= bit
            if found is not None:
                return found
        if opened < nblocks:
            blocks[opened] |= bit
            found = rec(i + 1, opened + 1)
            blocks[opened] ^= bit
            if found is not None:
                return found
        return None

    return rec(0, 0)


def _worker(args):
    gen_vars, k, s0, node_budget, deadline_wall = args
    # monotonic clocks are per process; translate the wall-clock deadline
    deadline = time.monotonic() + max(0.0, deadline_wall - time.time())
    counter = _Counter(node_budget, deadline)
    try:
        found = _search_tier_s0(gen_vars, k, s0, counter, {})
    except _OutOfBudget:
        return BUDGET, None, counter.nodes
    return (FOUND if found is not None else EXHAUSTED), found, counter.nodes


def _worker_count() -> int:
    n = os.cpu_count() or 1
    cap = os.environ.get("ARARANK_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


def run_search(generators: Iterable[SquarefreeMonomial], cfg: SearchConfig = SearchConfig(),
               min_parts: int | None = None) -> SearchOutcome:
    """Try sizes from ``min_parts`` (default: the big height of G) up to
    ``cfg.max_parts``, S_0 candidates in increasing generator order."""
    gens = sorted(set(generators))
    if not gens:
        raise ValueError("empty generator set")
    ring = gens[0].ring
    if minimalize(MonomialIdeal(ring, gens)).generators != tuple(gens):
        raise ValueError("generator set is not minimalized")
    start = time.monotonic()
    deadline = start + cfg.time_budget_ms / 1000
    lo = min_parts if min_parts is not None else height_report(MonomialIdeal(ring, gens)).big_height
    hi = cfg.max_parts if cfg.max_parts is not None else len(gens)
    hi = min(hi, len(gens))
    gen_vars = [g.bits for g in gens]
    counter = _Counter(cfg.node_budget, deadline)
    memo: dict = {}
    exhausted: list[int] = []
    workers = _worker_count() if cfg.parallel else 1

    def outcome(status, cert=None):
        return SearchOutcome(status, cert, tuple(exhausted), counter.nodes, (time.monotonic() - start) * 1000)

    for k in range(max(lo, 1), hi + 1):
        try:
            if workers > 1:
                hit = _parallel_tier(gen_vars, k, counter, deadline, workers)
            else:
                hit = None
                for s0 in range(len(gens)):
                    blocks = _search_tier_s0(gen_vars, k, s0, counter, memo)
                    if blocks is not None:
                        hit = (s0, blocks)
                        break
        except _OutOfBudget:
            return outcome(BUDGET)
        if hit is not None:
            s0, blocks = hit
            parts = [(gens[s0],)] + [tuple(g for i, g in enumerate(gens) if b >> i & 1) for b in blocks]
            cert = GSVCertificate(tuple(gens), tuple(parts))
            if not check_gsv(cert).accepted:
                raise AssertionError("search produced a certificate the checker rejects")
            return outcome(FOUND, cert)
        exhausted.append(k)
    return outcome(EXHAUSTED)


def _parallel_tier(gen_vars, k, counter: _Counter, deadline: float, workers: int):
    """One size tier with one task per S_0. Results are consumed in S_0 order,
    so the lowest successful S_0 wins exactly as in the sequential search."""
    remaining_nodes = counter.node_budget - counter.nodes
    wall_deadline = time.time() + (deadline - time.monotonic())
    tasks = [(list(gen_vars), k, s0, remaining_nodes, wall_deadline) for s0 in range(len(gen_vars))]
    budget_hit = False
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_worker, t) for t in tasks]
        try:
            for s0, fut in enumerate(futures):
                status, blocks, nodes = fut.result()
                counter.nodes += nodes
                if status == FOUND and not budget_hit:
                    return s0, blocks
                if status == BUDGET:
                    # an earlier S_0 is undecided; later successes cannot be ranked
                    budget_hit = True
        finally:
            for fut in futures:
                fut.cancel()
    if budget_hit or counter.nodes > counter.node_budget:
        raise _OutOfBudget
    return None


def search_grouping(generators: Iterable[SquarefreeMonomial], cfg: SearchConfig = SearchConfig()) -> GSVCertificate | None:
    return run_search(generators, cfg).certificate


# ------------------------------------------------------------------ report

@dataclass(frozen=True)
class AraReport:
    height: int
    big_height: int
    lower_bound: int
    upper_bound: int | None
    certificate: GSVCertificate | None
    stci: bool | None
    status: str
    sizes_exhausted: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.lower_bound < self.height:
            raise ValueError("lower bound below the height")
        if self.upper_bound is not None and self.upper_bound < self.lower_bound:
            raise ValueError("upper bound below the Krull bound")
        if self.stci and not (self.upper_bound == self.height == self.big_height):
            raise ValueError("inconsistent STCI verdict")


def ara_report(ideal: MonomialIdeal, cfg: SearchConfig = SearchConfig(),
               hint: GSVCertificate | None = None) -> AraReport:
    """Height data plus the smallest certificate found.

    An accepted ``hint`` over the same generators seeds the upper bound; the
    search then only looks for strictly smaller certificates, and is skipped
    when the hint already meets the Krull bound.
    """
    ideal = minimalize(ideal)
    hr = height_report(ideal)
    if not ideal.generators:
        return AraReport(0, 0, 0, 0, None, True, FOUND)
    cert = None
    if hint is not None and set(hint.generators) == set(ideal.generators) and check_gsv(hint).accepted:
        cert = hint
    status, exhausted = FOUND, ()
    if cert is None or cert.size > hr.big_height:
        limit = cfg.max_parts if cert is None else cert.size - 1
        if cfg.max_parts is not None:
            limit = min(limit, cfg.max_parts)
        out = run_search(ideal.generators, SearchConfig(limit, cfg.node_budget, cfg.time_budget_ms, cfg.parallel))
        exhausted = out.sizes_exhausted
        if out.certificate is not None:
            cert = out.certificate
        elif cert is None:
            status = out.status
        elif out.status == BUDGET:
            # the hint stands, but a smaller certificate was not ruled out
            status = FOUND
    upper = cert.size if cert is not None else None
    if hr.big_height > hr.height:
        stci = False
    elif upper == hr.height:
        stci = True
    else:
        stci = None
    return AraReport(hr.height, hr.big_height, hr.big_height, upper, cert, stci, status, tuple(exhausted))

import random

import pytest
from hypothesis import HealthCheck, settings

from ararank.certificates import GSVCertificate, SVCertificate
from ararank.ring import RingSpec, SquarefreeMonomial

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=100, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


def random_monomials(rng: random.Random, ring: RingSpec, count: int, max_degree: int = 3) -> list[SquarefreeMonomial]:
    """Distinct nonempty squarefree monomials."""
    n = ring.num_vars
    seen: dict[int, SquarefreeMonomial] = {}
    tries = 0
    while len(seen) < count and tries < 1000:
        tries += 1
        k = rng.randint(1, min(max_degree, n))
        bits = sum(1 << i for i in rng.sample(range(n), k))
        seen.setdefault(bits, SquarefreeMonomial(ring, bits))
    return list(seen.values())


def random_gsv(rng: random.Random, max_vars: int = 6, max_gens: int = 7, overlap: bool = False) -> GSVCertificate:
    """S_0 a singleton, the rest split at random (optionally with repeats across parts)."""
    ring = RingSpec(rng.randint(2, max_vars))
    gens = random_monomials(rng, ring, rng.randint(1, max_gens))
    rng.shuffle(gens)
    s0, rest = gens[0], gens[1:]
    nparts = rng.randint(1, max(1, len(rest))) if rest else 0
    parts: list[list[SquarefreeMonomial]] = [[] for _ in range(nparts)]
    for g in rest:
        parts[rng.randrange(nparts)].append(g)
    if overlap and parts:
        for _ in range(rng.randint(0, 2)):
            parts[rng.randrange(nparts)].append(rng.choice(gens))
    parts = [p for p in parts if p]
    return GSVCertificate(tuple(gens), ((s0,), *map(tuple, parts)))


def random_sv(rng: random.Random) -> SVCertificate:
    """Each part is built around a divisor d from an earlier part: either all
    members but one contain d, or (two members) their supports jointly cover d."""
    ring = RingSpec(rng.randint(3, 8))
    n = ring.num_vars

    def extra():
        return sum(1 << i for i in range(n) if rng.random() < 0.25)

    def mono(bits):
        return SquarefreeMonomial(ring, bits or 1 << rng.randrange(n))

    parts = [[random_monomials(rng, ring, 1)[0]]]
    for _ in range(rng.randint(1, 4)):
        earlier = [m for p in parts for m in p]
        d = rng.choice(earlier).bits
        size = rng.randint(1, 3)
        if size == 2 and rng.random() < 0.5:
            b = c = 0
            for i in range(n):
                if d >> i & 1:
                    side = rng.randrange(3)
                    b |= (side != 1) << i
                    c |= (side != 0) << i
            members = [mono(b | extra()), mono(c | extra())]
        else:
            members = [mono(extra())] + [mono(d | extra()) for _ in range(size - 1)]
        part = []
        for m in members:
            if m not in part:
                part.append(m)
        parts.append(part)
    return SVCertificate(tuple(map(tuple, parts)))


_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if "test_acceptance.py::test_criterion_" in report.nodeid:
            name = report.nodeid.split("::test_criterion_", 1)[1]
            _ACCEPTANCE[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_", 1)[0])):
        num, _, desc = name.partition("_")
        terminalreporter.write_line(f"criterion {num}: {_ACCEPTANCE[name]}  ({desc.replace('_', ' ')})")


@pytest.fixture
def rng():
    return random.Random(20240611)

"""Command-line front end.

Exit codes: 0 success, 1 budget exhausted without a verdict, 2 usage or
parse error, 3 certificate rejected or identity failed, 4 the algebraic
cross-check disagrees with an accepted certificate.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Sequence

from . import fixtures as fx
from .certificates import (
    CertificateError,
    GSVCertificate,
    Prop1Certificate,
    SVCertificate,
    check_gsv,
    check_prop1,
    check_sv,
)
from .combinatorics import (
    MonomialIdeal,
    SimplicialComplex,
    UnitIdealError,
    height_report,
    is_connected_one_dim,
    minimalize,
    stanley_reisner_ideal,
)
from .fields import Field4, FieldSpec, parse_field
from .formats import (
    Report,
    detect_kind,
    format_certificate,
    format_complex,
    format_identities,
    format_ideal,
    parse_certificate,
    parse_complex,
    parse_ideal,
    parse_identities,
)
from .oracle import UnsupportedQueryError, change_field, radical_equal, specialize_params
from .ring import ParseError, Polynomial, RingSpec, SquarefreeMonomial
from .search import BUDGET, SearchConfig, ara_report, run_search

EXIT_OK = 0
EXIT_BUDGET = 1
EXIT_PARSE = 2
EXIT_REJECTED = 3
EXIT_ORACLE = 4


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _fixture(args) -> fx.Fixture | None:
    if not args.fixture:
        return None
    try:
        return fx.load_fixture(args.fixture, m=args.m, n=args.n)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _need_one_source(args) -> None:
    if bool(args.fixture) == bool(args.input):
        raise UsageError("give exactly one of an input file or --fixture")


def _load_ideal(args) -> tuple[MonomialIdeal, SimplicialComplex | None, fx.Fixture | None]:
    _need_one_source(args)
    fixture = _fixture(args)
    if fixture is not None:
        return fixture.ideal, fixture.complex, fixture
    text = _read(args.input)
    if detect_kind(text) == "complex":
        c = parse_complex(text)
        return stanley_reisner_ideal(c), c, None
    return parse_ideal(text), None, None


def _field(args) -> FieldSpec | None:
    if not getattr(args, "field", None):
        return None
    try:
        return parse_field(args.field)
    except (ValueError, ParseError) as e:
        raise UsageError(str(e)) from None


def _config(args) -> SearchConfig:
    try:
        return SearchConfig(args.max_parts, args.node_budget, args.time_budget_ms, args.parallel)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _yes(flag: bool | None) -> str:
    return {True: "yes", False: "no", None: "unknown"}[flag]


def _cert_lines(cert: GSVCertificate) -> list[str]:
    return [f"  S_{i} = {{{', '.join(map(str, p))}}}" for i, p in enumerate(cert.parts)]


def _oracle(ideal: MonomialIdeal, polys: Sequence[Polynomial], fld: FieldSpec | None, rep: Report) -> bool | None:
    """Radical equality over ``fld`` (default: the polynomials' own field).

    Parameters are specialized to the primitive element when the field is GF4;
    otherwise queries with parameters are skipped (returns None).
    """
    polys = list(polys)
    src = polys[0].ring
    target = fld or src.field
    if any(q.uses_params() for q in polys):
        if not isinstance(target, Field4):
            rep.say("oracle: skipped, parameters need --field GF4 to be specialized")
            return None
        polys = specialize_params(polys, {p: Field4.PRIMITIVE for p in src.param_vars}, target)
    else:
        ring = RingSpec(src.num_vars, src.var_names, target, src.param_vars)
        try:
            polys = [change_field(q, ring) for q in polys]
        except ValueError as e:
            raise UsageError(f"--field: {e}") from None
        if ring.param_vars:
            plain = ring.without_params()
            polys = [Polynomial(plain, {e[: plain.num_vars]: c for e, c in q.terms.items()}) for q in polys]
    ring = polys[0].ring
    mono_ideal = MonomialIdeal(ring, [SquarefreeMonomial(ring, g.bits) for g in ideal.generators])
    try:
        return radical_equal(mono_ideal, polys)
    except UnsupportedQueryError as e:
        rep.say(f"oracle: skipped, {e}")
        return None


# ------------------------------------------------------------------ commands

def cmd_analyze(args) -> tuple[Report, int]:
    ideal, complex_, fixture = _load_ideal(args)
    rep = Report()
    start = time.monotonic()
    try:
        ideal = minimalize(ideal)
    except UnitIdealError as e:
        raise UsageError(str(e)) from None
    rep.add("command", "analyze")
    if fixture is not None:
        rep.add("fixture", fixture.name, f"fixture: {fixture.name} ({fixture.title})")
    rep.add("generators", [str(g) for g in ideal.generators], f"ideal: {ideal}")
    hr = height_report(ideal)
    rep.add("minimal_primes", [list(p.vars) for p in hr.minimal_primes],
            f"minimal primes ({len(hr.minimal_primes)}): " + " ".join(map(str, hr.minimal_primes)))
    rep.add("height", hr.height, f"height {hr.height}")
    rep.add("big_height", hr.big_height, f"big height {hr.big_height}")
    rep.add("pure", hr.pure, f"pure: {_yes(hr.pure)}")
    if complex_ is not None and all(len(f) <= 2 for f in complex_.facets):
        conn = is_connected_one_dim(complex_)
        rep.add("connected", conn, f"1-dimensional complex connected (Cohen-Macaulay): {_yes(conn)}")
    code = EXIT_OK
    if args.search:
        hint = fixture.certificate if fixture is not None else None
        ar = ara_report(ideal, _config(args), hint=hint)
        rep.add("lower_bound", ar.lower_bound, f"lower {ar.lower_bound}")
        rep.add("upper_bound", ar.upper_bound, f"upper {ar.upper_bound if ar.upper_bound is not None else 'unknown'}")
        if ar.upper_bound is not None and ar.upper_bound == ar.lower_bound:
            rep.add("ara", ar.upper_bound, f"ara = {ar.upper_bound}")
        else:
            rep.add("ara", None)
        rep.add("stci", ar.stci, f"STCI: {_yes(ar.stci)}")
        rep.add("search_status", ar.status)
        if ar.sizes_exhausted:
            rep.add("sizes_exhausted", list(ar.sizes_exhausted),
                    "no partition-shaped certificate of size " + ", ".join(map(str, ar.sizes_exhausted)))
        if ar.certificate is not None:
            rep.add("certificate", format_certificate(ar.certificate), "certificate:")
            rep.text.extend(_cert_lines(ar.certificate))
            if args.oracle:
                ok = _oracle(ideal, ar.certificate.emitted(), _field(args), rep)
                rep.add("oracle", ok, f"oracle: {'confirms' if ok else 'DISAGREES'}" if ok is not None else None)
                if ok is False:
                    code = EXIT_ORACLE
        if ar.status == BUDGET and ar.stci is None:
            rep.say("search budget exhausted before a verdict")
            code = code or EXIT_BUDGET
    elif args.oracle and fixture is not None and fixture.candidates:
        ok = _oracle(ideal, fixture.candidates, _field(args), rep)
        rep.add("oracle", ok, f"oracle on the candidate generators: {'confirms' if ok else 'DISAGREES'}"
                if ok is not None else None)
        if ok is False:
            code = EXIT_ORACLE
    rep.add("elapsed_ms", round((time.monotonic() - start) * 1000, 1))
    return rep, code


def _select_certificate(args):
    fixture = _fixture(args)
    if fixture is None:
        if args.select:
            raise UsageError("--select only applies to fixtures")
        return parse_certificate(_read(args.input))
    if args.select:
        for label, cert, _ in fixture.extra_certificates:
            if label == args.select:
                return cert
        labels = ", ".join(repr(lab) for lab, _, _ in fixture.extra_certificates) or "none"
        raise UsageError(f"fixture {fixture.name} has no certificate {args.select!r}; available: {labels}")
    if fixture.certificate is None:
        raise UsageError(f"fixture {fixture.name} has no main certificate; use --select")
    return fixture.certificate


def cmd_check(args) -> tuple[Report, int]:
    _need_one_source(args)
    cert = _select_certificate(args)
    rep = Report()
    rep.add("command", "check")
    if isinstance(cert, Prop1Certificate):
        kind, result = "prop1", check_prop1(cert)
        gens = list(cert.elements())
    elif isinstance(cert, SVCertificate):
        kind, result = "sv", check_sv(cert)
        gens = list(cert.generators)
    else:
        kind, result = "gsv", check_gsv(cert)
        gens = list(cert.generators)
    rep.add("kind", kind, f"certificate kind: {kind}")
    rep.add("accepted", result.accepted, f"verdict: {'accepted' if result.accepted else 'rejected'}")
    if not result.accepted:
        trace = result.trace
        rep.add("failure", str(trace.failure_reason), f"reason: {trace.failure_reason}")
        if args.trace and trace.steps:
            rep.add("trace", [[s.variable, [str(m) for m in s.cancelled], s.next_part] for s in trace.steps],
                    "trace:\n" + trace.format(cert.ring.all_names))
        return rep, EXIT_REJECTED
    rep.add("emitted", [str(q) for q in result.emitted],
            "emitted:\n" + "\n".join(f"  q_{i} = {q}" for i, q in enumerate(result.emitted)))
    if isinstance(cert, GSVCertificate):
        rep.add("states", result.states)
    code = EXIT_OK
    if args.oracle:
        ideal = MonomialIdeal(gens[0].ring, gens)
        ok = _oracle(ideal, result.emitted, _field(args), rep)
        rep.add("oracle", ok, f"oracle: {'confirms radical equality' if ok else 'DISAGREES'}" if ok is not None else None)
        if ok is False:
            code = EXIT_ORACLE
    return rep, code


def cmd_search(args) -> tuple[Report, int]:
    ideal, _, fixture = _load_ideal(args)
    try:
        ideal = minimalize(ideal)
    except UnitIdealError as e:
        raise UsageError(str(e)) from None
    if not ideal.generators:
        raise UsageError("nothing to search: the ideal has no generators")
    out = run_search(ideal.generators, _config(args))
    rep = Report()
    rep.add("command", "search")
    rep.add("status", out.status, f"status: {out.status}")
    rep.add("nodes", out.nodes, f"nodes explored: {out.nodes}")
    if out.sizes_exhausted:
        rep.add("sizes_exhausted", list(out.sizes_exhausted),
                "no partition-shaped certificate of size " + ", ".join(map(str, out.sizes_exhausted)))
    if out.certificate is not None:
        rep.add("size", out.certificate.size, f"size: {out.certificate.size}")
        text = format_certificate(out.certificate)
        rep.add("certificate", text, text.rstrip("\n"))
    rep.add("elapsed_ms", round(out.elapsed_ms, 1))
    return rep, EXIT_BUDGET if out.status == BUDGET else EXIT_OK


def cmd_verify_identities(args) -> tuple[Report, int]:
    _need_one_source(args)
    fixture = _fixture(args)
    ids = list(fixture.identities) if fixture is not None else parse_identities(_read(args.input))
    if not ids:
        raise UsageError(f"fixture {fixture.name} has no identities")
    rep = Report()
    rep.add("command", "verify-identities")
    results = []
    for ident in ids:
        ok = ident.holds()
        results.append([ident.name, ok])
        suffix = f" (cleared by {ident.clear})" if ident.clear is not None else ""
        rep.say(f"{'PASS' if ok else 'FAIL'}  {ident.name}{suffix}")
    passed = sum(ok for _, ok in results)
    rep.add("results", results, f"{passed}/{len(results)} pass")
    return rep, EXIT_OK if passed == len(results) else EXIT_REJECTED


def cmd_fixtures(args) -> tuple[Report, int]:
    rep = Report()
    if args.action == "list":
        rep.add("fixtures", list(fx.FIXTURE_NAMES))
        for name in fx.FIXTURE_NAMES:
            extra = {"im": " (needs --m)", "ngon": " (needs --n)"}.get(name, "")
            rep.say(name + extra)
        return rep, EXIT_OK
    if not args.name:
        raise UsageError("fixtures dump needs a fixture name")
    try:
        f = fx.load_fixture(args.name, m=args.m, n=args.n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    sections = []
    if args.what in ("all", "complex") and f.complex is not None:
        sections.append(("complex", format_complex(f.complex)))
    if args.what in ("all", "ideal"):
        sections.append(("ideal", format_ideal(f.ideal)))
    if args.what in ("all", "candidates") and f.candidates:
        sections.append(("candidates", "\n".join([f.ring.header()] + [str(q) for q in f.candidates]) + "\n"))
    if args.what in ("all", "certificate") and f.certificate is not None:
        sections.append(("certificate", format_certificate(f.certificate)))
    if args.what in ("all", "certificate"):
        for label, cert, _ in f.extra_certificates:
            sections.append((f"certificate: {label}", format_certificate(cert)))
    if args.what in ("all", "identities") and f.identities:
        sections.append(("identities", format_identities(f.identities)))
    if not sections:
        raise UsageError(f"fixture {f.name} has no {args.what} data")
    rep.add("fixture", f.name)
    for key, text in sections:
        rep.add(key, text)
        if len(sections) > 1 or args.what == "all":
            rep.say(f"# --- {key}")
        rep.say(text.rstrip("\n"))
    return rep, EXIT_OK


# ------------------------------------------------------------------ parser

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ararank", description="Arithmetical-rank bounds and radical-generation certificates for squarefree monomial ideals.")
    sub = p.add_subparsers(dest="command", required=True)

    def source(sp, what: str):
        sp.add_argument("input", nargs="?", help=f"{what} file ('-' for stdin)")
        sp.add_argument("--fixture", help="built-in example, e.g. example1, im, ngon")
        sp.add_argument("--m", type=_positive, help="parameter of the im fixture")
        sp.add_argument("--n", type=_positive, help="parameter of the ngon fixture")
        sp.add_argument("--machine", action="store_true", help="print key<TAB>json lines")

    def budgets(sp):
        sp.add_argument("--max-parts", type=_positive, default=None)
        sp.add_argument("--node-budget", type=_positive, default=10 ** 7)
        sp.add_argument("--time-budget-ms", type=_positive, default=60_000)
        sp.add_argument("--parallel", action="store_true", help="one worker process per S_0 choice")

    a = sub.add_parser("analyze", help="heights, minimal primes and (with --search) arithmetical-rank bounds")
    source(a, "ideal or complex")
    budgets(a)
    a.add_argument("--search", action="store_true")
    a.add_argument("--oracle", action="store_true", help="cross-check generators by Groebner bases")
    a.add_argument("--field", help="oracle field: QQ, GF(p) or GF4")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check", help="check a certificate")
    source(c, "certificate")
    c.add_argument("--select", help="label of an auxiliary fixture certificate")
    c.add_argument("--oracle", action="store_true")
    c.add_argument("--trace", action="store_true", help="print the failing branch on rejection")
    c.add_argument("--field", help="oracle field: QQ, GF(p) or GF4")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("search", help="search for a small partition-shaped certificate")
    source(s, "ideal or complex")
    budgets(s)
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify-identities", help="check polynomial identities exactly")
    source(v, "identity")
    v.set_defaults(func=cmd_verify_identities)

    f = sub.add_parser("fixtures", help="list or dump built-in examples")
    f.add_argument("action", choices=["list", "dump"])
    f.add_argument("name", nargs="?")
    f.add_argument("--m", type=_positive)
    f.add_argument("--n", type=_positive)
    f.add_argument("--what", choices=["all", "complex", "ideal", "candidates", "certificate", "identities"], default="all")
    f.add_argument("--machine", action="store_true")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep, code = args.func(args)
    except (ParseError, UsageError, CertificateError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    out = rep.render_machine() if args.machine else rep.render_text()
    sys.stdout.write(out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

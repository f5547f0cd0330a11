"""Command line front end.

Exit codes: 0 = holds / valid / all checks passed, 1 = refuted or invalid,
2 = usage, parse or validation error, 3 = query exhausted its budget
(Unknown).  The distinction between 1 and 3 matters because the general
entailment question is only semi-decidable: scripts must be able to tell a
refutation from a search that gave up.

All randomized subcommands take --seed (default 2024, recorded in output).
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .entailment import (
    ConeOrderEntailment,
    IntervalOrderEntailment,
    RegularisedSearchEntailment,
    check_derived_lemmas,
    check_regular_axioms,
)
from .forcing import Budget, t_force_holds, u_force_holds
from .groups import ConeGroup, DivisibilityGroup
from .instances import (
    SUITES,
    DiscreteSampler,
    DivisibilitySampler,
    SemigroupSampler,
    discrete_group,
    divisibility_group,
    semigroup_group,
)
from .lgroup import lg_add, lg_join, lg_meet, lg_neg, lg_sub, phi, to_pair
from .regularise import l_holds, lcd_decide, prufer_check
from .systems import MinimalSystem, check_system_axioms
from .wire import (
    WireError,
    group_from_json,
    make_envelope,
    parse_query_file,
    subset_from_json,
    system_from_name,
    verdict_to_json,
    verify_envelope,
)

DEFAULT_SEED = 2024

EXIT_HOLDS = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3

_PRESETS = {
    "exa1": semigroup_group,
    "exa2": divisibility_group,
    "exa3": discrete_group,
}


def _emit(args, payload: dict, human_lines):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in human_lines:
            print(line)


def _verdict_exit(status: str) -> int:
    return {"holds": EXIT_HOLDS, "refuted": EXIT_REFUTED, "unknown": EXIT_UNKNOWN}[status]


def _load_json(path: str):
    data = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    return json.loads(data)


def _resolve_group(args):
    if args.preset:
        return _PRESETS[args.preset]()
    if args.group:
        return group_from_json(json.loads(args.group))
    raise WireError("need --preset or --group")


def cmd_example(args) -> int:
    report = SUITES[args.name]()
    lines = [f"suite {report.name}: {'ok' if report.ok else 'FAILED'}"]
    for r in report.results:
        mark = "pass" if r.passed else "FAIL"
        lines.append(f"  [{mark}] {r.name}" + (f"  ({r.detail})" if r.detail else ""))
    _emit(args, report.to_dict(), lines)
    return EXIT_HOLDS if report.ok else EXIT_REFUTED


def cmd_query(args) -> int:
    doc = _load_json(args.file)
    q = parse_query_file(doc)
    g, kind, budget = q["group"], q["kind"], q["budget"]
    system_name = q["system"]
    envelope = None

    if kind == "lcd":
        decision = lcd_decide(g, q["A"])
        verdict_status = "holds" if decision.positive else "refuted"
        payload = verdict_to_json(g, _wrap(decision, verdict_status), system_name)
        envelope = make_envelope(g, system_name, {"A": doc["query"]["A"]}, decision)
    elif kind == "prufer-check":
        S = system_from_name(system_name, g)
        ok = prufer_check(S, q["A"], q["B"])
        verdict_status = "holds" if ok else "refuted"
        payload = {"status": verdict_status}
        if ok:
            from .regularise import PruferCertificate

            envelope = make_envelope(g, system_name, {"A": doc["query"]["A"]},
                                     PruferCertificate(q["B"]))
    elif kind == "force":
        S = system_from_name(system_name, g)
        fn = t_force_holds if q["op"] == "T" else u_force_holds
        verdict = fn(S, q["x"], q["A"], q["target"], budget)
        verdict_status = verdict.status
        payload = verdict_to_json(g, verdict, system_name)
        if verdict.is_holds:
            query = {"A": doc["query"]["A"]}
            query.update({k: doc["query"][k] for k in ("b", "B") if k in doc["query"]})
            envelope = make_envelope(g, system_name, query, verdict.certificate)
    elif kind == "regularise":
        S = system_from_name(system_name, g)
        pool = None
        if q["pool_extras"]:
            from .regularise import default_pool

            pool = default_pool(g, q["A"], q["b"], extras=q["pool_extras"])
        verdict = l_holds(S, q["A"], q["b"], pool=pool, budget=budget)
        verdict_status = verdict.status
        payload = verdict_to_json(g, verdict, system_name)
        if verdict.is_holds:
            envelope = make_envelope(
                g, system_name,
                {"A": doc["query"]["A"], "b": doc["query"]["b"]},
                verdict.certificate,
            )
    else:  # entails
        verdict = _entails_backend(g, system_name, budget, q["pool_extras"]).entails(q["A"], q["B"])
        verdict_status = verdict.status
        payload = verdict_to_json(g, verdict, system_name)
        if verdict.certificate is not None and not isinstance(verdict.certificate, str):
            from .finsets import diff_set
            from .regularise import ConeDecision

            C = diff_set(g, q["A"], q["B"])
            query = {"A": [eljson(g, c) for c in C]}
            if not isinstance(verdict.certificate, ConeDecision):
                query["b"] = eljson(g, g.zero)
            envelope = make_envelope(g, system_name, query, verdict.certificate)
    if envelope is not None and args.cert_out:
        with open(args.cert_out, "w", encoding="utf-8") as fh:
            json.dump(envelope, fh, indent=2)
    lines = [f"verdict: {verdict_status}"]
    _emit(args, payload, lines)
    return _verdict_exit(verdict_status)


def eljson(g, el):
    from .wire import element_to_json

    return element_to_json(g, el)


def _wrap(decision, status):
    from .forcing import Verdict

    return Verdict(status, decision)


def _entails_backend(g, system_name, budget, pool_extras):
    if isinstance(g, ConeGroup):
        return ConeOrderEntailment(g)
    S = system_from_name(system_name, g)
    return RegularisedSearchEntailment(S, budget, pool_extras)


def cmd_verify(args) -> int:
    doc = _load_json(args.file)
    ok, message = verify_envelope(doc)
    payload = {"valid": ok, "message": message}
    _emit(args, payload, [message])
    return EXIT_HOLDS if ok else EXIT_REFUTED


def cmd_entails(args) -> int:
    g = _resolve_group(args)
    budget = Budget(k_max=args.budget_k, n_max=args.budget_n)
    extras = ()
    if args.pool:
        extras = tuple(
            subset_from_json(g, json.loads(args.pool), "pool")
        )
    backend = _entails_backend(g, args.system, budget, extras)
    A = subset_from_json(g, json.loads(args.A), "A")
    B = subset_from_json(g, json.loads(args.B), "B")
    verdict = backend.entails(A, B)
    payload = verdict_to_json(g, verdict, args.system)
    _emit(args, payload, [f"verdict: {verdict.status}"])
    return _verdict_exit(verdict.status)


_SAMPLERS = {
    "exa1": lambda g: SemigroupSampler(),
    "exa2": lambda g: DivisibilitySampler(g),
    "exa3": lambda g: DiscreteSampler(),
}


def cmd_axioms(args) -> int:
    g = _PRESETS[args.preset]()
    sampler = _SAMPLERS[args.preset](g)
    if args.suite == "systems":
        S = system_from_name("dedekind" if isinstance(g, DivisibilityGroup) else "sm", g)
        report = check_system_axioms(S, sampler, args.samples, args.seed)
    else:
        if isinstance(g, DivisibilityGroup):
            backend = RegularisedSearchEntailment(system_from_name("dedekind", g))
        elif args.preset == "exa3":
            backend = IntervalOrderEntailment(g)
        else:
            backend = ConeOrderEntailment(g)
        checker = check_regular_axioms if args.suite == "regular" else check_derived_lemmas
        report = checker(backend, sampler, args.samples, args.seed)
    lines = [f"{report.subject}: {'ok' if report.ok else 'VIOLATIONS'} (seed={report.seed})"]
    for law in report.laws:
        lines.append(
            f"  {law.name}: tested={law.tested} vacuous={law.vacuous}"
            f" unresolved={law.unresolved} violations={len(law.violations)}"
        )
    _emit(args, report.to_dict(), lines)
    return EXIT_HOLDS if report.ok else EXIT_REFUTED


_TOKEN = re.compile(r"\s*(phi|meet|join|neg|[(),+-]|-?\d+)")


def _parse_lg_expr(text: str, g):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise WireError(f"bad expression near {text[pos:pos + 10]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append("$")
    idx = [0]

    def peek():
        return tokens[idx[0]]

    def take(expected=None):
        tok = tokens[idx[0]]
        if expected is not None and tok != expected:
            raise WireError(f"expected {expected!r}, found {tok!r}")
        idx[0] += 1
        return tok

    def parse_expr():
        e = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            e = lg_add(g, e, rhs) if op == "+" else lg_sub(g, e, rhs)
        return e

    def parse_term():
        tok = take()
        if tok == "phi":
            take("(")
            n = int(take())
            take(")")
            return phi(g, n)
        if tok in ("meet", "join"):
            take("(")
            a = parse_expr()
            take(",")
            b = parse_expr()
            take(")")
            return lg_meet(g, a, b) if tok == "meet" else lg_join(g, a, b)
        if tok == "neg":
            take("(")
            e = parse_expr()
            take(")")
            return lg_neg(e)
        if tok == "(":
            e = parse_expr()
            take(")")
            return e
        raise WireError(f"unexpected token {tok!r}")

    out = parse_expr()
    take("$")
    return out


def cmd_lgroup(args) -> int:
    g = _PRESETS[args.preset]()
    if isinstance(g, DivisibilityGroup):
        raise WireError("lgroup eval supports the integer presets (exa1, exa3)")
    e = _parse_lg_expr(args.expr, g)
    payload = {
        "pos": [eljson(g, a) for a in e.pos],
        "neg": [eljson(g, a) for a in e.neg],
    }
    lines = []
    if args.preset == "exa3":
        pair = to_pair(e)
        payload["pair"] = list(pair)
        lines.append(f"pair: {pair}")
    lines.append(f"element: {e.pos!r} - {e.neg!r}")
    _emit(args, payload, lines)
    return EXIT_HOLDS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regentail",
        description="entailment relations on preordered commutative groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("example", help="run a shipped example suite")
    p.add_argument("name", choices=sorted(SUITES))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("query", help="run a query file (JSON; '-' for stdin)")
    p.add_argument("file")
    p.add_argument("--cert-out", help="write the certificate envelope here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="replay a certificate envelope")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("entails", help="evaluate A |- B")
    p.add_argument("--preset", choices=sorted(_PRESETS))
    p.add_argument("--group", help="group descriptor as JSON")
    p.add_argument("--system", default="sm", choices=["sm", "dedekind"])
    p.add_argument("-A", required=True, help="JSON list of elements")
    p.add_argument("-B", required=True, help="JSON list of elements")
    p.add_argument("--budget-k", type=int, default=128)
    p.add_argument("--budget-n", type=int, default=2)
    p.add_argument("--pool", help="JSON list of extra forcing elements")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_entails)

    p = sub.add_parser("axioms", help="run a sampled axiom suite")
    p.add_argument("--preset", required=True, choices=sorted(_PRESETS))
    p.add_argument("--suite", default="regular", choices=["regular", "lemmas", "systems"])
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("lgroup", help="evaluate an l-group expression over phi(integers)")
    p.add_argument("--preset", default="exa3", choices=["exa1", "exa3"])
    p.add_argument("expr", help="e.g. 'meet(phi(1), phi(4)) + neg(phi(2))'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lgroup)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (WireError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

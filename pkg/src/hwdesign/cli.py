"""Command line: generate, verify, table, search, kts.

Summary lines go to stdout, reports and diagnostics to stderr.  When a
certificate itself is written to stdout the summary moves to stderr.

Exit codes: 0 success / accepted, 1 rejected (or search inconclusive),
2 malformed input or usage error, 3 infeasible parameters, 4 open case.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import certificate, verifier
from .assembler import Infeasible, OpenCase, assemble_hw, assignment_plan, feasible_r, published_case_row
from .core import DesignError
from .kirkman import KirkmanSystem, kirkman_triple_system

EXIT_OK, EXIT_REJECTED, EXIT_MALFORMED, EXIT_INFEASIBLE, EXIT_OPEN = 0, 1, 2, 3, 4


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_generate(args) -> int:
    n, r = args.n, args.r
    try:
        f = assemble_hw(n, r)
    except OpenCase as exc:
        _err(f"open case: {exc}; known exceptions are n=21 with r in {{2,4,6}}")
        return EXIT_OPEN
    except Infeasible as exc:
        _err(f"infeasible: {exc}")
        return EXIT_INFEASIBLE
    text = certificate.to_text(f) if args.format == "text" else certificate.dumps(f)
    summary = (
        f"HW({n};{f.declared_r},{f.declared_s};3,7) OK, r={f.declared_r} s={f.declared_s}, "
        f"factors={len(f.factors)}, edges={n * (n - 1) // 2}"
    )
    if args.out and args.out != "-":
        _write(args.out, text)
        print(summary)
    else:
        # certificate owns stdout
        sys.stdout.write(text)
        _err(summary)
    return EXIT_OK


def _load_json(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return json.loads(text)


def cmd_verify(args) -> int:
    try:
        data = _load_json(args.input)
    except (OSError, json.JSONDecodeError) as exc:
        _err(f"malformed input: {exc}")
        return EXIT_MALFORMED
    if args.kts or (isinstance(data, dict) and "classes" in data and "factors" not in data):
        report = verifier.verify_kts(data)
    else:
        try:
            verifier.normalize(data)
        except verifier.MalformedCertificate as exc:
            _err(f"malformed input: {exc}")
            return EXIT_MALFORMED
        report = verifier.verify(data, args.n, args.r, args.s)
    if any(v.check == "malformed" for v in report.violations):
        _err(report.summary())
        return EXIT_MALFORMED
    _err(report.summary())
    print(f"{report.subject} {'ACCEPTED' if report.accepted else 'REJECTED'}")
    return EXIT_OK if report.accepted else EXIT_REJECTED


def table_rows(n: int) -> list[str]:
    rows = []
    for r in sorted(feasible_r(n)):
        plan = assignment_plan(n, r)
        line = (
            f"r={r} a={plan.a} b={plan.b} γ={plan.gamma} "
            f"α=[{','.join(map(str, plan.alphas))}] checksum={plan.gamma + sum(plan.alphas)}"
        )
        if plan.repaired:
            published = published_case_row(plan.t, r)
            line += f" (repaired; published γ={published[0]} sums to {published[0] + sum(published[1])})"
        rows.append(line)
    return rows


def cmd_table(args) -> int:
    rows = table_rows(args.n)
    if not rows:
        _err(f"n={args.n} is not 21 mod 42: no feasible r")
        return EXIT_INFEASIBLE
    for row in rows:
        print(row)
    return EXIT_OK


def cmd_search(args) -> int:
    from . import search
    from .tripartite import starter_to_json

    cfg = search.SearchConfig(seed=args.seed, node_cap=args.node_cap, budget_seconds=args.budget)
    try:
        if args.target == "starter-c7":
            res = search.starter_c7_search(cfg)
            body = starter_to_json(res.value) if res.found else None
        elif args.target == "kts":
            res = search.resolvable_sts_search(args.v, cfg)
            body = res.value.to_json() if res.found else None
        elif args.target == "open21":
            res = search.open21_search(args.r, cfg)
            body = certificate.dumps(res.value) if res.found else None
        elif args.target == "tripartite-even":
            res = search.tripartite_even_probe(args.alpha, cfg)
            body = certificate.dumps(res.value) if res.found else None
        else:
            res = search.tripartite_c7_fallback(cfg)
            body = certificate.dumps(res.value) if res.found else None
    except DesignError as exc:
        _err(f"bad search request: {exc}")
        return EXIT_MALFORMED
    if args.out:
        if body is not None:
            _write(args.out, body)
        _write(args.out + ".sidecar.json", res.sidecar_json())
    elif body is not None:
        sys.stdout.write(body)
    _err(res.sidecar_json().rstrip())
    print(f"{res.target}: {res.outcome} after {res.nodes_expanded} nodes (seed={res.seed})")
    return EXIT_OK if res.found else EXIT_REJECTED


def cmd_kts(args) -> int:
    try:
        if args.input:
            kts = KirkmanSystem.from_dict(_load_json(args.input))
        else:
            kts = kirkman_triple_system(args.v, seed=args.seed)
    except (OSError, json.JSONDecodeError, DesignError) as exc:
        _err(str(exc))
        return EXIT_MALFORMED
    report = verifier.verify_kts(kts)
    if not report.accepted:
        _err(report.summary())
        return EXIT_REJECTED
    _write(args.out, kts.to_json())
    _err(report.summary())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hwdesign", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build and verify HW(n; r, s; 3, 7)")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--format", choices=("json", "text"), default="json")
    g.add_argument("--out", help="output path; without it the certificate goes to stdout")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check a certificate or KTS file")
    v.add_argument("input", help="path, or - for stdin")
    v.add_argument("--kts", action="store_true")
    v.add_argument("--n", type=int)
    v.add_argument("--r", type=int)
    v.add_argument("--s", type=int)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="list the parameter plan for every feasible r")
    t.add_argument("--n", type=int, required=True)
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("search", help="seeded, budgeted searches")
    s.add_argument("target", choices=("starter-c7", "kts", "open21", "tripartite-even", "tripartite-c7"))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=float, help="seconds, converted to a node cap")
    s.add_argument("--node-cap", type=int)
    s.add_argument("--v", type=int, default=9)
    s.add_argument("--r", type=int, default=2)
    s.add_argument("--alpha", type=int, default=2)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    k = sub.add_parser("kts", help="export or re-check a Kirkman triple system")
    k.add_argument("--v", type=int, default=9)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--in", dest="input")
    k.add_argument("--out")
    k.set_defaults(func=cmd_kts)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

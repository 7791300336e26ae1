"""Command-line interface: ``lcarev <command> ...``.

Exit codes: 0 ok, 2 usage, 3 bad input, 4 domain error, 5 cap exceeded,
6 factorization timeout, 7 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import errors
from .bench import DEFAULT_BUDGET as BENCH_BUDGET
from .bench import METHODS, default_suite, format_table, load_suite, run_suite
from .gen import G_MODES, GEN_DEGREE_CAP, generate_polynomials
from .gf2poly import parse_poly
from .intfactor import DEFAULT_BUDGET, factor_int, set_default_cache
from .oracle import dump_dfa, reversible_residues_dfa, reversible_residues_matrix
from .period import PeriodTable, build_period_table, poly_period, rule_period
from .report import ReversibilityReport
from .rule import Configuration, Rule, evolve, normalize_rule, parse_rule, unilateral_reversibility
from .sbp import is_reversible, reversible_residues_sbp


def _emit(args, doc: dict, text: str) -> None:
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(text)


def _rule(args, text: str) -> Rule:
    return parse_rule(text, args.left)


# -- commands ------------------------------------------------------------------

def cmd_period(args) -> int:
    if (args.rule is None) == (args.poly is None):
        raise errors.InputError("give exactly one of --rule or --poly")
    if args.rule is not None:
        r = _rule(args, args.rule)
        res = rule_period(r, cap=args.cap, budget=args.budget)
        head = {"rule": r.coeffs, "left": r.left}
    else:
        f = parse_poly(args.poly)
        res = poly_period(f, cap=args.cap, budget=args.budget)
        head = {"poly": f.to_bits(), "sparse": f.to_sparse()}
    doc = {**head, **res.to_json()}
    lines = [f"period {res.period}"]
    for g, m, p in res.factor_periods:
        exp = f"^{m}" if m > 1 else ""
        lines.append(f"  ({g.to_sparse()}){exp}  period {p}")
    if res.power_part > 1:
        lines.append(f"  power-of-two part {res.power_part}")
    _emit(args, doc, "\n".join(lines))
    return 0


def _unilateral_report(r: Rule) -> ReversibilityReport:
    return ReversibilityReport(1, frozenset({0}) if unilateral_reversibility(r) else frozenset(), r)


def cmd_residues(args) -> int:
    r = _rule(args, args.rule)
    norm, shift = normalize_rule(r)
    if not norm.is_bilateral():
        rep = _unilateral_report(norm)
    elif args.method == "sbp":
        rep = reversible_residues_sbp(norm, max_steps=args.max_steps, trace=args.trace)
    elif args.method == "dfa":
        rep = reversible_residues_dfa(norm, max_steps=args.max_steps)
    else:
        p = rule_period(norm, budget=args.budget).period
        flags = reversible_residues_matrix(norm, p)
        rep = ReversibilityReport(p, frozenset(n % p for n in range(1, p + 1) if flags[n - 1]), norm)
    if args.emit_dfa:
        dump_dfa(norm, args.emit_dfa)
    doc = {**rep.to_json(), "input": r.coeffs, "input_left": r.left, "shift": shift, "method": args.method}
    if not rep.residues:
        text = "never reversible"
    elif rep.period == 1:
        text = "reversible for every n"
    else:
        text = rep.describe()
    _emit(args, doc, text)
    return 0


def cmd_check(args) -> int:
    r = _rule(args, args.rule)
    ok = is_reversible(r, args.n)
    doc = {"rule": r.coeffs, "left": r.left, "n": args.n, "reversible": ok}
    _emit(args, doc, "reversible" if ok else "irreversible")
    return 0


def cmd_generate(args) -> int:
    table = PeriodTable.load(args.period_table) if args.period_table else None
    out = generate_polynomials(
        args.T,
        limit=args.limit,
        g_mode=args.g_mode,
        complete=args.complete,
        max_degree=args.max_degree,
        all_splits=args.all_splits,
        table=table,
    )
    lines = [f"{f.to_bits():>20}  {r.coeffs} (left={r.left})  {f.to_sparse()}" for f, r in zip(out.rule_polys, out.rules)]
    g = ", ".join(f"g({m})={v}" for m, v in out.g_values) or "none"
    lines.append(f"{len(out.polynomials)} polynomials; lower bound {out.lower_bound} ({g})")
    if out.truncated:
        lines.append(f"truncated at --limit {args.limit}")
    _emit(args, out.to_json(), "\n".join(lines))
    return 0


def cmd_factor(args) -> int:
    fi = factor_int(args.N, budget=args.budget)
    doc = {"value": str(fi.value), "factors": [[str(p), e] for p, e in fi.factors]}
    _emit(args, doc, f"{fi.value} = {fi}")
    return 0


def cmd_table(args) -> int:
    table = build_period_table(args.max_degree, args.period_table)
    rows = table.to_json()
    text = "\n".join(f"{row['degree']:>3}  {row['poly']:<{args.max_degree + 1}}  {row['period']}" for row in rows)
    _emit(args, {"entries": rows}, text)
    return 0


def cmd_bench(args) -> int:
    methods = args.methods.split(",") if args.methods else None
    if methods and set(methods) - set(METHODS):
        raise errors.InputError(f"methods must be among {', '.join(METHODS)}")
    if args.suite:
        suite = load_suite(args.suite)
        if methods:
            suite = [(r, methods) for r, _ in suite]
    else:
        suite = default_suite(methods) if methods else default_suite()
    budget = args.budget if args.budget is not None else BENCH_BUDGET
    records = run_suite(suite, budget=budget, repeats=args.repeats)
    _emit(args, {"records": [rec.to_json() for rec in records]}, format_table(records))
    return 0


def cmd_simulate(args) -> int:
    r = _rule(args, args.rule)
    c = Configuration.parse(args.initial)
    if args.n is not None and args.n != c.n:
        raise errors.InputError(f"initial configuration has {c.n} cells, --n says {args.n}")
    trace = evolve(r, c, args.steps)
    _emit(args, {"rule": r.coeffs, "left": r.left, "trace": [str(x) for x in trace]}, "\n".join(map(str, trace)))
    return 0


# -- parser --------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--left", type=int, default=None, help="rL; default floor((m-1)/2)")
    p.add_argument("--factor-cache", metavar="FILE", help="extra factor cache (JSON)")
    p.add_argument("--period-table", metavar="FILE", help="period table cache (JSON)")
    p.add_argument("--budget", type=float, default=None, metavar="SECONDS", help="time budget")
    p.add_argument("--all-splits", action="store_true", help="generate: emit every bilateral split")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="lcarev", description="Reversibility of linear cellular automata over GF(2).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("period", parents=[common], help="period of a rule or polynomial")
    p.add_argument("--rule")
    p.add_argument("--poly")
    p.add_argument("--cap", type=int, default=64, help="degree cap")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("residues", parents=[common], help="reversible residues of n")
    p.add_argument("rule")
    p.add_argument("--method", choices=["sbp", "dfa", "matrix"], default="sbp")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--trace", metavar="FILE", help="SBP steps as JSON lines")
    p.add_argument("--emit-dfa", metavar="FILE", help="dump the DFA node cycle")
    p.set_defaults(func=cmd_residues)

    p = sub.add_parser("check", parents=[common], help="is the n-cell automaton reversible")
    p.add_argument("rule")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("generate", parents=[common], help="rules with a given period")
    p.add_argument("T", type=int)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--g-mode", choices=list(G_MODES), default="exact", help="single (alias paper): one irreducible per prime power, g = 1")
    p.add_argument("--complete", action="store_true", help="exhaustive search up to --max-degree")
    p.add_argument("--max-degree", type=int, default=GEN_DEGREE_CAP)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("factor", parents=[common], help="factor an integer")
    p.add_argument("N", type=int)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("table", parents=[common], help="irreducible polynomials with periods")
    p.add_argument("--max-degree", type=int, default=10)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("bench", parents=[common], help="time the period methods")
    p.add_argument("suite", nargs="?", help="JSON list of {rule, left?, methods[]}")
    p.add_argument("--methods", help=f"comma list from {','.join(METHODS)}")
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("simulate", parents=[common], help="evolve a configuration")
    p.add_argument("rule")
    p.add_argument("initial", help="cells s_1..s_n")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return errors.EXIT_USAGE if exc.code else errors.EXIT_OK
    if args.factor_cache:
        set_default_cache(args.factor_cache)
    if args.func is not cmd_bench and args.budget is None:
        args.budget = DEFAULT_BUDGET
    try:
        return args.func(args)
    except errors.LcaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return errors.EXIT_INPUT
    except Exception as exc:  # pragma: no cover - last resort
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return errors.EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

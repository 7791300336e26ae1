"""Timing harness for the period and reversibility methods.

Each (rule, method) cell runs in a child process: one warm-up run, then the
median of ``repeats`` timed runs.  A run that exceeds the budget kills the
child and the cell is reported as a timeout; the rest of the suite goes on.
"""

from __future__ import annotations

import json
import multiprocessing as mp
import statistics
import time
from dataclasses import dataclass

from .oracle import det_gf2, dfa_period, transition_matrix
from .period import rule_period
from .rule import Rule, normalize_rule, parse_rule
from .sbp import reversible_residues_sbp

METHODS = ("TMS", "DFA", "PP", "SBP")
DEFAULT_METHODS = ("TMS", "DFA", "PP")
DEFAULT_BUDGET = 10.0

# default suite: odd sizes 5..27, each with a primitive polynomial (period 2^(m-1) - 1)
PRIMITIVE_SUITE = [
    "10011",
    "1000011",
    "101100011",
    "10000001001",
    "1000010011001",
    "101100000000011",
    "10000000000101101",
    "1000000000010000001",
    "100000000000000001001",
    "10000000000000000000011",
    "1000000000000000000011011",
    "100000000000000000110000011",
]


@dataclass(frozen=True)
class BenchRecord:
    method: str
    rule: str
    left: int
    size: int
    elapsed: float | None  # median seconds, None on timeout
    outcome: str | None
    timeout: bool

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "rule": self.rule,
            "left": self.left,
            "size": self.size,
            "elapsed": self.elapsed,
            "outcome": self.outcome,
            "timeout": self.timeout,
        }


def det_sequence_period(r: Rule) -> int:
    """Least period of the sequence det M_1, det M_2, ... by direct scanning.

    The flags depend only on x^n mod f with deg f = d, so the sequence has a
    period P <= 2^d - 1.  A candidate p that holds over N >= p + 2^d - 1
    terms agrees with P on a long enough stretch to be a true period.
    """
    d = r.left + r.right
    seq: list[int] = []
    alive: list[int] = []  # candidate periods still consistent
    n = 0
    while True:
        n += 1
        seq.append(det_gf2(transition_matrix(r, n)))
        alive.append(n)  # period n is trivially consistent so far
        alive = [p for p in alive if p >= n or seq[n - 1] == seq[n - 1 - p]]
        for p in alive:
            if n >= p + (1 << d) - 1:
                return p


def _run_method(method: str, r: Rule):
    if method == "PP":
        return str(rule_period(r).period)
    if method == "DFA":
        return str(dfa_period(r))
    if method == "TMS":
        return str(det_sequence_period(r))
    if method == "SBP":
        return reversible_residues_sbp(r).describe()
    raise ValueError(f"unknown method {method!r}")


def _child(method: str, coeffs: str, left: int, runs: int, conn) -> None:
    r = Rule(coeffs, left)
    try:
        for _ in range(runs):
            t0 = time.perf_counter()
            out = _run_method(method, r)
            conn.send(("ok", time.perf_counter() - t0, out))
    except Exception as exc:  # reported to the parent as data
        conn.send(("error", 0.0, f"{type(exc).__name__}: {exc}"))
    finally:
        conn.close()


def run_cell(r: Rule, method: str, budget: float = DEFAULT_BUDGET, repeats: int = 3) -> BenchRecord:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    ctx = mp.get_context("fork")
    parent, child = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_child, args=(method, r.coeffs, r.left, repeats + 1, child), daemon=True)
    proc.start()
    child.close()
    times: list[float] = []
    outcome = None
    timed_out = False
    try:
        for i in range(repeats + 1):
            if not parent.poll(budget):
                timed_out = True
                break
            status, elapsed, out = parent.recv()
            if status == "error":
                outcome = out
                break
            if elapsed > budget:
                timed_out = True
                break
            outcome = out
            if i > 0:  # run 0 is the warm-up
                times.append(elapsed)
    except EOFError:
        outcome = outcome or "worker died"
    finally:
        if proc.is_alive():
            proc.terminate()
        proc.join()
        parent.close()
    if timed_out:
        return BenchRecord(method, r.coeffs, r.left, r.size, None, None, True)
    elapsed = statistics.median(times) if times else None
    return BenchRecord(method, r.coeffs, r.left, r.size, elapsed, outcome, False)


def load_suite(path) -> list[tuple[Rule, list[str]]]:
    """JSON list of {"rule": "...", "left": k?, "methods": [...]}."""
    with open(path) as fh:
        items = json.load(fh)
    out = []
    for item in items:
        r = parse_rule(item["rule"], item.get("left"))
        methods = list(item.get("methods") or DEFAULT_METHODS)
        bad = set(methods) - set(METHODS)
        if bad:
            raise ValueError(f"unknown methods {sorted(bad)}")
        out.append((r, methods))
    return out


def default_suite(methods=DEFAULT_METHODS) -> list[tuple[Rule, list[str]]]:
    return [(parse_rule(s), list(methods)) for s in PRIMITIVE_SUITE]


def run_suite(suite, budget: float = DEFAULT_BUDGET, repeats: int = 3, progress=None) -> list[BenchRecord]:
    """Cells run one at a time so each timing has the machine to itself."""
    records = []
    for r, methods in suite:
        norm, _ = normalize_rule(r)
        for m in methods:
            rec = run_cell(norm, m, budget=budget, repeats=repeats)
            records.append(rec)
            if progress is not None:
                progress(rec)
    return records


def format_table(records: list[BenchRecord]) -> str:
    """Size, rule, then one column per method in first-seen order."""
    methods: list[str] = []
    rows: dict[tuple[str, int], dict[str, BenchRecord]] = {}
    for rec in records:
        if rec.method not in methods:
            methods.append(rec.method)
        rows.setdefault((rec.rule, rec.left), {})[rec.method] = rec
    width = max([len("Linear Rule")] + [len(rule) for rule, _ in rows])
    head = f"{'Size':>4}  {'Linear Rule':<{width}}" + "".join(f"  {m:>10}" for m in methods)
    lines = [head, "-" * len(head)]
    for (rule, _), cells in rows.items():
        line = f"{len(rule):>4}  {rule:<{width}}"
        for m in methods:
            rec = cells.get(m)
            if rec is None:
                cell = "-"
            elif rec.timeout:
                cell = "Timeout"
            elif rec.elapsed is None:
                cell = "error"
            else:
                cell = f"{rec.elapsed:.4f}s"
            line += f"  {cell:>10}"
        lines.append(line)
    return "\n".join(lines)

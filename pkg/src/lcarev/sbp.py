"""Standard-basis-postfix (SBP) reversibility check.

Only the rR tuples whose initial postfixes are the unit vectors are tracked.
Every other tuple of a DFA node is the same XOR combination of these rows at
every step, so a node has pairwise distinct postfixes exactly when the rR row
postfixes are linearly independent.  Space is O(rR * (rL + rR)) bits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import _kernels
from .errors import CapExceeded, CycleMismatch
from .oracle import coef_mask, edge_bit, require_bilateral
from .period import rule_period
from .report import INITIAL_RESIDUE, ReversibilityReport
from .rule import Rule, normalize_rule, unilateral_reversibility

# point queries walk at most this many edges before switching to matrix powers
WALK_LIMIT = 1 << 12

__all__ = [
    "ReversibilityReport",
    "SubsetNode",
    "initial_subset",
    "step_subset",
    "subset_rank",
    "advance_subset",
    "reversible_residues_sbp",
    "is_reversible",
]


@dataclass(frozen=True)
class SubsetNode:
    rows: tuple[int, ...]
    step_index: int
    left: int
    right: int

    def postfixes(self) -> list[int]:
        mask = (1 << self.right) - 1
        return [t & mask for t in self.rows]

    def row_strings(self) -> list[str]:
        w = self.left + self.right
        return [format(t, f"0{w}b") for t in self.rows]


def initial_subset(left: int, right: int) -> SubsetNode:
    """Row j: zero prefix, postfix with only bit j set."""
    if left < 1 or right < 1:
        raise ValueError("initial_subset needs rL >= 1 and rR >= 1")
    return SubsetNode(tuple(1 << j for j in range(right)), 0, left, right)


def step_subset(s: SubsetNode, r: Rule) -> SubsetNode:
    require_bilateral(r)
    mask = coef_mask(r)
    full = (1 << (r.left + r.right)) - 1
    rows = tuple(((t << 1) | edge_bit(t, mask)) & full for t in s.rows)
    return SubsetNode(rows, s.step_index + 1, s.left, s.right)


def subset_rank(s: SubsetNode) -> int:
    return _kernels.rank(s.postfixes(), s.right)


def _edge_map(r: Rule) -> list[int]:
    """Images of the unit tuples under one 0-labelled edge."""
    mask = coef_mask(r)
    d = r.left + r.right
    full = (1 << d) - 1
    return [((1 << (b + 1)) | edge_bit(1 << b, mask)) & full for b in range(d)]


def _apply(m: list[int], v: int) -> int:
    out = 0
    b = 0
    while v:
        if v & 1:
            out ^= m[b]
        v >>= 1
        b += 1
    return out


def _compose(outer: list[int], inner: list[int]) -> list[int]:
    return [_apply(outer, col) for col in inner]


def advance_subset(s: SubsetNode, r: Rule, k: int) -> SubsetNode:
    """The subset k edges further on; long jumps use square-and-multiply."""
    require_bilateral(r)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k <= WALK_LIMIT:
        _, rows = _kernels.sbp_scan(coef_mask(r), r.left + r.right, r.right, s.rows, k)
        return SubsetNode(tuple(rows), s.step_index + k, s.left, s.right)
    d = r.left + r.right
    power = [1 << b for b in range(d)]
    base = _edge_map(r)
    e = k
    while e:
        if e & 1:
            power = _compose(base, power)
        e >>= 1
        if e:
            base = _compose(base, base)
    rows = tuple(_apply(power, t) for t in s.rows)
    return SubsetNode(rows, s.step_index + k, s.left, s.right)


def reversible_residues_sbp(
    r: Rule,
    max_steps: int | None = None,
    trace=None,
    period: int | None = None,
) -> ReversibilityReport:
    """All reversible residues of n within one period.

    ``max_steps`` bounds the walk (CapExceeded if the period is longer; use
    :func:`is_reversible` for single n then).  ``trace`` may be a path or a
    text file object; each step is written as one JSON line.
    """
    require_bilateral(r)
    if period is None:
        period = rule_period(r).period
    if max_steps is not None and period > max_steps:
        raise CapExceeded(f"period {period} exceeds the step budget {max_steps}")
    start = initial_subset(r.left, r.right)
    if trace is not None:
        flags, final = _walk_traced(start, r, period, trace)
    else:
        flags, final = _kernels.sbp_scan(coef_mask(r), r.left + r.right, r.right, start.rows, period)
    if tuple(final) != start.rows:
        raise CycleMismatch(f"subset of {r} did not return after {period} steps")
    residues = frozenset((INITIAL_RESIDUE + k) % period for k in range(period) if flags[k])
    return ReversibilityReport(period, residues, r)


def _walk_traced(start: SubsetNode, r: Rule, period: int, trace):
    own = isinstance(trace, (str, bytes)) or hasattr(trace, "__fspath__")
    fh = open(trace, "w") if own else trace
    try:
        s = start
        flags = bytearray(period)
        for k in range(period):
            rk = subset_rank(s)
            flags[k] = rk == r.right
            fh.write(json.dumps({"step": k, "postfixes": [format(p, f"0{r.right}b") for p in s.postfixes()], "rank": rk}) + "\n")
            s = step_subset(s, r)
        return bytes(flags), s.rows
    finally:
        if own:
            fh.close()


def is_reversible(r: Rule, n: int, period: int | None = None) -> bool:
    """Decide reversibility of the n-cell automaton.

    Unilateral rules use the lambda_0 criterion; bilateral ones jump the SBP
    subset to residue n mod period and test its rank.
    """
    if n < 1:
        raise ValueError("cell count must be positive")
    norm, _ = normalize_rule(r)
    if not norm.is_bilateral():
        return unilateral_reversibility(norm)
    if period is None:
        period = rule_period(norm).period
    k = (n - INITIAL_RESIDUE) % period
    s = advance_subset(initial_subset(norm.left, norm.right), norm, k)
    return subset_rank(s) == norm.right

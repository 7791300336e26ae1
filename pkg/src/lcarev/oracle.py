"""Reference implementations used to validate the fast algorithms.

* The de Bruijn style DFA: nodes of 2^rR tuples advanced along 0-labelled
  edges until the initial node comes back.
* The transition matrix M_n and its determinant over GF(2).

Both are exponential or polynomial-but-slow by design; keep them to small
rules and small n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator

from . import _kernels
from .errors import CapExceeded, NotNormalized, ShapeError, Singular
from .report import INITIAL_RESIDUE, ReversibilityReport
from .rule import Rule

DFA_CAP = 20


@dataclass(frozen=True)
class Node:
    """2^rR tuples; tuple k is an int with position 0 in its top bit."""

    tuples: tuple[int, ...]
    left: int
    right: int

    @property
    def width(self) -> int:
        return self.left + self.right

    def tuple_strings(self) -> list[str]:
        return [format(t, f"0{self.width}b") for t in self.tuples]

    def prefix(self, i: int) -> int:
        return self.tuples[i] >> self.right

    def postfix(self, i: int) -> int:
        return self.tuples[i] & ((1 << self.right) - 1)

    def postfixes(self) -> list[int]:
        mask = (1 << self.right) - 1
        return [t & mask for t in self.tuples]


def coef_mask(r: Rule) -> int:
    """Bit mask of lambda_{-rL} .. lambda_{rR-1} in tuple layout."""
    return int(r.coeffs[:-1], 2) if r.size > 1 else 0


def require_bilateral(r: Rule) -> None:
    if not r.is_normalized():
        raise NotNormalized(f"{r} has a zero border coefficient")
    if not r.is_bilateral():
        raise NotNormalized(f"{r} is unilateral; the DFA needs rL > 0 and rR > 0")


def initial_node(left: int, right: int, cap: int = DFA_CAP) -> Node:
    if left < 1 or right < 1:
        raise ValueError("initial_node needs rL >= 1 and rR >= 1")
    if right > cap:
        raise CapExceeded(f"rR={right} above DFA cap {cap}")
    return Node(tuple(range(1 << right)), left, right)


def edge_bit(t: int, mask: int) -> int:
    """New rightmost cell forced by a 0 output (lambda_rR = 1)."""
    return bin(t & mask).count("1") & 1


def next_node(node: Node, r: Rule) -> Node:
    require_bilateral(r)
    if (r.left, r.right) != (node.left, node.right):
        raise ValueError("node geometry does not match the rule split")
    mask = coef_mask(r)
    full = (1 << node.width) - 1
    return Node(
        tuple(((t << 1) | edge_bit(t, mask)) & full for t in node.tuples),
        node.left,
        node.right,
    )


def node_reversible(node: Node) -> bool:
    post = node.postfixes()
    return len(set(post)) == len(post)


def dfa_nodes(r: Rule, cap: int = DFA_CAP) -> Iterator[Node]:
    """Nodes of the cycle, starting with the initial node (pure Python)."""
    require_bilateral(r)
    start = initial_node(r.left, r.right, cap)
    node = start
    while True:
        yield node
        node = next_node(node, r)
        if node == start:
            return


def dfa_period(r: Rule, cap: int = DFA_CAP, max_steps: int | None = None) -> int:
    require_bilateral(r)
    if r.right > cap:
        raise CapExceeded(f"rR={r.right} above DFA cap {cap}")
    limit = max_steps if max_steps is not None else 1 << (r.left + r.right)
    period, _ = _kernels.dfa_scan(coef_mask(r), r.left + r.right, r.right, limit, False)
    if period < 0:
        raise CapExceeded(f"DFA did not close within {limit} edges")
    return period


def reversible_residues_dfa(r: Rule, cap: int = DFA_CAP, max_steps: int | None = None) -> ReversibilityReport:
    require_bilateral(r)
    if r.right > cap:
        raise CapExceeded(f"rR={r.right} above DFA cap {cap}")
    limit = max_steps if max_steps is not None else 1 << (r.left + r.right)
    period, steps = _kernels.dfa_scan(coef_mask(r), r.left + r.right, r.right, limit, True)
    if period < 0:
        raise CapExceeded(f"DFA did not close within {limit} edges")
    residues = frozenset((INITIAL_RESIDUE + j) % period for j in steps)
    return ReversibilityReport(period, residues, r)


def dump_dfa(r: Rule, path, cap: int = DFA_CAP) -> None:
    """Write the node cycle as JSON: one entry per node with its tuples."""
    nodes = [
        {"index": j, "reversible": node_reversible(node), "tuples": node.tuple_strings()}
        for j, node in enumerate(dfa_nodes(r, cap))
    ]
    doc = {"rule": r.coeffs, "left": r.left, "period": len(nodes), "nodes": nodes}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


# -- transition matrix ---------------------------------------------------------

@dataclass(frozen=True)
class BitMatrix:
    """Row-major GF(2) matrix; entry (i, j) is bit j of ``rows[i]``."""

    rows: tuple[int, ...]
    ncols: int

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def from_lists(cls, data) -> "BitMatrix":
        ncols = len(data[0]) if data else 0
        return cls(tuple(sum(int(b) << j for j, b in enumerate(row)) for row in data), ncols)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def apply(self, v: int) -> int:
        """Matrix times column vector (bit j of v is component j)."""
        out = 0
        for i, row in enumerate(self.rows):
            if bin(row & v).count("1") & 1:
                out |= 1 << i
        return out

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ShapeError("inner dimensions differ")
        out = []
        for row in self.rows:
            acc = 0
            k = 0
            while row:
                if row & 1:
                    acc ^= other.rows[k]
                row >>= 1
                k += 1
            out.append(acc)
        return BitMatrix(tuple(out), other.ncols)


def transition_matrix(r: Rule, n: int) -> BitMatrix:
    """Banded M_n with entry (i, j) = lambda_{j-i}."""
    # bit k of the pattern is lambda_{k - rL}; row i is it shifted to column i - rL
    pattern = int(r.coeffs[::-1], 2)
    full = (1 << n) - 1
    rows = []
    for i in range(n):
        s = i - r.left
        rows.append(((pattern << s) if s >= 0 else (pattern >> -s)) & full)
    return BitMatrix(tuple(rows), n)


def det_gf2(m: BitMatrix) -> int:
    if m.nrows != m.ncols:
        raise ShapeError(f"determinant of a {m.nrows}x{m.ncols} matrix")
    return _kernels.det(list(m.rows), m.nrows)


def invert_gf2(m: BitMatrix) -> BitMatrix:
    n = m.nrows
    if n != m.ncols:
        raise ShapeError(f"inverse of a {n}x{m.ncols} matrix")
    aug = [row | (1 << (n + i)) for i, row in enumerate(m.rows)]
    for col in range(n):
        bit = 1 << col
        pivot = next((i for i in range(col, n) if aug[i] & bit), None)
        if pivot is None:
            raise Singular("matrix is singular over GF(2)")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col]
        for i in range(n):
            if i != col and aug[i] & bit:
                aug[i] ^= p
    return BitMatrix(tuple(row >> n for row in aug), n)


def reversible_residues_matrix(r: Rule, n_max: int) -> list[bool]:
    """Entry n-1 is True iff det M_n = 1, for n = 1..n_max."""
    return [det_gf2(transition_matrix(r, n)) == 1 for n in range(1, n_max + 1)]

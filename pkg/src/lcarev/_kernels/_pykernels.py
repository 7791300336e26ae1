"""Pure-Python bit kernels.

Reference implementations of everything in ``_ckernels.pyx``.  They accept
integers of any size, so they double as the fallback for operands wider than
64 bits.

Conventions shared with the compiled module:

* A polynomial modulus ``f`` of degree ``deg`` is a full bit mask (bit ``deg``
  set); residues are reduced, i.e. ``< 1 << deg``.
* A tuple (DFA row) of width ``d`` stores position ``k`` at bit ``d - 1 - k``,
  so ``format(t, f"0{d}b")`` prints it left to right and the postfix is the low
  ``rR`` bits.  ``coef_mask`` has bit ``d - 1 - k`` set when the rule
  coefficient at offset ``k - rL`` is 1.
"""

from __future__ import annotations


def mulmod(a: int, b: int, f: int, deg: int) -> int:
    r = 0
    top = 1 << deg
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= f
    return r


def powmod(a: int, e: int, f: int, deg: int) -> int:
    result = 1 if deg > 0 else 0
    if e == 0:
        return result
    for bit in bin(e)[2:]:
        result = mulmod(result, result, f, deg)
        if bit == "1":
            result = mulmod(result, a, f, deg)
    return result


def sqr_chain(a: int, k: int, f: int, deg: int) -> int:
    """a^(2^k) mod f."""
    for _ in range(k):
        a = mulmod(a, a, f, deg)
    return a


def order_scan(f: int, deg: int, limit: int) -> int:
    """Least k in 1..limit with x^k = 1 mod f, or 0 if there is none."""
    top = 1 << deg
    r = 2 if deg > 1 else f ^ top  # x mod f
    k = 1
    while k <= limit:
        if r == 1:
            return k
        r <<= 1
        if r & top:
            r ^= f
        k += 1
    return 0


def _parity(v: int) -> int:
    return bin(v).count("1") & 1


def dfa_scan(coef_mask: int, d: int, rR: int, max_steps: int, want_residues: bool):
    """Walk the full DFA from the initial node.

    Returns ``(period, reversible_steps)``; period is -1 when the node has not
    returned to the initial one within ``max_steps`` edges.  Step j (0-based,
    initial node = 0) is listed when its postfixes are pairwise distinct.
    """
    size = 1 << rR
    full = (1 << d) - 1
    pmask = size - 1
    node = list(range(size))
    reversible = [0] if want_residues else []
    seen = bytearray(size)
    step = 0
    while step < max_steps:
        step += 1
        for i in range(size):
            t = node[i]
            node[i] = ((t << 1) | _parity(t & coef_mask)) & full
        if all(node[i] == i for i in range(size)):
            return step, reversible
        if want_residues:
            for i in range(size):
                seen[i] = 0
            ok = True
            for t in node:
                p = t & pmask
                if seen[p]:
                    ok = False
                    break
                seen[p] = 1
            if ok:
                reversible.append(step)
    return -1, reversible


def rank(rows, ncols: int) -> int:
    work = [r & ((1 << ncols) - 1) for r in rows]
    rk = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = None
        for i in range(rk, len(work)):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        p = work[rk]
        for i in range(rk + 1, len(work)):
            if work[i] & bit:
                work[i] ^= p
        rk += 1
        if rk == len(work):
            break
    return rk


def sbp_scan(coef_mask: int, d: int, rR: int, rows, steps: int):
    """Advance ``rows`` ``steps`` times, recording full rank before each step.

    Returns ``(flags, rows_after)`` where ``flags[k]`` is 1 when the postfixes
    at step k are linearly independent.
    """
    full = (1 << d) - 1
    pmask = (1 << rR) - 1
    rows = list(rows)
    flags = bytearray(steps)
    for k in range(steps):
        flags[k] = rank([r & pmask for r in rows], rR) == rR
        rows = [((t << 1) | _parity(t & coef_mask)) & full for t in rows]
    return bytes(flags), rows


def det(rows, n: int) -> int:
    """Determinant over GF(2) of an n x n matrix given as column bit masks."""
    work = list(rows)
    for col in range(n):
        bit = 1 << col
        pivot = None
        for i in range(col, n):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            return 0
        work[col], work[pivot] = work[pivot], work[col]
        p = work[col]
        for i in range(col + 1, n):
            if work[i] & bit:
                work[i] ^= p
    return 1

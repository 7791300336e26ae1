"""Hot bit kernels with a compiled core and a pure-Python fallback.

The Cython module ``_ckernels`` is used when it was built and the operands fit
in 64-bit words; everything else runs through ``_pykernels``.  Set
``LCAREV_PURE_PYTHON=1`` to ignore the compiled module, or use
:func:`use_backend` to switch at runtime (tests and the benchmark do).
"""

from __future__ import annotations

import contextlib
import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_fast = None if os.environ.get("LCAREV_PURE_PYTHON") else _ckernels


def backend() -> str:
    return "cython" if _fast is not None else "python"


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


@contextlib.contextmanager
def use_backend(name: str):
    """Temporarily force ``"python"`` or ``"cython"``."""
    global _fast
    if name == "cython" and _ckernels is None:
        raise RuntimeError("compiled kernels are not built")
    if name not in ("python", "cython"):
        raise ValueError(name)
    saved = _fast
    _fast = _ckernels if name == "cython" else None
    try:
        yield
    finally:
        _fast = saved


def mulmod(a: int, b: int, f: int, deg: int) -> int:
    if _fast is not None and deg <= 64:
        return _fast.mulmod(a, b, f, deg)
    return _pykernels.mulmod(a, b, f, deg)


def powmod(a: int, e: int, f: int, deg: int) -> int:
    if _fast is not None and deg <= 64:
        return _fast.powmod(a, e, f, deg)
    return _pykernels.powmod(a, e, f, deg)


def sqr_chain(a: int, k: int, f: int, deg: int) -> int:
    if _fast is not None and deg <= 64:
        return _fast.sqr_chain(a, k, f, deg)
    return _pykernels.sqr_chain(a, k, f, deg)


def order_scan(f: int, deg: int, limit: int) -> int:
    if _fast is not None and deg <= 64 and limit < 1 << 62:
        return _fast.order_scan(f, deg, limit)
    return _pykernels.order_scan(f, deg, limit)


def dfa_scan(coef_mask: int, d: int, rR: int, max_steps: int, want_residues: bool = True):
    if _fast is not None and d <= 64:
        return _fast.dfa_scan(coef_mask, d, rR, min(max_steps, (1 << 62)), want_residues)
    return _pykernels.dfa_scan(coef_mask, d, rR, max_steps, want_residues)


def sbp_scan(coef_mask: int, d: int, rR: int, rows, steps: int):
    if _fast is not None and d <= 64:
        return _fast.sbp_scan(coef_mask, d, rR, rows, steps)
    return _pykernels.sbp_scan(coef_mask, d, rR, rows, steps)


def rank(rows, ncols: int) -> int:
    if _fast is not None and 0 < ncols <= 64 and len(rows) <= 64:
        return _fast.rank(rows, ncols)
    return _pykernels.rank(rows, ncols)


def det(rows, n: int) -> int:
    if _fast is not None:
        return _fast.det(rows, n)
    return _pykernels.det(rows, n)

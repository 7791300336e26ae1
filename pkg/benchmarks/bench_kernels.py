"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload runs under both backends; results must agree, and the table
shows the best-of-N time and the speedup.
"""

from __future__ import annotations

import argparse
import random
import timeit

from lcarev import _kernels
from lcarev.gf2poly import Poly
from lcarev.oracle import coef_mask, det_gf2, dfa_period, transition_matrix
from lcarev.period import period_bruteforce, poly_period
from lcarev.rule import parse_rule
from lcarev.sbp import reversible_residues_sbp


def workloads():
    rng = random.Random(7)
    f64 = Poly((1 << 64) | rng.getrandbits(64) | 1)
    a = rng.getrandbits(64)
    r17 = parse_rule("10000000000101101")
    r13 = parse_rule("1000010011001")
    m = transition_matrix(parse_rule("1011011"), 600)
    rows = [rng.getrandbits(60) for _ in range(60)]
    return {
        "powmod deg 64": lambda: _kernels.powmod(a, (1 << 64) - 1, f64.bits, 64),
        "sqr_chain deg 64 x1000": lambda: _kernels.sqr_chain(a, 1000, f64.bits, 64),
        "order scan deg 16": lambda: period_bruteforce(Poly.parse("10000000000101101")),
        "period deg 64": lambda: poly_period(f64),
        "dfa size 13": lambda: dfa_period(r13),
        "sbp size 17": lambda: reversible_residues_sbp(r17),
        "sbp walk 2^16": lambda: _kernels.sbp_scan(coef_mask(r17), 16, 8, [1 << j for j in range(8)], 1 << 16),
        "rank 60x60": lambda: _kernels.rank(rows, 60),
        "det 600x600": lambda: det_gf2(m),
    }


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if "cython" not in _kernels.available_backends():
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    print(f"{'workload':<26}{'python':>12}{'cython':>12}{'speedup':>10}")
    for name, fn in workloads().items():
        times, outs = {}, {}
        for be in ("python", "cython"):
            with _kernels.use_backend(be):
                outs[be] = fn()
                times[be] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        if outs["python"] != outs["cython"]:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<26}{times['python']:>11.4f}s{times['cython']:>11.4f}s{times['python'] / times['cython']:>9.1f}x")


if __name__ == "__main__":
    main()

"""Regenerate src/lcarev/data/factor_cache.json (2^n - 1 for n = 1..128)."""

import json
import sys
import time
from pathlib import Path

from lcarev.intfactor import factor_int, is_prime

OUT = Path(__file__).resolve().parents[1] / "src" / "lcarev" / "data" / "factor_cache.json"


def main(nmax: int = 128) -> None:
    table = {}
    for n in range(1, nmax + 1):
        value = (1 << n) - 1
        t0 = time.perf_counter()
        fi = factor_int(value, budget=3600, use_cache=False)
        assert fi.product() == value and all(is_prime(p) for p, _ in fi.factors)
        table[str(value)] = [[str(p), e] for p, e in fi.factors]
        print(f"n={n:3d} {time.perf_counter() - t0:7.2f}s {fi}", file=sys.stderr)
    OUT.write_text(json.dumps(table, sort_keys=True, indent=1) + "\n")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:]))

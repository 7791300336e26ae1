"""Period of reversibility via the period (order of x) of the rule polynomial."""

from __future__ import annotations

import json
import math
import os
import threading
from dataclasses import dataclass, field
from pathlib import Path

from . import _kernels
from .errors import CapExceeded, InvalidInput, NoConstantTerm, NotIrreducible
from .gf2poly import Poly, berlekamp_factor, is_irreducible
from .intfactor import DEFAULT_BUDGET, factor_int
from .rule import Rule, core_coeffs

DEGREE_CAP = 64
BRUTEFORCE_DEGREE_CAP = 16
PERIOD_TABLE_ENV = "LCAREV_PERIOD_TABLE"


@dataclass(frozen=True)
class PeriodResult:
    period: int
    factor_periods: tuple[tuple[Poly, int, int], ...] = ()  # (factor, multiplicity, period)
    power_part: int = 1

    @property
    def lcm_part(self) -> int:
        return self.period // self.power_part

    def to_json(self) -> dict:
        return {
            "period": str(self.period),
            "power_part": str(self.power_part),
            "factors": [
                {"poly": g.to_bits(), "sparse": g.to_sparse(), "multiplicity": m, "period": str(p)}
                for g, m, p in self.factor_periods
            ],
        }


def _check_constant(f: Poly) -> None:
    if not f.bits & 1:
        raise NoConstantTerm(f"{f} has f(0) = 0 and therefore no period")


def irreducible_period(
    f: Poly,
    cap: int = DEGREE_CAP,
    budget: float = DEFAULT_BUDGET,
    check: bool = True,
) -> int:
    """Order of x modulo an irreducible f.

    Factor 2^n - 1 and strip each prime from the exponent while x still maps
    to 1.
    """
    n = f.bits.bit_length() - 1
    if n < 1:
        raise InvalidInput("period needs degree >= 1")
    _check_constant(f)
    if n > cap:
        raise CapExceeded(f"degree {n} above period cap {cap}")
    if check and not is_irreducible(f):
        raise NotIrreducible(f"{f} is reducible")
    order = (1 << n) - 1
    x = 2 if n > 1 else 1  # x mod f
    for p, e in factor_int(order, budget=budget).factors:
        for _ in range(e):
            if _kernels.powmod(x, order // p, f.bits, n) == 1:
                order //= p
            else:
                break
    return order


def least_power_of_two_at_least(e: int) -> int:
    return 1 << (e - 1).bit_length()


def poly_period(f: Poly, cap: int = DEGREE_CAP, budget: float = DEFAULT_BUDGET) -> PeriodResult:
    """Factor f, take each irreducible period, combine with lcm and 2^t."""
    if f.bits.bit_length() - 1 < 1:
        raise InvalidInput("period needs degree >= 1")
    _check_constant(f)
    parts = []
    lcm = 1
    max_mult = 1
    for g, m in berlekamp_factor(f):
        p = irreducible_period(g, cap=cap, budget=budget, check=False)
        parts.append((g, m, p))
        lcm = math.lcm(lcm, p)
        max_mult = max(max_mult, m)
    power = least_power_of_two_at_least(max_mult)
    return PeriodResult(lcm * power, tuple(parts), power)


def period_bruteforce(f: Poly, cap: int = BRUTEFORCE_DEGREE_CAP) -> int:
    """Least k >= 1 with x^k = 1 mod f by linear scan."""
    n = f.bits.bit_length() - 1
    if n < 1:
        raise InvalidInput("period needs degree >= 1")
    _check_constant(f)
    if n > cap:
        raise CapExceeded(f"degree {n} above brute-force cap {cap}")
    k = _kernels.order_scan(f.bits, n, 1 << n)
    if k == 0:
        raise AssertionError(f"no period found for {f}")
    return k


def rule_polynomial(r: Rule) -> Poly:
    """Polynomial of the rule with border zeros removed."""
    return Poly(int(core_coeffs(r), 2))


def rule_period(r: Rule, cap: int = DEGREE_CAP, budget: float = DEFAULT_BUDGET) -> PeriodResult:
    f = rule_polynomial(r)
    if f.bits == 1:
        # a single coefficient: the identity up to a shift, period 1
        return PeriodResult(1, (), 1)
    return poly_period(f, cap=cap, budget=budget)


# -- period table cache --------------------------------------------------------

@dataclass
class PeriodTable:
    """Irreducible polynomials with their periods, persisted as a JSON list.

    Entries are ``{"degree": d, "poly": "<MSB-first bits>", "period": "<decimal>"}``.
    """

    path: Path | None = None
    entries: dict[int, int] = field(default_factory=dict)  # poly bits -> period
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    @classmethod
    def load(cls, path=None) -> "PeriodTable":
        path = path or os.environ.get(PERIOD_TABLE_ENV) or None
        table = cls(Path(path) if path else None)
        if table.path is not None and table.path.exists():
            for item in json.loads(table.path.read_text()):
                table.entries[int(item["poly"], 2)] = int(item["period"])
        return table

    def with_period(self, period: int) -> list[Poly]:
        with self._lock:
            return sorted((Poly(b) for b, p in self.entries.items() if p == period), key=Poly.sort_key)

    def add(self, polys_and_periods) -> None:
        with self._lock:
            changed = False
            for g, p in polys_and_periods:
                if self.entries.get(g.bits) != p:
                    self.entries[g.bits] = p
                    changed = True
            if changed and self.path is not None:
                self.save()

    def to_json(self) -> list[dict]:
        items = sorted(self.entries.items(), key=lambda kv: (kv[0].bit_length(), kv[0]))
        return [
            {"degree": b.bit_length() - 1, "poly": format(b, "b"), "period": str(p)}
            for b, p in items
        ]

    def save(self, path=None) -> None:
        target = Path(path) if path else self.path
        if target is None:
            raise ValueError("no period-table path configured")
        tmp = target.with_suffix(target.suffix + ".tmp")
        tmp.write_text(json.dumps(self.to_json(), indent=1) + "\n")
        os.replace(tmp, target)


def build_period_table(max_degree: int, path=None) -> PeriodTable:
    """All irreducible polynomials with f(0) = 1 up to ``max_degree``."""
    table = PeriodTable(Path(path) if path else None)
    found = []
    for d in range(1, max_degree + 1):
        for bits in range((1 << d) | 1, 1 << (d + 1), 2):
            g = Poly(bits)
            if is_irreducible(g):
                found.append((g, irreducible_period(g, cap=max(DEGREE_CAP, d), check=False)))
    table.add(found)
    return table

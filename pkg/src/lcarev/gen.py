"""Rules with a prescribed period.

The target T = 2^t * U (U odd) is built from irreducible factors whose periods
are the prime powers of U, raised to exponents whose maximum lies in
(2^(t-1), 2^t], optionally times a power of x+1.  Every emitted polynomial is
re-checked with :func:`lcarev.period.poly_period`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

from . import _kernels
from .errors import CapExceeded, InvalidInput, NotIrreducible, NotOdd
from .gf2poly import Poly, berlekamp_factor, compose_power, is_irreducible, poly_divrem, poly_mul
from .intfactor import DEFAULT_BUDGET, euler_phi, factor_int, is_prime, multiplicative_order
from .period import PeriodTable, poly_period
from .rule import Rule, poly_to_rule

GEN_DEGREE_CAP = 128
# largest polynomial handed to Berlekamp while searching for irreducibles
FACTOR_CAP = 1024
X_PLUS_1 = Poly(0b11)
# "paper" is kept as a CLI-compatible name for "single" (g = 1 per prime power)
G_MODES = {"exact": "exact", "single": "single", "paper": "single"}


@dataclass(frozen=True)
class PeriodSpec:
    T: int
    t: int
    odd_part: tuple[tuple[int, int], ...]  # (odd prime, exponent)

    @property
    def r(self) -> int:
        return len(self.odd_part)

    @property
    def U(self) -> int:
        return self.T >> self.t

    def prime_powers(self) -> list[int]:
        return [m**e for m, e in self.odd_part]


@dataclass
class GenOutput:
    T: int
    polynomials: list[Poly]
    rules: list[Rule]
    lower_bound: int
    g_values: list[tuple[int, int]]  # (modulus, count)
    mode: str = "construct"
    truncated: bool = False
    rule_polys: list[Poly] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "T": str(self.T),
            "mode": self.mode,
            "truncated": self.truncated,
            "count": len(self.polynomials),
            "lower_bound": str(self.lower_bound),
            "g_values": [[str(m), str(g)] for m, g in self.g_values],
            "entries": [
                {"poly": f.to_bits(), "sparse": f.to_sparse(), "rule": r.coeffs, "left": r.left, "period": str(self.T)}
                for f, r in zip(self.rule_polys, self.rules)
            ],
        }


def decompose_period(T: int, budget: float = DEFAULT_BUDGET) -> PeriodSpec:
    if T < 1:
        raise InvalidInput("period must be positive")
    t = (T & -T).bit_length() - 1
    odd = factor_int(T >> t, budget=budget).factors if T >> t > 1 else ()
    return PeriodSpec(T, t, tuple(odd))


def count_irreducibles_with_period(m: int) -> int:
    """phi(m) / ord_m(2): one class per cyclotomic coset of primitive m-th roots."""
    if m < 1:
        raise InvalidInput("period must be positive")
    if m % 2 == 0:
        raise NotOdd(f"irreducible periods are odd, got {m}")
    if m == 1:
        return 1
    return euler_phi(m) // multiplicative_order(2, m)


def _x_mod(deg: int) -> int:
    return 2 if deg > 1 else 1


def has_period(g: Poly, m: int) -> bool:
    """Is the order of x modulo g exactly m?  Uses only the factorization of m."""
    n = g.bits.bit_length() - 1
    if n < 1 or not g.bits & 1:
        return False
    x = _x_mod(n)
    if _kernels.powmod(x, m, g.bits, n) != 1:
        return False
    return all(_kernels.powmod(x, m // p, g.bits, n) != 1 for p in factor_int(m).primes())


def cyclotomic_poly(m: int) -> Poly:
    """Phi_m over GF(2), from x^m - 1 = prod_{d | m} Phi_d."""
    num = Poly(1)
    den = Poly(1)
    for d in _divisors(m):
        mu = _moebius(m // d)
        if mu == 1:
            num = poly_mul(num, Poly((1 << d) | 1))
        elif mu == -1:
            den = poly_mul(den, Poly((1 << d) | 1))
    q, rem = poly_divrem(num, den)
    assert not rem.bits
    return q


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factor_int(n).factors:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def _moebius(n: int) -> int:
    fs = factor_int(n).factors
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def _irreducible_factors(f: Poly) -> list[Poly]:
    if f.bits.bit_length() - 1 > FACTOR_CAP:
        raise CapExceeded(f"degree {f.bits.bit_length() - 1} above factoring cap {FACTOR_CAP}")
    return [g for g, _ in berlekamp_factor(f)]


def irreducibles_with_period(
    m: int,
    cap: int = GEN_DEGREE_CAP,
    table: PeriodTable | None = None,
) -> list[Poly]:
    """All irreducible polynomials whose period is exactly m, sorted canonically.

    They are the irreducible factors of the m-th cyclotomic polynomial.  When
    that is too large to factor directly and p^2 | m, the factors of
    Phi_{m/p}(x^p) = Phi_m(x) are used instead.
    """
    if m < 1:
        raise InvalidInput("period must be positive")
    if m % 2 == 0:
        raise NotOdd(f"irreducible periods are odd, got {m}")
    if m == 1:
        return [X_PLUS_1]
    deg = multiplicative_order(2, m)
    if deg > cap:
        raise CapExceeded(f"period {m} needs degree {deg} above cap {cap}")
    want = euler_phi(m) // deg
    if table is not None:
        hit = table.with_period(m)
        if len(hit) == want:
            return hit
    if euler_phi(m) <= FACTOR_CAP:
        cands = _irreducible_factors(cyclotomic_poly(m))
    else:
        p = next((p for p, e in factor_int(m).factors if e > 1), None)
        if p is None:
            raise CapExceeded(f"Phi_{m} has degree {euler_phi(m)} above factoring cap {FACTOR_CAP}")
        cands = []
        for h in irreducibles_with_period(m // p, cap=cap, table=table):
            cands.extend(_irreducible_factors(compose_power(h, p)))
    out = sorted({g for g in cands if has_period(g, m)}, key=Poly.sort_key)
    if len(out) != want:
        raise AssertionError(f"found {len(out)} irreducibles of period {m}, expected {want}")
    if table is not None:
        table.add((g, m) for g in out)
    return out


def _prime_power_exponent(f: Poly, m: int) -> int:
    """k with period(f) = m^k, or InvalidInput."""
    n = f.bits.bit_length() - 1
    if has_period(f, 1):
        return 0
    k, q = 1, m
    while q < 1 << n:
        if has_period(f, q):
            return k
        k, q = k + 1, q * m
    raise InvalidInput(f"period of {f} is not a power of {m}")


def lift_prime_power(f: Poly, m: int, cap: int = GEN_DEGREE_CAP) -> Poly:
    """Smallest irreducible factor of f(x^m) whose period is m^(k+1)."""
    if m % 2 == 0:
        raise NotOdd(f"lifting needs an odd prime, got {m}")
    if not is_prime(m):
        raise InvalidInput(f"{m} is not prime")
    if not is_irreducible(f):
        raise NotIrreducible(f"{f} is reducible")
    k = _prime_power_exponent(f, m)
    target = m ** (k + 1)
    cands = [g for g in _irreducible_factors(compose_power(f, m)) if has_period(g, target)]
    cands = [g for g in cands if g.bits.bit_length() - 1 <= cap]
    if not cands:
        raise CapExceeded(f"no factor of period {target} within degree cap {cap}")
    return min(cands, key=Poly.sort_key)


def power_of_two_exponent_range(t: int) -> tuple[int, int]:
    """Exponents s for which (x+1)^s has period exactly 2^t."""
    if t < 0:
        raise InvalidInput("t must be nonnegative")
    if t == 0:
        return 1, 1
    return (1 << (t - 1)) + 1, 1 << t


def count_lower_bound(spec: PeriodSpec, g: list[int]) -> int:
    if len(g) != spec.r:
        raise InvalidInput(f"expected {spec.r} g values, got {len(g)}")
    if any(v < 1 for v in g):
        raise InvalidInput("g values must be positive")
    t, r = spec.t, spec.r
    prod = math.prod(g)
    if r == 0:
        return 1 if t == 0 else 1 << (t - 1)
    if t == 0:
        return 2 * prod
    return (1 << t) * ((1 << (t * r)) - (1 << ((t - 1) * r))) * prod + (1 << (t * r)) * prod


def _power(f: Poly, e: int) -> Poly:
    out = Poly(1)
    for _ in range(e):
        out = poly_mul(out, f)
    return out


def _construct(spec: PeriodSpec, lists: list[list[Poly]]) -> Iterator[Poly]:
    """The counted construction: max a_i in range, or a_0 = 2^t with a_i free.

    Products where only a_0 carries the maximum (2^(t-1) < a_0 < 2^t) also
    have period T but are not part of the count; ``complete`` mode finds them.
    """
    lo, hi = power_of_two_exponent_range(spec.t)
    exps = range(1, hi + 1)
    if spec.r == 0:
        for a0 in range(lo, hi + 1):
            yield _power(X_PLUS_1, a0)
        return
    for choice in itertools.product(*lists):
        for vec in itertools.product(exps, repeat=spec.r):
            in_range = lo <= max(vec) <= hi
            for a0 in range(hi + 1):
                if not (in_range or a0 == hi):
                    continue
                f = _power(X_PLUS_1, a0)
                for g, a in zip(choice, vec):
                    f = poly_mul(f, _power(g, a))
                yield f


def _complete(spec: PeriodSpec, max_degree: int, table) -> Iterator[Poly]:
    """Every f with period T and degree <= max_degree, by search over factors."""
    lo, hi = power_of_two_exponent_range(spec.t)
    cands: list[tuple[Poly, int]] = [(X_PLUS_1, 1)]
    for w in _divisors(spec.U)[1:]:
        if multiplicative_order(2, w) <= max_degree:
            cands.extend((g, w) for g in irreducibles_with_period(w, cap=max_degree, table=table))
    cands.sort(key=lambda c: c[0].sort_key())

    def walk(i: int, f: Poly, deg: int, lcm: int, top: int):
        if i == len(cands):
            if lcm == spec.U and lo <= top <= hi and deg > 0:
                yield f
            return
        g, w = cands[i]
        dg = g.bits.bit_length() - 1
        yield from walk(i + 1, f, deg, lcm, top)
        h = f
        for a in range(1, hi + 1):
            if deg + a * dg > max_degree:
                break
            h = poly_mul(h, g)
            yield from walk(i + 1, h, deg + a * dg, math.lcm(lcm, w), max(top, a))

    yield from walk(0, Poly(1), 0, 1, 0)


def generate_polynomials(
    T: int,
    limit: int | None = None,
    g_mode: str = "exact",
    complete: bool = False,
    max_degree: int = GEN_DEGREE_CAP,
    all_splits: bool = False,
    table: PeriodTable | None = None,
    verify: bool = True,
) -> GenOutput:
    """Polynomials (and rules) with period exactly T.

    ``g_mode="exact"`` uses every irreducible of each prime-power period;
    ``"single"`` (alias ``"paper"``) keeps one per prime power, found by lifting the smallest
    irreducible of period m.  ``complete=True`` ignores the construction and
    searches all factor combinations up to ``max_degree``, which also finds
    polynomials with factors of composite period.
    """
    if g_mode not in G_MODES:
        raise InvalidInput(f"unknown g mode {g_mode!r}")
    g_mode = G_MODES[g_mode]
    spec = decompose_period(T)
    if complete:
        # the search finds its own factors; g only feeds the bound
        lists = []
        g = [count_irreducibles_with_period(q) for q in spec.prime_powers()] if g_mode == "exact" else [1] * spec.r
    elif g_mode == "single":
        lists = []
        for m, e in spec.odd_part:
            f = irreducibles_with_period(m, cap=max_degree, table=table)[0]
            for _ in range(e - 1):
                f = lift_prime_power(f, m, cap=max_degree)
            lists.append([f])
        g = [1] * spec.r
    else:
        lists = [irreducibles_with_period(q, cap=max_degree, table=table) for q in spec.prime_powers()]
        g = [len(lst) for lst in lists]
    source = _complete(spec, max_degree, table) if complete else _construct(spec, lists)

    polys: list[Poly] = []
    truncated = False
    for f in source:
        if limit is not None and len(polys) >= limit:
            truncated = True
            break
        deg = f.bits.bit_length() - 1
        if deg > max_degree:
            raise CapExceeded(f"generated degree {deg} above cap {max_degree}")
        if verify and poly_period(f, cap=max_degree).period != T:
            raise AssertionError(f"{f} does not have period {T}")
        polys.append(f)
    if complete:
        polys.sort(key=Poly.sort_key)

    rules, rule_polys = [], []
    for f in polys:
        for r in _rules_for(f, all_splits):
            rules.append(r)
            rule_polys.append(f)
    return GenOutput(
        T=T,
        polynomials=polys,
        rules=rules,
        lower_bound=count_lower_bound(spec, g),
        g_values=list(zip(spec.prime_powers(), g)),
        mode="complete" if complete else f"construct/{g_mode}",
        truncated=truncated,
        rule_polys=rule_polys,
    )


def _rules_for(f: Poly, all_splits: bool) -> list[Rule]:
    size = f.bits.bit_length()
    if not all_splits or size < 3:
        return [poly_to_rule(f)]
    return [poly_to_rule(f, left) for left in range(1, size - 1)]

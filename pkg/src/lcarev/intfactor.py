"""Integer factorization for the period computations.

Trial division by small primes, then Pollard rho with Brent's cycle finding.
Numbers of the form 2^n - 1 are first split along cyclotomic values
Phi_d(2), d | n, which keeps the pieces small.  Results are looked up in, and
written back to, a JSON cache (see :class:`FactorCache`).
"""

from __future__ import annotations

import json
import math
import os
import random
import threading
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import FactorTimeout

TRIAL_LIMIT = 100_000
DEFAULT_BUDGET = 30.0
CACHE_ENV = "LCAREV_FACTOR_CACHE"

_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i in range(limit + 1) if sieve[i]]


_PRIMES = _small_primes(TRIAL_LIMIT)


@dataclass(frozen=True)
class FactoredInt:
    value: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes increasing

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 2^64, error < 2^-128 above."""
    if n < 2:
        return False
    for p in _PRIMES[:50]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 1 << 64:
        return all(_mr_round(n, d, s, a) for a in _MR_BASES_64)
    # 64 random rounds: error <= 4^-64
    rng = random.Random(n)
    bases = list(_MR_BASES_64) + [rng.randrange(2, n - 1) for _ in range(64 - len(_MR_BASES_64))]
    return all(_mr_round(n, d, s, a) for a in bases)


def _brent(n: int, deadline: float, rng: random.Random) -> int | None:
    """A nontrivial factor of composite odd n, or None once the deadline passes."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            if time.monotonic() > deadline:
                return None
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _add(acc: dict[int, int], p: int, e: int = 1) -> None:
    acc[p] = acc.get(p, 0) + e


def _factor_into(n: int, acc: dict[int, int], deadline: float) -> None:
    for p in _PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            _add(acc, p, e)
    if n == 1:
        return
    if n <= _PRIMES[-1] ** 2 or is_prime(n):
        _add(acc, n)
        return
    rng = random.Random(n)
    stack = [n]
    while stack:
        m = stack.pop()
        if is_prime(m):
            _add(acc, m)
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent(m, deadline, rng)
        if d is None:
            partial = dict(acc)
            leftover = m
            for s in stack:
                leftover *= s
            partial[None] = leftover
            raise FactorTimeout(f"factoring {n} exceeded the time budget", partial)
        stack += [d, m // d]


def _cyclotomic_value(d: int) -> int:
    """Phi_d(2) as an integer, via Moebius inversion of 2^k - 1."""
    num = den = 1
    for k in range(1, d + 1):
        if d % k:
            continue
        mu = _moebius(d // k)
        if mu == 1:
            num *= (1 << k) - 1
        elif mu == -1:
            den *= (1 << k) - 1
    return num // den


def _moebius(n: int) -> int:
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


def _mersenne_exponent(n: int) -> int | None:
    if n > 2 and (n + 1) & n == 0:
        return (n + 1).bit_length() - 1
    return None


class FactorCache:
    """Decimal-string keyed JSON map ``{"n": [["p", e], ...]}``.

    The bundled table of 2^n - 1 (n <= 128) is always consulted; an optional
    user file adds entries and receives newly computed ones.  Writes are
    idempotent inserts made atomic with ``os.replace``.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path else None
        self._lock = threading.RLock()
        self._entries: dict[int, tuple[tuple[int, int], ...]] = {}
        self._load_bundled()
        if self.path is not None and self.path.exists():
            self._entries.update(_decode(json.loads(self.path.read_text())))

    def _load_bundled(self) -> None:
        try:
            text = resources.files("lcarev").joinpath("data/factor_cache.json").read_text()
        except FileNotFoundError:
            return
        self._entries.update(_decode(json.loads(text)))

    def get(self, n: int):
        with self._lock:
            return self._entries.get(n)

    def put(self, n: int, factors) -> None:
        with self._lock:
            if n in self._entries:
                return
            self._entries[n] = tuple(factors)
            if self.path is None:
                return
            on_disk = {}
            if self.path.exists():
                on_disk = json.loads(self.path.read_text())
            on_disk[str(n)] = [[str(p), e] for p, e in factors]
            tmp = self.path.with_suffix(self.path.suffix + ".tmp")
            tmp.write_text(json.dumps(on_disk, sort_keys=True, indent=1))
            os.replace(tmp, self.path)

    def __len__(self) -> int:
        return len(self._entries)


def _decode(raw: dict) -> dict[int, tuple[tuple[int, int], ...]]:
    return {int(k): tuple((int(p), int(e)) for p, e in v) for k, v in raw.items()}


_default_cache: FactorCache | None = None
_default_lock = threading.Lock()


def default_cache() -> FactorCache:
    global _default_cache
    with _default_lock:
        if _default_cache is None:
            _default_cache = FactorCache(os.environ.get(CACHE_ENV) or None)
        return _default_cache


def set_default_cache(path: str | os.PathLike | None) -> FactorCache:
    global _default_cache
    with _default_lock:
        _default_cache = FactorCache(path)
        return _default_cache


def factor_int(
    n: int,
    budget: float = DEFAULT_BUDGET,
    cache: FactorCache | None = None,
    use_cache: bool = True,
) -> FactoredInt:
    """Complete prime factorization of n >= 1.

    Raises :class:`FactorTimeout` (carrying the partial result) when the
    work exceeds ``budget`` seconds.
    """
    if n < 1:
        raise ValueError("factor_int needs n >= 1")
    if use_cache:
        cache = cache or default_cache()
        hit = cache.get(n)
        if hit is not None:
            return FactoredInt(n, hit)
    deadline = time.monotonic() + budget
    acc: dict[int, int] = {}
    k = _mersenne_exponent(n)
    if k is not None:
        for d in range(1, k + 1):
            if k % d == 0:
                piece = _cyclotomic_value(d)
                if piece > 1:
                    _factor_into(piece, acc, deadline)
    else:
        _factor_into(n, acc, deadline)
    factors = tuple(sorted(acc.items()))
    if use_cache and n > TRIAL_LIMIT:
        cache.put(n, factors)
    return FactoredInt(n, factors)


def trial_division(n: int) -> FactoredInt:
    """Naive reference factorization (slow; used as a test oracle)."""
    acc: dict[int, int] = {}
    value = n
    d = 2
    while d * d <= n:
        while n % d == 0:
            _add(acc, d)
            n //= d
        d += 1
    if n > 1:
        _add(acc, n)
    return FactoredInt(value, tuple(sorted(acc.items())))


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factor_int(n).factors:
        out = out // p * (p - 1)
    return out


def multiplicative_order(a: int, m: int) -> int:
    """Least k >= 1 with a^k = 1 mod m (gcd(a, m) must be 1)."""
    if m == 1:
        return 1
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not invertible mod {m}")
    order = euler_phi(m)
    for p, e in factor_int(order).factors:
        for _ in range(e):
            if pow(a, order // p, m) == 1:
                order //= p
            else:
                break
    return order

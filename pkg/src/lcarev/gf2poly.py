"""Polynomials over GF(2).

A :class:`Poly` wraps a nonnegative Python int whose bit k is the coefficient of
x^k, so addition is XOR and the int itself is the word-packed coefficient
array.  The zero polynomial is the int 0; its degree is ``NEG_INF``.

Text form is an MSB-first bit string (``"1011"`` is x^3+x+1); sparse form such
as ``"x^3+x+1"`` is accepted on input as well.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from . import _kernels
from .errors import (
    CapExceeded,
    DivByZero,
    InvalidInput,
    InvalidModulus,
    ParseError,
    Undefined,
)

NEG_INF = float("-inf")
DEGREE_CAP = 4096


@dataclass(frozen=True, order=False)
class Poly:
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("coefficient mask must be nonnegative")

    # -- construction ---------------------------------------------------
    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> "Poly":
        bits = 0
        for e in exps:
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def parse(cls, text: str) -> "Poly":
        return parse_poly(text)

    # -- properties -----------------------------------------------------
    @property
    def degree(self):
        return self.bits.bit_length() - 1 if self.bits else NEG_INF

    def is_zero(self) -> bool:
        return self.bits == 0

    def __bool__(self) -> bool:
        return self.bits != 0

    def coeff(self, k: int) -> int:
        return (self.bits >> k) & 1

    def exponents(self) -> list[int]:
        """Exponents with coefficient 1, highest first."""
        return [k for k in range(self.bits.bit_length() - 1, -1, -1) if self.bits >> k & 1]

    def sort_key(self):
        return (self.bits.bit_length(), self.bits)

    # -- text ------------------------------------------------------------
    def to_bits(self) -> str:
        return format(self.bits, "b")

    def to_sparse(self) -> str:
        if not self.bits:
            return "0"
        terms = []
        for k in self.exponents():
            terms.append("1" if k == 0 else "x" if k == 1 else f"x^{k}")
        return "+".join(terms)

    def __str__(self) -> str:
        return self.to_sparse()

    def __repr__(self) -> str:
        return f"Poly({self.to_sparse()})"

    # -- operators -------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        return poly_add(self, other)

    __sub__ = __add__

    def __mul__(self, other: "Poly") -> "Poly":
        return poly_mul(self, other)

    def __divmod__(self, other: "Poly"):
        return poly_divrem(self, other)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return poly_divrem(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return poly_divrem(self, other)[1]

    def __pow__(self, e: int) -> "Poly":
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


ZERO = Poly(0)
ONE = Poly(1)
X = Poly(2)


_SPARSE_TERM = re.compile(r"^(?:(1)|x(?:\^(\d+))?)$")


def parse_poly(text: str) -> Poly:
    """Parse an MSB-first bit string or a sparse ``x^a+x^b+1`` expression."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    if set(s) <= {"0", "1"}:
        bits = int(s, 2)
    else:
        bits = 0
        for term in s.split("+"):
            m = _SPARSE_TERM.match(term)
            if m is None:
                raise ParseError(f"bad polynomial term {term!r} in {text!r}")
            if m.group(1):
                e = 0
            else:
                e = int(m.group(2)) if m.group(2) is not None else 1
            bits ^= 1 << e
    if bits.bit_length() - 1 > DEGREE_CAP:
        raise CapExceeded(f"degree above cap {DEGREE_CAP}")
    return Poly(bits)


# -- raw int helpers ---------------------------------------------------------

def _clmul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    shift = 0
    while b:
        if b & 1:
            r ^= a << shift
        b >>= 1
        shift += 1
    return r


def _divrem(a: int, b: int):
    db = b.bit_length() - 1
    q = 0
    da = a.bit_length() - 1
    while da >= db:
        s = da - db
        q ^= 1 << s
        a ^= b << s
        da = a.bit_length() - 1
    return q, a


def _mod(a: int, b: int) -> int:
    db = b.bit_length() - 1
    da = a.bit_length() - 1
    while da >= db:
        a ^= b << (da - db)
        da = a.bit_length() - 1
    return a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


_EVEN_MASKS: dict[int, int] = {}


def _even_mask(nbits: int) -> int:
    # bits 0, 2, 4, ... below nbits
    m = _EVEN_MASKS.get(nbits)
    if m is None:
        m = int("01" * ((nbits + 1) // 2), 2) if nbits else 0
        _EVEN_MASKS[nbits] = m
    return m


def _spread(a: int) -> int:
    """Move bit k to bit 2k (the square in characteristic 2)."""
    r = 0
    k = 0
    while a:
        if a & 1:
            r |= 1 << (2 * k)
        a >>= 1
        k += 1
    return r


def _unspread(a: int) -> int:
    """Inverse of ``_spread``: take every even bit (square root)."""
    r = 0
    k = 0
    while a:
        if a & 1:
            r |= 1 << k
        a >>= 2
        k += 1
    return r


# -- public operations -------------------------------------------------------

def poly_add(a: Poly, b: Poly) -> Poly:
    return Poly(a.bits ^ b.bits)


def poly_mul(a: Poly, b: Poly) -> Poly:
    if a.bits and b.bits and a.bits.bit_length() + b.bits.bit_length() - 2 > DEGREE_CAP:
        raise CapExceeded(f"product degree above cap {DEGREE_CAP}")
    return Poly(_clmul(a.bits, b.bits))


def poly_divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b.bits:
        raise DivByZero("division by the zero polynomial")
    q, r = _divrem(a.bits, b.bits)
    return Poly(q), Poly(r)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (over GF(2) every nonzero polynomial is monic)."""
    if not a.bits and not b.bits:
        raise Undefined("gcd(0, 0) is undefined")
    return Poly(_gcd(a.bits, b.bits))


def poly_powmod(base: Poly, exp: int, modulus: Poly) -> Poly:
    """base^exp mod modulus by square-and-multiply over the bits of exp."""
    if exp < 0:
        raise ValueError("negative exponent")
    deg = modulus.bits.bit_length() - 1
    if deg < 1:
        raise InvalidModulus("modulus must have degree >= 1")
    a = _mod(base.bits, modulus.bits)
    return Poly(_kernels.powmod(a, exp, modulus.bits, deg))


def poly_derivative(f: Poly) -> Poly:
    # odd exponents survive, shifted down by one
    return Poly((f.bits >> 1) & _even_mask(f.bits.bit_length()))


def poly_sqrt(f: Poly) -> Poly:
    """Square root of a polynomial whose odd coefficients all vanish."""
    if f.bits & (_even_mask(f.bits.bit_length() + 1) << 1):
        raise InvalidInput(f"{f} is not a square")
    return Poly(_unspread(f.bits))


def compose_power(f: Poly, m: int) -> Poly:
    """f(x^m)."""
    bits = 0
    for k in f.exponents():
        bits |= 1 << (k * m)
    if bits.bit_length() - 1 > DEGREE_CAP:
        raise CapExceeded(f"degree above cap {DEGREE_CAP}")
    return Poly(bits)


def reciprocal(f: Poly) -> Poly:
    """x^deg f * f(1/x)."""
    if not f.bits:
        return f
    return Poly(int(format(f.bits, "b")[::-1], 2))


def squarefree_decompose(f: Poly) -> list[tuple[Poly, int]]:
    """Split f into pairwise coprime squarefree parts with multiplicities.

    Parts are sorted canonically; the constant 1 is never returned.
    """
    if not f.bits:
        raise Undefined("square-free decomposition of 0")
    parts: dict[int, int] = {}
    _sqf(f.bits, 1, parts)
    out = [(Poly(p), m) for m, p in parts.items() if p != 1]
    out.sort(key=lambda pm: (pm[1], pm[0].sort_key()))
    return out


def _sqf(f: int, scale: int, parts: dict[int, int]) -> None:
    # characteristic-2 variant of Yun's algorithm; multiplicities are scaled by
    # ``scale`` when recursing through square roots.
    if f == 1:
        return
    d = (f >> 1) & _even_mask(f.bit_length())
    if d == 0:
        _sqf(_unspread(f), scale * 2, parts)
        return
    c = _gcd(f, d)
    w = _divrem(f, c)[0]
    i = 1
    while w != 1:
        y = _gcd(w, c)
        z = _divrem(w, y)[0]
        if z != 1:
            m = i * scale
            parts[m] = _clmul(parts.get(m, 1), z)
        i += 1
        w = y
        c = _divrem(c, y)[0]
    if c != 1:
        _sqf(_unspread(c), scale * 2, parts)


def _berlekamp_split(f: int) -> list[int]:
    """Irreducible factors of a squarefree f (deg >= 1)."""
    n = f.bit_length() - 1
    if n == 1:
        return [f]
    # rows of Q - I: x^(2i) mod f, minus x^i
    rows = []
    q = 1
    for i in range(n):
        rows.append(q ^ (1 << i))
        q = _mod(q << 2, f)
    # left null space: eliminate, tracking combinations in the high bits
    aug = [rows[i] | (1 << (n + i)) for i in range(n)]
    low = (1 << n) - 1
    r = 0
    for col in range(n):
        bit = 1 << col
        pivot = None
        for i in range(r, n):
            if aug[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        p = aug[r]
        for i in range(n):
            if i != r and aug[i] & bit:
                aug[i] ^= p
        r += 1
    basis = [row >> n for row in aug[r:] if not row & low]
    k = len(basis)
    if k == 1:
        return [f]
    factors = [f]
    for v in basis:
        if v == 1:
            continue
        nxt = []
        for h in factors:
            if h.bit_length() <= 2:
                nxt.append(h)
                continue
            g0 = _gcd(h, _mod(v, h))
            if g0 != 1 and g0 != h:
                nxt.append(g0)
                nxt.append(_divrem(h, g0)[0])
            else:
                nxt.append(h)
        factors = nxt
        if len(factors) == k:
            break
    if len(factors) != k:
        raise AssertionError(f"Berlekamp split found {len(factors)} of {k} factors")
    return factors


def berlekamp_factor(f: Poly) -> list[tuple[Poly, int]]:
    """Factor f into irreducibles with multiplicities, sorted canonically."""
    if not f.bits or f.bits == 1:
        raise InvalidInput("factorization needs a polynomial of degree >= 1")
    if f.bits.bit_length() - 1 > DEGREE_CAP:
        raise CapExceeded(f"degree above cap {DEGREE_CAP}")
    merged: dict[int, int] = {}
    for part, mult in squarefree_decompose(f):
        for g in _berlekamp_split(part.bits):
            merged[g] = merged.get(g, 0) + mult
    out = [(Poly(g), m) for g, m in merged.items()]
    out.sort(key=lambda gm: gm[0].sort_key())
    return out


def _small_prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly) -> bool:
    """Rabin's test; independent of :func:`berlekamp_factor`."""
    n = f.bits.bit_length() - 1
    if n < 1:
        raise InvalidInput("irreducibility needs degree >= 1")
    fb = f.bits
    x = _mod(2, fb)
    if _kernels.sqr_chain(x, n, fb, n) != x:
        return False
    for ell in _small_prime_factors(n):
        h = _kernels.sqr_chain(x, n // ell, fb, n)
        if _gcd(fb, h ^ x) != 1:
            return False
    return True


def product(factors: Iterable[tuple[Poly, int]]) -> Poly:
    result = ONE
    for g, m in factors:
        result = result * (g ** m)
    return result

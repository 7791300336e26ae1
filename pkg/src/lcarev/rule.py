"""Linear rules, their polynomials, and null-boundary evolution.

A rule is the coefficient string lambda_{-rL} .. lambda_0 .. lambda_{rR} plus the
split ``left = rL``.  Configurations are ints with bit i-1 holding cell s_i;
their text form lists s_1 first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CapExceeded,
    NoConstantTerm,
    NotUnilateral,
    ParseError,
    SplitError,
    ZeroRule,
)
from .gf2poly import Poly

BRUTEFORCE_CAP = 20


@dataclass(frozen=True)
class Rule:
    coeffs: str
    left: int

    def __post_init__(self):
        if not self.coeffs or set(self.coeffs) - {"0", "1"}:
            raise ParseError(f"rule must be a nonempty 0/1 string, got {self.coeffs!r}")
        if not 0 <= self.left < len(self.coeffs):
            raise SplitError(f"left={self.left} outside 0..{len(self.coeffs) - 1}")

    @property
    def right(self) -> int:
        return len(self.coeffs) - 1 - self.left

    @property
    def size(self) -> int:
        return len(self.coeffs)

    def lam(self, j: int) -> int:
        """Coefficient at offset j (0 outside the neighbourhood)."""
        k = j + self.left
        return int(self.coeffs[k]) if 0 <= k < len(self.coeffs) else 0

    @property
    def neighbor_vector(self) -> tuple[int, ...]:
        return tuple(range(-self.left, self.right + 1))

    def is_bilateral(self) -> bool:
        return self.left > 0 and self.right > 0

    def is_normalized(self) -> bool:
        return self.coeffs[0] == "1" and self.coeffs[-1] == "1"

    def __str__(self) -> str:
        return f"{self.coeffs} (left={self.left})"


def default_left(size: int) -> int:
    return (size - 1) // 2


def parse_rule(text: str, left: int | None = None) -> Rule:
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ParseError(f"rule must be a nonempty 0/1 string, got {text!r}")
    if left is None:
        left = default_left(len(text))
    if not 0 <= left <= len(text) - 1:
        raise SplitError(f"left={left} outside 0..{len(text) - 1}")
    return Rule(text, left)


def normalize_rule(r: Rule) -> tuple[Rule, int]:
    """Strip zero border coefficients.

    Returns ``(rule, shift)`` where shift is how many positions the left
    border moved right.  If every nonzero coefficient lies strictly on one side
    of offset 0, zeros are kept up to offset 0 so the centre survives; the
    result is then a unilateral rule with lambda_0 = 0.
    """
    c = r.coeffs
    if "1" not in c:
        raise ZeroRule("all-zero rule")
    lo = c.index("1")
    hi = c.rindex("1")
    lo = min(lo, r.left)
    hi = max(hi, r.left)
    return Rule(c[lo : hi + 1], r.left - lo), lo


def core_coeffs(r: Rule) -> str:
    """Coefficient string with all border zeros removed (split ignored)."""
    if "1" not in r.coeffs:
        raise ZeroRule("all-zero rule")
    return r.coeffs.strip("0")


def rule_to_poly(r: Rule) -> Poly:
    """Read the coefficient string MSB first: c_1...c_m -> sum c_i x^(m-i)."""
    return Poly(int(r.coeffs, 2))


def poly_to_rule(f: Poly, left: int | None = None) -> Rule:
    if not f.bits & 1:
        raise NoConstantTerm(f"{f} has f(0) = 0")
    bits = f.to_bits()
    if left is None:
        left = default_left(len(bits))
    if not 0 <= left <= len(bits) - 1:
        raise SplitError(f"left={left} outside 0..{len(bits) - 1}")
    return Rule(bits, left)


# -- configurations ------------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    cells: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a configuration needs at least one cell")
        if self.cells >> self.n:
            raise ValueError("cells beyond n are set")

    @classmethod
    def parse(cls, text: str) -> "Configuration":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ParseError(f"configuration must be a nonempty 0/1 string, got {text!r}")
        return cls(int(text[::-1], 2), len(text))

    def __str__(self) -> str:
        return format(self.cells, f"0{self.n}b")[::-1]

    def cell(self, i: int) -> int:
        """s_i for 1-based i; 0 outside 1..n."""
        return (self.cells >> (i - 1)) & 1 if 1 <= i <= self.n else 0


def _step_bits(r: Rule, cells: int, n: int) -> int:
    full = (1 << n) - 1
    out = 0
    for k, ch in enumerate(r.coeffs):
        if ch == "1":
            j = k - r.left
            out ^= (cells >> j) if j >= 0 else (cells << -j) & full
    return out


def step_config(r: Rule, c: Configuration) -> Configuration:
    """One synchronous update with null boundary."""
    return Configuration(_step_bits(r, c.cells, c.n), c.n)


def evolve(r: Rule, c: Configuration, steps: int) -> list[Configuration]:
    out = [c]
    for _ in range(steps):
        c = step_config(r, c)
        out.append(c)
    return out


def injective_bruteforce(r: Rule, n: int, cap: int = BRUTEFORCE_CAP, linear: bool = False) -> bool:
    """Is the n-cell global map injective?

    Enumerates all 2^n configurations by default.  With ``linear=True`` only
    the n basis images are computed and their independence checked.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapExceeded(f"n={n} above brute-force cap {cap}")
    if linear:
        from ._kernels import rank

        return rank([_step_bits(r, 1 << i, n) for i in range(n)], n) == n
    seen = set()
    for cells in range(1 << n):
        seen.add(_step_bits(r, cells, n))
    return len(seen) == 1 << n


def unilateral_reversibility(r: Rule) -> bool:
    """Unilateral rules are reversible for every n iff lambda_0 = 1.

    Raises :class:`NotUnilateral` for bilateral rules.
    """
    if r.left > 0 and r.right > 0:
        raise NotUnilateral(f"{r} is bilateral")
    return r.lam(0) == 1

"""Reversibility of one-dimensional linear cellular automata over GF(2).

Bitsets are plain Python ints throughout: bit k of a polynomial is the
coefficient of x^k, bit i-1 of a configuration is cell s_i.
"""

from ._kernels import backend
from .errors import LcaError
from .gen import generate_polynomials
from .gf2poly import Poly, berlekamp_factor, is_irreducible, parse_poly
from .intfactor import factor_int
from .period import poly_period, rule_period
from .report import ReversibilityReport
from .rule import Configuration, Rule, parse_rule
from .sbp import is_reversible, reversible_residues_sbp

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "LcaError",
    "Poly",
    "ReversibilityReport",
    "Rule",
    "backend",
    "berlekamp_factor",
    "factor_int",
    "generate_polynomials",
    "is_irreducible",
    "is_reversible",
    "parse_poly",
    "parse_rule",
    "poly_period",
    "reversible_residues_sbp",
    "rule_period",
]

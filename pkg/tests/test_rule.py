import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcarev.errors import CapExceeded, NoConstantTerm, NotUnilateral, ParseError, SplitError, ZeroRule
from lcarev.gf2poly import Poly
from lcarev.oracle import det_gf2, transition_matrix
from lcarev.rule import (
    Configuration,
    Rule,
    core_coeffs,
    default_left,
    evolve,
    injective_bruteforce,
    normalize_rule,
    parse_rule,
    poly_to_rule,
    rule_to_poly,
    step_config,
    unilateral_reversibility,
)

from . import naive


def rules(max_size=9):
    return st.integers(min_value=1, max_value=max_size).flatmap(
        lambda m: st.tuples(st.text("01", min_size=m, max_size=m), st.integers(min_value=0, max_value=m - 1))
    ).filter(lambda t: "1" in t[0]).map(lambda t: Rule(*t))


def configs(n):
    return st.integers(min_value=0, max_value=(1 << n) - 1).map(lambda c: Configuration(c, n))


def test_parse_examples():
    r = parse_rule("11001", 2)
    assert r.neighbor_vector == (-2, -1, 0, 1, 2) and (r.left, r.right) == (2, 2)
    one = parse_rule("1", 0)
    assert one.lam(0) == 1 and one.size == 1
    with pytest.raises(SplitError):
        parse_rule("111", 5)
    with pytest.raises(ParseError):
        parse_rule("1021", 1)
    with pytest.raises(ParseError):
        parse_rule("", 0)


def test_default_split_is_symmetric_or_left_short():
    assert default_left(5) == 2 and default_left(6) == 2 and default_left(1) == 0
    assert parse_rule("110011").left == 2


def test_lam_reads_offsets():
    r = parse_rule("11001", 2)
    assert [r.lam(j) for j in range(-3, 4)] == [0, 1, 1, 0, 0, 1, 0]


def test_normalize_examples():
    assert normalize_rule(parse_rule("0110", 2)) == (Rule("11", 1), 1)
    assert normalize_rule(parse_rule("11001", 2)) == (Rule("11001", 2), 0)
    assert normalize_rule(parse_rule("00100", 2)) == (Rule("1", 0), 2)
    assert normalize_rule(parse_rule("10", 0)) == (Rule("1", 0), 0)
    with pytest.raises(ZeroRule):
        normalize_rule(parse_rule("000", 1))


def test_normalize_keeps_the_centre():
    # every nonzero weight is right of offset 0, so lambda_0 = 0 must survive
    assert normalize_rule(parse_rule("00110", 1)) == (Rule("011", 0), 1)
    assert core_coeffs(parse_rule("00110", 1)) == "11"


@given(rules())
def test_normalize_preserves_evolution(r):
    norm, _ = normalize_rule(r)
    assert norm.coeffs[0] == "1" or norm.left == 0
    assert norm.coeffs[-1] == "1" or norm.right == 0
    rng = random.Random(r.coeffs)
    for n in (1, 4, 9):
        c = Configuration(rng.getrandbits(n), n)
        assert step_config(r, c) == step_config(norm, c)


def test_rule_to_poly_examples():
    assert rule_to_poly(parse_rule("1011011")) == Poly.parse("x^6+x^4+x^3+x+1")
    assert rule_to_poly(parse_rule("11001", 2)) == Poly.parse("x^4+x^3+1")
    assert rule_to_poly(parse_rule("11", 0)) == Poly.parse("x+1")


def test_rule_to_poly_matches_index_formula():
    # f(x) = 1 + sum_{i=1}^{m-1} lambda at string position m-i, times x^i
    for s in ("1011011", "11001", "1000011"):
        m = len(s)
        bits = 1 | sum(int(s[m - 1 - i]) << i for i in range(1, m))
        assert rule_to_poly(parse_rule(s)).bits == bits


def test_poly_to_rule_examples():
    assert poly_to_rule(Poly.parse("x^4+x^3+1"), 2) == Rule("11001", 2)
    assert poly_to_rule(Poly.parse("x+1"), 0) == Rule("11", 0)
    with pytest.raises(SplitError):
        poly_to_rule(Poly.parse("x^2+1"), 5)
    with pytest.raises(NoConstantTerm):
        poly_to_rule(Poly.parse("x^2+x"), 1)


def test_round_trip_all_normalized_bilateral_rules():
    for m in range(3, 10):
        for mid in itertools.product("01", repeat=m - 2):
            s = "1" + "".join(mid) + "1"
            for left in range(1, m - 1):
                r = Rule(s, left)
                assert poly_to_rule(rule_to_poly(r), r.left) == r


def test_step_examples():
    assert str(step_config(parse_rule("111", 1), Configuration.parse("010"))) == "111"
    assert str(step_config(parse_rule("11001", 2), Configuration.parse("000"))) == "000"
    assert str(step_config(parse_rule("11", 0), Configuration.parse("01"))) == "11"
    assert [str(c) for c in evolve(parse_rule("111", 1), Configuration.parse("010"), 2)] == ["010", "111", "010"]


def test_configuration_text_is_leftmost_first():
    c = Configuration.parse("100")
    assert c.cell(1) == 1 and c.cell(2) == 0 and c.cell(0) == 0 and c.cell(4) == 0
    assert str(c) == "100"
    with pytest.raises(ValueError):
        Configuration(0b100, 2)


@given(rules(), st.integers(min_value=1, max_value=16), st.data())
def test_step_matches_cellwise_rule(r, n, data):
    c = data.draw(configs(n))
    cells = [c.cell(i) for i in range(1, n + 1)]
    want = naive.step(r.coeffs, r.left, cells)
    assert [step_config(r, c).cell(i) for i in range(1, n + 1)] == want


@given(rules(), st.integers(min_value=1, max_value=16), st.data())
def test_linearity(r, n, data):
    a, b = data.draw(configs(n)), data.draw(configs(n))
    lhs = step_config(r, Configuration(a.cells ^ b.cells, n))
    assert lhs.cells == step_config(r, a).cells ^ step_config(r, b).cells


@given(rules(), st.integers(min_value=1, max_value=16), st.data())
def test_matrix_consistency(r, n, data):
    c = data.draw(configs(n))
    assert transition_matrix(r, n).apply(c.cells) == step_config(r, c).cells


def test_injective_examples():
    r = parse_rule("111", 1)
    assert not injective_bruteforce(r, 2)
    assert injective_bruteforce(r, 3)
    for n in range(1, 13):
        assert injective_bruteforce(parse_rule("1011", 0), n)
    with pytest.raises(CapExceeded):
        injective_bruteforce(r, 21)


def test_injective_agrees_with_determinant():
    for m in range(1, 8):
        for s in itertools.product("01", repeat=m):
            s = "".join(s)
            if "1" not in s:
                continue
            for left in range(m):
                r = Rule(s, left)
                for n in range(1, 13):
                    det = det_gf2(transition_matrix(r, n))
                    assert injective_bruteforce(r, n) == (det == 1)
                    assert injective_bruteforce(r, n, linear=True) == (det == 1)


def test_unilateral_examples():
    assert unilateral_reversibility(parse_rule("11", 0))
    assert unilateral_reversibility(normalize_rule(parse_rule("10", 0))[0])
    assert not unilateral_reversibility(Rule("011", 0))
    with pytest.raises(NotUnilateral):
        unilateral_reversibility(parse_rule("111", 1))

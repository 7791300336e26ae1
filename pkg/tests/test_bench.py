import json

import pytest

from lcarev.bench import (
    PRIMITIVE_SUITE,
    BenchRecord,
    default_suite,
    det_sequence_period,
    format_table,
    load_suite,
    run_cell,
    run_suite,
)
from lcarev.oracle import dfa_period
from lcarev.period import rule_period
from lcarev.rule import parse_rule

from .test_oracle import bilateral_rules


def test_det_sequence_period_matches_poly_period():
    for r in bilateral_rules(7):
        assert det_sequence_period(r) == rule_period(r).period, r


def test_default_suite_rules():
    suite = default_suite()
    assert [r.coeffs for r, _ in suite] == PRIMITIVE_SUITE
    assert [r.size for r, _ in suite] == [5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27]
    assert all(m == ["TMS", "DFA", "PP"] for _, m in suite)


def test_default_suite_rules_are_primitive():
    # every suite rule has period 2^(m-1) - 1
    for r, _ in default_suite():
        assert rule_period(r).period == (1 << (r.size - 1)) - 1


def test_run_cell_outcomes():
    r = parse_rule("10011")
    for method in ("TMS", "DFA", "PP"):
        rec = run_cell(r, method, budget=5, repeats=1)
        assert not rec.timeout and rec.outcome == "15" and rec.elapsed >= 0
    rec = run_cell(r, "SBP", budget=5, repeats=1)
    assert rec.outcome == "reversible iff n = 0, 3, 4, 5, 6, 7, 8, 11 (mod 15)"


def test_timeout_is_data_and_suite_continues():
    slow = parse_rule("1000010011001")
    records = run_suite([(slow, ["TMS", "PP"]), (parse_rule("111"), ["PP"])], budget=0.5, repeats=1)
    assert [(x.method, x.timeout) for x in records] == [("TMS", True), ("PP", False), ("PP", False)]
    assert records[0].elapsed is None and records[0].outcome is None
    assert "Timeout" in format_table(records)


@pytest.mark.slow
def test_tms_times_out_by_size_13():
    suite = [(r, ["TMS"]) for r, _ in default_suite()[:5]]
    records = run_suite(suite, budget=10.0, repeats=1)
    assert [x.timeout for x in records] == [False, False, False, False, True]


def test_dfa_period_on_small_suite_rules():
    for s in PRIMITIVE_SUITE[:4]:
        r = parse_rule(s)
        assert dfa_period(r) == rule_period(r).period


def test_load_suite(tmp_path):
    path = tmp_path / "suite.json"
    path.write_text(json.dumps([{"rule": "11111", "left": 1, "methods": ["PP", "SBP"]}, {"rule": "111"}]))
    suite = load_suite(path)
    assert [(r.coeffs, r.left, m) for r, m in suite] == [("11111", 1, ["PP", "SBP"]), ("111", 1, ["TMS", "DFA", "PP"])]
    path.write_text(json.dumps([{"rule": "111", "methods": ["XYZ"]}]))
    with pytest.raises(ValueError):
        load_suite(path)


def test_format_table_layout():
    recs = [
        BenchRecord("TMS", "10011", 2, 5, 0.5, "15", False),
        BenchRecord("PP", "10011", 2, 5, 0.001, "15", False),
        BenchRecord("TMS", "1000011", 3, 7, None, None, True),
    ]
    lines = format_table(recs).splitlines()
    assert lines[0].split() == ["Size", "Linear", "Rule", "TMS", "PP"]
    assert lines[2].split() == ["5", "10011", "0.5000s", "0.0010s"]
    assert lines[3].split() == ["7", "1000011", "Timeout", "-"]
    assert format_table([]).splitlines()[0].split() == ["Size", "Linear", "Rule"]


def test_record_json():
    rec = BenchRecord("PP", "111", 1, 3, 0.25, "3", False)
    assert rec.to_json() == {"method": "PP", "rule": "111", "left": 1, "size": 3, "elapsed": 0.25, "outcome": "3", "timeout": False}

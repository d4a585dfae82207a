"""Acceptance matrix at the default seed and default sample sizes.

One status line is printed per criterion.  Run directly with
``python3 tests/test_acceptance.py`` for the lines alone.
"""

import sys

import pytest

from approxpls.suite import SuiteConfig, run_suite

DEFAULTS = SuiteConfig()


@pytest.fixture(scope="module")
def report():
    return run_suite(SuiteConfig(seed=0))


def _result(report, number):
    [res] = [c for c in report.criteria if c.number == number]
    return res


def _emit(capsys, res):
    with capsys.disabled():
        print(f"\n{res.line()}  {res.detail}")


def test_defaults_match_thresholds():
    assert DEFAULTS.yes_per_scheme >= 50
    assert DEFAULTS.exhaust_no >= 20 and DEFAULTS.exhaust_bits == 20
    assert DEFAULTS.fuzz_trials >= 10_000
    assert DEFAULTS.sandwich >= 200


def test_criterion_1_proof_sizes(report, capsys):
    res = _result(report, 1)
    _emit(capsys, res)
    assert res.status == "pass"
    assert res.seconds < 60


def test_criterion_2_completeness(report, capsys):
    res = _result(report, 2)
    _emit(capsys, res)
    assert res.status == "pass"
    assert res.detail["schemes"] == 22
    for name, st in report.schemes.items():
        assert st.completeness_pass == st.yes >= 50, name


def test_criterion_3_exhaustive_soundness(report, capsys):
    res = _result(report, 3)
    _emit(capsys, res)
    assert res.status == "pass"
    for name in res.detail["schemes"]:
        assert report.schemes[name].no_exhaustive >= 20, name


def test_criterion_4_fuzzed_soundness(report, capsys):
    res = _result(report, 4)
    _emit(capsys, res)
    assert res.status == "pass"
    assert sum(st.soundness_accepts for st in report.schemes.values()) == 0


def test_criterion_5_sandwiches(report, capsys):
    res = _result(report, 5)
    _emit(capsys, res)
    assert res.status == "pass"
    assert min(res.detail["instances"].values()) >= 200


def test_criterion_6_duality(report, capsys):
    res = _result(report, 6)
    _emit(capsys, res)
    assert res.status == "pass" and res.detail["pairs"] > 0


def test_criterion_7_path_lemmas(report, capsys):
    res = _result(report, 7)
    _emit(capsys, res)
    assert res.status == "pass" and res.detail["covers"] > 0


def test_criterion_8_reductions(report, capsys):
    res = _result(report, 8)
    _emit(capsys, res)
    assert res.status == "pass" and len(res.detail["schemes"]) == 8


def test_report_is_reproducible(report):
    again = run_suite(SuiteConfig(seed=0, fuzz_trials=200, sandwich=20, lemma_graphs=10), only=[1, 3])
    twice = run_suite(SuiteConfig(seed=0, fuzz_trials=200, sandwich=20, lemma_graphs=10), only=[1, 3])
    assert again.to_json(timing=False) == twice.to_json(timing=False)


if __name__ == "__main__":
    rep = run_suite(SuiteConfig(seed=0))
    for c in rep.criteria:
        print(c.line())
    sys.exit(0 if rep.passed else 1)

import json

import pytest

import qtails


def test_catalog_ids():
    ids = qtails.catalog_ids()
    assert len(ids) == 21
    assert "2.12" in ids
    assert "lemma2" in ids


def test_verify_pass_and_fail():
    passing = qtails.verify("2.12", 12)
    assert passing["status"] == "pass"
    assert passing["first_mismatch"] is None

    failing = qtails.verify("2.13", 12)
    assert failing["status"] == "fail"
    assert failing["first_mismatch"] == 1
    assert failing["residual"][1] == "2"


def test_diagnose_names_the_correction():
    report = qtails.diagnose("2.13", 12)
    assert report["correction"] == "flip sign of the error-series term"


def test_series_and_sequence_coeffs():
    assert qtails.series_coeffs("sigma", 5) == ["1", "1", "-1", "2", "-2"]
    theta2 = qtails.sequence_coeffs("theta", 2, 10)
    assert theta2 == ["1", "2", "1", "1"] + ["0"] * 6
    assert "sigma" in qtails.named_series_ids()


def test_eval_and_scripts():
    assert qtails.eval_coeffs("1/(1-q)", 4) == ["1", "1", "1", "1"]
    result = qtails.run_script("assert_eq(qbinom(2, 1), 1 + q)", 10)
    assert result["all_pass"] is True
    assert json.loads(result["asserts"][0])["status"] == "pass"
    with pytest.raises(RuntimeError):
        qtails.run_script("let x = foo(1)", 10)


def test_combinatorial_tables():
    counts = qtails.ideal_count_list(49)
    assert counts[7] == 2
    assert counts[9] == 1
    assert counts[49] == 3

    ranks = qtails.rank_count_map(4)
    assert sum(ranks.values()) == 5
    assert all(ranks[m] == ranks[-m] for m in ranks)


def test_errors_are_raised():
    with pytest.raises(RuntimeError):
        qtails.verify("nope", 12)
    with pytest.raises(RuntimeError):
        qtails.series_coeffs("sigma", 0)

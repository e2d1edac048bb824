import json

import pytest

import dwv


def test_suite_names():
    assert dwv.suite_names()[0] == "epsilon"
    assert len(dwv.suite_names()) == 11
    assert dwv.model_dimension("vierbein") == 4


def test_epsilon_suite_passes():
    res = dwv.run("dreibein", ["epsilon"], 42, 1)
    assert res
    assert all(r["status"] == "pass" and r["residual_term_count"] == 0 for r in res)


def test_stable_report_is_deterministic():
    a = dwv.report_json("dreibein", ["epsilon", "appendixA"], 7, 2, True)
    assert a == dwv.report_json("dreibein", ["epsilon", "appendixA"], 7, 2, True)
    doc = json.loads(a)
    assert doc["summary"]["fail"] == 0
    assert all(c["elapsed_ms"] == 0 for c in doc["checks"])


def test_invalid_configuration_raises():
    with pytest.raises(ValueError):
        dwv.run("dreibein", ["epsilon"], 42, 0)
    with pytest.raises(ValueError):
        dwv.run("tetrad", ["epsilon"])


def test_engine_laws_hold():
    assert all(v == 0 for v in dwv.engine_checks(3, 5).values())

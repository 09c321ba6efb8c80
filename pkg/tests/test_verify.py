from __future__ import annotations

import json

import pytest

from matroidlab.errors import MatroidError
from matroidlab.verify import CheckResult, SUITES, report_json, run_suite


def test_check_result_bookkeeping():
    c = CheckResult("demo")
    c.ok()
    c.expect(True, "fine")
    c.expect(False, "first")
    c.fail("second")
    assert c.checked == 4 and c.violations == 2 and not c.passed
    assert c.examples == ["first", "second"]
    assert json.loads(json.dumps(c.to_dict()))["violations"] == 2


def test_small_suites_run_and_pass():
    for s in SUITES:
        report = run_suite(s, seed=1, max_n=5)
        assert report["suite"] == s
        for name, c in report["checks"].items():
            assert c["suite"] == s
            if name == "fan-internal-elements":
                continue
            assert c["passed"], (name, c["examples"])


def test_fan_internal_counterexample_is_reported():
    # U(2,4) is a fan (0,1,2,3) and U(2,4) \ 1 = U(2,3) is 3-connected because
    # three elements admit no 2-separation, so an internal element is removable
    from matroidlab.core import uniform
    from matroidlab.connectivity import is_3_connected, is_fan

    M = uniform(2, 4)
    assert is_fan(M, (0, 1, 2, 3)) and is_3_connected(M.delete([1]))
    c = run_suite("connectivity", seed=1, max_n=5)["checks"]["fan-internal-elements"]
    assert not c["passed"]
    assert "U(2,4): (0, 1, 2, 3), 1" in c["examples"]


def test_report_is_deterministic():
    a = report_json(run_suite("core", seed=3, max_n=5))
    b = report_json(run_suite("core", seed=3, max_n=5))
    assert a == b
    assert json.loads(a)["corpus"]["digest"]


def test_unknown_suite():
    with pytest.raises(MatroidError):
        run_suite("bogus")

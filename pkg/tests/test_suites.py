import pytest

from xlab.errors import InputError
from xlab.suites import SUITE_NAMES, verify


def test_circle_exact_suite_passes():
    report = verify("circle-exact")
    assert report.suite == "circle-exact"
    assert report.passed
    assert all(c.passed for c in report.checks)
    assert report.wall_time > 0


def test_tol_override_can_fail_suite():
    report = verify("circle-exact", tol=1e-20)
    assert not report.passed
    head = report.checks[0]
    assert head.tolerance == 1e-20
    assert not head.passed


def test_verify_rejects_bad_input():
    with pytest.raises(InputError):
        verify("no-such-suite")
    with pytest.raises(InputError):
        verify("circle-exact", tol=0.0)
    with pytest.raises(InputError):
        verify("circle-exact", tol=-1.0)


def test_report_shape():
    report = verify("circle-exact")
    d = report.to_dict()
    assert d["suite"] == "circle-exact"
    assert d["passed"] is True
    assert isinstance(d["checks"], list) and d["checks"]
    first = d["checks"][0]
    assert set(first) == {"name", "passed", "measured", "tolerance", "detail"}
    for line in report.lines():
        assert "PASS" in line or "FAIL" in line
    assert report.lines()[0].startswith("[PASS]")
    assert report.lines()[-1].startswith("suite circle-exact:")


def test_suite_names_registered():
    assert SUITE_NAMES == ("circle-exact", "circle-jump", "interval-jump",
                           "lemniscate-jump", "ellipse-jump", "properties")

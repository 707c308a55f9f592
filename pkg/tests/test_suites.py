import pytest

from nearshift.errors import InvalidInputError
from nearshift.suites import available_suites, run_suite


def test_available_suites_exact_set():
    assert available_suites() == [
        "example",
        "lowerbound",
        "thm26",
        "thm35",
        "thm39",
        "wold",
    ]


def test_unknown_suite_rejected():
    with pytest.raises(InvalidInputError):
        run_suite("bogus")


def test_each_suite_produces_checks():
    for name in available_suites():
        checks = run_suite(name, trials=2, seed=1)
        assert len(checks) >= 1
        assert all(hasattr(c, "passed") for c in checks)


def test_all_runs_every_suite():
    checks = run_suite("all", trials=2, seed=1)
    names = " ".join(c.name for c in checks)
    for marker in ("wold-roundtrip", "lowerbound", "functional-calculus",
                   "factor one-sided", "factor modified", "example"):
        assert marker in names
    assert all(c.passed for c in checks)

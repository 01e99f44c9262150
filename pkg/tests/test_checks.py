import pytest

from skewtower.checks import SUITES, Context, check_names, check_seed, run_checks
from skewtower.scheduler import schedule_example_a


def test_every_suite_has_checks():
    for suite in SUITES:
        assert check_names(suite)
    assert len(check_names("all")) == sum(len(check_names(s)) for s in SUITES)
    with pytest.raises(ValueError):
        check_names("nope")


def test_seeds_are_per_check():
    assert check_seed(1, "a.b") != check_seed(1, "a.c")
    assert check_seed(1, "a.b") != check_seed(2, "a.b")


@pytest.mark.parametrize("suite", ["field", "skew", "frac", "laurent", "schedule", "tower", "gext"])
def test_suites_pass_on_example_tower(suite):
    ctx = Context(schedule_example_a(2, (2, 3)), samples=8)
    results = run_checks(ctx, suite, seed=3)
    assert results and all(r.passed for r in results), [r.to_dict() for r in results if not r.passed]


def test_failures_are_reported_not_raised():
    bad = schedule_example_a(2, (2, 3)).with_overrides(l=(2, 4))
    results = run_checks(Context(bad, samples=4), "tower", seed=0)
    assert results and not any(r.passed for r in results)
    assert all("error" in r.witness for r in results)

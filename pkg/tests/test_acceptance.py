"""The ten gate criteria, run once per session and reported one test each.

The heavy lifting lives in fermatlab.acceptance so the same checks are
reachable from `fermatlab suite --acceptance`; here each criterion becomes
its own test for readable reporting, and the details dict is surfaced on
failure.
"""

import pytest

from fermatlab.acceptance import RUNTIME_BUDGET_SECONDS

CRITERION_IDS = list(range(1, 11))


def result_for(suite, cid):
    for res in suite.results:
        if res.cid == cid:
            return res
    raise AssertionError(f"criterion {cid} missing from the suite run")


@pytest.mark.parametrize("cid", CRITERION_IDS)
def test_criterion(acceptance_suite, cid):
    res = result_for(acceptance_suite, cid)
    assert res.passed, f"criterion {cid} ({res.label}) failed: {res.details}"


def test_suite_is_complete(acceptance_suite):
    assert sorted(r.cid for r in acceptance_suite.results) == CRITERION_IDS
    assert acceptance_suite.all_passed


def test_suite_runtime_budget(acceptance_suite):
    assert acceptance_suite.total_elapsed <= RUNTIME_BUDGET_SECONDS

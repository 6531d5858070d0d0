"""The acceptance suite: one test per criterion, each at its stated tolerance."""

import pytest

from visicube.repro import CRITERIA, run_criterion

RESULTS = []


@pytest.mark.slow
@pytest.mark.parametrize("number", [c[0] for c in CRITERIA],
                         ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number):
    res = run_criterion(number)
    RESULTS.append(res)
    print(res.line)
    assert res.passed, res.detail

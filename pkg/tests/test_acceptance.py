"""One test per acceptance criterion; each prints a PASS/FAIL line."""

from __future__ import annotations

import pytest

from hecke_springer.acceptance import CHECKS, run_check

# seconds
BUDGETS = {1: 1.0, 2: 30.0, 4: 120.0, 9: 60.0, 11: 30.0}


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_criterion(number, capsys):
    result = run_check(number)
    budget = BUDGETS.get(number)
    in_time = budget is None or result.seconds < budget
    with capsys.disabled():
        suffix = "" if in_time else f" over budget of {budget:.0f}s"
        print(f"\n{result.line()}{suffix}")
    assert result.passed, result.detail
    assert in_time, f"took {result.seconds:.2f}s, budget {budget}s"

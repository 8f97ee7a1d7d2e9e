"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line with the measured values.  The
lines are also collected and repeated in the terminal summary.
"""

import pytest

from braidobf.acceptance import CRITERIA

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("check", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(check):
    result = check()
    print(result.line())
    ACCEPTANCE_LINES.append(result.line())
    assert result.passed, result.line()

"""All thirteen acceptance criteria, one test and one PASS/FAIL line each."""
import pytest

from cutcomplex.acceptance import CRITERIA, run_criterion

RESULTS = {}
SLOW = {3, 4, 5, 9}


@pytest.mark.parametrize(
    "number",
    [pytest.param(n, marks=pytest.mark.slow) if n in SLOW else n for n in sorted(CRITERIA)],
)
def test_criterion(number, capsys):
    result = run_criterion(number, seed=0)
    RESULTS[number] = result
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail

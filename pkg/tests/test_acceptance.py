"""The twelve acceptance criteria, one test each, at their stated tolerances.

Each verdict line is also collected and echoed in the pytest terminal summary.
"""
import pytest

from stairpoly import verify

VERDICTS: list[str] = []


@pytest.mark.parametrize("number", sorted(verify.CRITERIA))
def test_criterion(number):
    result = verify.run_criterion(number)
    VERDICTS.append(result.line())
    VERDICTS.extend(f"    - {f}" for f in result.failures)
    print(result.line())
    assert result.passed, result.detail

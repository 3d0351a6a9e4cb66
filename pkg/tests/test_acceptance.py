"""One test per acceptance criterion, each at its stated tolerance and budget.

Every criterion prints a single PASS/FAIL line; the lines are repeated in
the terminal summary so they appear in plain ``pytest -v`` output.
"""
import pytest

from dworkzeta import acceptance

LINES: list[str] = []


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number):
    fn = acceptance.CRITERIA[number]
    c = fn(acceptance.DEFAULT_SEED) if number in (1, 7) else fn()
    line = c.line()
    LINES.append(line)
    print(line)
    failed = [ch["label"] for ch in c.checks if not ch["ok"]]
    assert c.passed, f"{line}\nfailed checks: {failed}"

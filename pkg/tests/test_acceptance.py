"""The ten acceptance criteria, one test each.

Every test prints a ``PASS <id>`` or ``FAIL <id>`` line (also under pytest's
output capture). Running this file directly prints the same lines and exits
nonzero when a criterion fails.
"""

import sys

import pytest

from tamefields.suite import CASES, FAIL, PASS, run_case


def _line(result) -> str:
    verdict = PASS if result.status == PASS else FAIL
    return f"{verdict} {result.id}  {result.description}  ({result.seconds:.2f}s)"


@pytest.mark.parametrize("case", CASES, ids=[c.id for c in CASES])
def test_criterion(case, capsys):
    result = run_case(case)
    with capsys.disabled():
        print("\n" + _line(result))
    assert result.status == PASS, result.details


def test_ten_criteria_registered():
    assert [c.id[:2] for c in CASES] == [f"{i:02d}" for i in range(1, 11)]


if __name__ == "__main__":
    failed = 0
    for case in CASES:
        r = run_case(case)
        print(_line(r))
        failed += r.status != PASS
    sys.exit(1 if failed else 0)

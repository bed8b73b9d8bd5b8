"""Acceptance suite: one test per criterion, printing a pass/fail line each.

The experiments themselves live in lowdisc.acceptance so the command line
(`lowdisc reproduce <n>`) runs exactly the code being tested here.
"""

import pytest

from lowdisc.acceptance import ALL_CRITERIA, format_result_line, run_criterion


@pytest.mark.parametrize("cid", sorted(ALL_CRITERIA))
def test_criterion(cid, capsys):
    result = run_criterion(cid)
    with capsys.disabled():
        print(format_result_line(result))
    assert result.passed, result.detail


def test_registry_is_complete():
    assert sorted(ALL_CRITERIA) == list(range(1, 12))
    names = [name for name, _, _ in ALL_CRITERIA.values()]
    assert len(set(names)) == len(names)

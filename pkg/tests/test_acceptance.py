"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from kbsm.acceptance import CRITERIA


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i + 1}" for i in range(len(CRITERIA))])
def test_criterion(criterion):
    result = criterion()
    print(result.line())
    assert result.passed, result.detail


def test_selftest_exit_code(capsys):
    from kbsm.cli import main

    code = main(["selftest"])
    out = capsys.readouterr().out
    print(out)
    assert code == 0
    assert out.count("[PASS]") == len(CRITERIA)

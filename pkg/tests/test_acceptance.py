"""The acceptance suite: each criterion printed as a single pass/fail line."""

import pytest

from qgerbe.selftest import CRITERIA

SEED = 0


@pytest.mark.parametrize("label,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(label, fn, capsys):
    result = fn(SEED)
    ok = result["status"] == "holds"
    with capsys.disabled():
        print(f"ACCEPTANCE {label}: {'PASS' if ok else 'FAIL'}")
    assert ok, result["witness"]

"""One test per acceptance criterion; run with ``-s`` to see the PASS/FAIL lines."""

from __future__ import annotations

import pytest

from ghvmirror.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(k):
    outcome = run_criterion(k)
    print(outcome.line())
    assert outcome.passed, outcome.line()

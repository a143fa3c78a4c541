"""One test per acceptance criterion; each logs a PASS/FAIL line with its measurements."""

import json

import pytest

from parazeta.acceptance import CRITERIA, run_criterion


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_log):
    result = run_criterion(number, seed=0)
    acceptance_log.append(result.line())
    acceptance_log.append("    " + json.dumps(result.detail, sort_keys=True, default=str))
    assert result.passed, result.detail

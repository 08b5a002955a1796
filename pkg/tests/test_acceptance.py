"""Acceptance criteria 1-11; each test prints and records one PASS/FAIL line."""

from __future__ import annotations

import pytest

from acceptance_checks import all_criteria
from conftest import ACCEPTANCE, FIXTURES

CRITERIA = all_criteria(FIXTURES / "predicates.json")


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, detail = CRITERIA[number]()
    ACCEPTANCE[number] = (ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail

"""Acceptance criteria, one test per criterion.

Each test prints ``criterion N name: PASS|FAIL detail``; the same lines are
repeated in the terminal summary so they show up in plain ``pytest`` runs.
"""

import pytest

from fsc import selftest

RESULTS = {}


@pytest.fixture(scope="module")
def results():
    if not RESULTS:
        for r in selftest.run_checks():
            RESULTS[r.number] = r
    return RESULTS


def line(r):
    return f"criterion {r.number:>2} {r.name}: {'PASS' if r.passed else 'FAIL'}  {r.detail}"


@pytest.mark.parametrize("number", [c.number for c in selftest.CHECKS],
                         ids=[c.name for c in selftest.CHECKS])
def test_criterion(results, number):
    r = results[number]
    print(line(r))
    assert r.passed, r.detail


def test_every_criterion_is_covered():
    assert sorted(c.number for c in selftest.CHECKS) == list(range(1, 13))


def test_mutated_construction_fails_the_longest_match_check():
    (r,) = selftest.run_checks("longest-match", mutate=True)
    print(line(r))
    assert not r.passed and "'xa'" in r.detail

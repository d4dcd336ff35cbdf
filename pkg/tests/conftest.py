import pytest

from fsc import oracle
from fsc import regex as rx


def strings(net, max_len=5):
    """Language of an automaton as a set of plain strings."""
    return {"".join(w) for w in oracle.enumerate_language(net, max_len)}


def pairs(net, max_len=4):
    return {("".join(u), "".join(l)) for u, l in oracle.enumerate_relation(net, max_len)}


@pytest.fixture
def c():
    return rx.compile


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, line

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(line(RESULTS[number]))

import sys

import pytest

from stripsdual import Task


def make_task(atoms, init, goal, actions, normalized=True):
    return Task.build(list(atoms), list(init), list(goal), actions, normalized=normalized)


@pytest.fixture
def t1():
    # X={p,q}, I={p}, G={q}, a1=({p},{q},{p}); self-dual
    return make_task("pq", "p", "q", [("a1", "p", "q", "p")])


@pytest.fixture
def t2():
    return make_task("pqr", "p", "r", [("a1", "p", "q", ""), ("a2", "q", "r", "")])


@pytest.fixture
def t3():
    return make_task("pq", "", "q", [("a", "p", "q", "")])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

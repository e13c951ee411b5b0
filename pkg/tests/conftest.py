from __future__ import annotations

import pytest

from calab import PolyRing, QuotientRing, QQ


def ring(variables: str, *rels: str, field=QQ) -> QuotientRing:
    S = PolyRing(variables.split(","), field)
    return QuotientRing(S, [S.parse(r) for r in rels])


@pytest.fixture(scope="session")
def R4():
    """k[x,y,z,w]/(xy)"""
    return ring("x,y,z,w", "x*y")


@pytest.fixture(scope="session")
def R2():
    """k[x,y]/(xy)"""
    return ring("x,y", "x*y")


@pytest.fixture(scope="session")
def R3():
    """k[x,y,z]/(xy)"""
    return ring("x,y,z", "x*y")


@pytest.fixture(scope="session")
def Rcone():
    """k[x,y,z,u]/(xu - yz)"""
    return ring("x,y,z,u", "x*u - y*z")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])

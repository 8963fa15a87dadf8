"""Shared test helpers: a pure-Python set-based model of Z_n[x]/(x^2).

Deliberately independent of the numpy code paths in the package.
"""

import math

import pytest


def elements(n):
    return [(a, b) for a in range(n) for b in range(n)]


def times(n, u, v):
    return ((u[0] * v[1] + u[1] * v[0]) % n, (u[1] * v[1]) % n)


def ideal(n, e):
    return frozenset(times(n, r, e) for r in elements(n))


def vertices(n):
    return [e for e in elements(n) if e != (0, 0) and math.gcd(e[1], n) != 1]


def adjacent(n, u, v, ideals=None):
    iu = ideals[u] if ideals else ideal(n, u)
    iv = ideals[v] if ideals else ideal(n, v)
    return u != v and u not in iv and v not in iu


@pytest.fixture(scope="session")
def ideal_cache():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = {e: ideal(n, e) for e in elements(n)}
        return cache[n]

    return get


# acceptance lines are echoed at the end of the run so they survive capture
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

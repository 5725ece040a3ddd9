import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from simplexgraph import kernels
from simplexgraph.graph_model import Graph


def cycle(n):
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n):
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete(n):
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def star(n, center=0):
    return Graph(n, tuple((center, v) for v in range(n) if v != center))


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


C4 = cycle(4)
PAW = Graph(4, ((0, 1), (0, 2), (1, 2), (2, 3)))  # triangle with a pendant


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, tuple(p for p, k in zip(pairs, keep) if k))


@st.composite
def graph_and_perm(draw, min_n=1, max_n=7):
    g = draw(graphs(min_n, max_n))
    return g, tuple(draw(st.permutations(range(g.n))))


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    with kernels.using_backend(request.param):
        yield request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# --- acceptance summary: one line per criterion at the end of the run -------

_ACCEPTANCE = {}


@pytest.fixture
def acceptance(request):
    """Call with ``(ok, detail)``; the line is printed in the terminal summary."""

    def record(ok, detail=""):
        _ACCEPTANCE[request.node.name] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[1][1:])):
        ok, detail = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")

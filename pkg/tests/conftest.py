"""Shared hypothesis strategies and small graph builders."""

import itertools

from hypothesis import settings, strategies as st

from splitcomp.graph_core import Graph

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def toggle_walks(draw, min_n=2, max_n=12, max_steps=40):
    n = draw(st.integers(min_n, max_n))
    pair = st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda p: p[0] != p[1])
    return n, draw(st.lists(pair, max_size=max_steps))


def cycle(n):
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def matching(pairs):
    return Graph.from_edges(2 * pairs, [(2 * i + 1, 2 * i + 2) for i in range(pairs)])


def complete(n):
    return Graph.from_edges(n, itertools.combinations(range(1, n + 1), 2))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")

import hypothesis.strategies as st
import pytest

from posetcsf.listing import BicolouredGraph, GraphPart, PartListing, VertexPart
from posetcsf.poset import Poset, poset_from_relations

ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, label = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {label}")


@st.composite
def posets(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    p = poset_from_relations(n, chosen)
    perm = draw(st.permutations(range(n)))
    return p.relabel(perm)


@st.composite
def graphs(draw, max_r=4, max_s=4, min_total=1):
    r = draw(st.integers(0, max_r))
    s = draw(st.integers(max(0, min_total - r), max_s))
    cells = [(d, u) for d in range(1, r + 1) for u in range(1, s + 1)]
    edges = draw(st.sets(st.sampled_from(cells))) if cells else set()
    return BicolouredGraph(r, s, frozenset(edges))


@st.composite
def listings(draw, max_vertices=8, max_level=4):
    budget = draw(st.integers(0, max_vertices))
    parts = []
    while budget > 0:
        if budget >= 2 and draw(st.booleans()):
            g = draw(graphs(max_r=min(3, budget), max_s=min(3, budget)).filter(lambda g: 0 < g.size <= budget))
            parts.append(GraphPart(draw(st.integers(1, max_level)), g))
            budget -= g.size
        else:
            parts.append(VertexPart(draw(st.integers(1, max_level))))
            budget -= 1
    return PartListing(tuple(parts))


def labelled_posets(n):
    """Every naturally labelled poset on n vertices (each class appears at least once)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for mask in range(1 << len(pairs)):
        up = [0] * n
        for b, (i, j) in enumerate(pairs):
            if mask >> b & 1:
                up[i] |= 1 << j
        p = Poset(n, up)
        if p.is_valid():
            out.append(p)
    return out


@pytest.fixture(scope="session")
def nine_vertex():
    from posetcsf.listing import parse_listing

    return parse_listing("v2 v1 v3 v3 v1 b1{2x2:1-1,2-1,2-2}")


@pytest.fixture(scope="session")
def example_graph():
    return BicolouredGraph(4, 2, frozenset({(1, 1), (2, 1), (1, 2), (3, 2), (4, 2)}))

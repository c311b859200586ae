import pytest
from hypothesis import given, strategies as st

from smhuim.graph import ItemGraph, coverage, suffix_coverages
from smhuim.model import ConfigurationError

from strategies import graphs


def brute_coverage(g, items):
    covered = set(items)
    for u in items:
        covered |= g.adjacency[u]
    return len(covered)


def test_fixture_coverages(fx, ids):
    g = fx.graph
    assert coverage(g, ids("AC")) == 4
    assert coverage(g, ids("C")) == 3
    assert coverage(g, ()) == 0
    assert suffix_coverages(g, ids("DAC")) == [5, 4, 3]
    assert suffix_coverages(g, ids("C")) == [3]


def test_edgeless():
    g = ItemGraph.edgeless(3)
    assert suffix_coverages(g, [0, 1, 2]) == [3, 2, 1]


def test_graph_structure():
    g = ItemGraph(4, [(0, 1), (1, 0), (0, 2)])
    assert g.edge_count == 2
    assert g.degree(0) == 2
    assert 0 in g.adjacency[1] and 1 in g.adjacency[0]
    with pytest.raises(ConfigurationError):
        ItemGraph(3, [(1, 1)])
    with pytest.raises(ConfigurationError):
        coverage(g, [7])


@st.composite
def graph_and_sets(draw):
    n = draw(st.integers(1, 9))
    g = draw(graphs(n))
    x = draw(st.sets(st.integers(0, n - 1)))
    y = draw(st.sets(st.integers(0, n - 1)))
    return g, x, y


@given(graph_and_sets())
def test_coverage_properties(case):
    g, x, y = case
    cx, cy, cxy = coverage(g, x), coverage(g, y), coverage(g, x | y)
    assert cx == brute_coverage(g, x)
    assert cx <= cxy and cy <= cxy
    assert cxy <= cx + cy
    assert cx <= min(g.vertex_count, len(x) + sum(g.degree(u) for u in x))
    if x:
        assert cx >= len(x)


@given(graph_and_sets(), st.randoms(use_true_random=False))
def test_suffix_coverages_match_definition(case, rnd):
    g, x, _ = case
    items = list(x)
    rnd.shuffle(items)
    if not items:
        return
    got = suffix_coverages(g, items)
    assert got == [brute_coverage(g, items[j:]) for j in range(len(items))]

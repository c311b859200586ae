"""The eight-transaction example database and its item graph.

The graph over items A..H is not printed anywhere, so it is recovered by an
exhaustive search for a graph that reproduces every published number of the
example (per-item coverages, worked ucov/sumcov values, and the TU, TSMU,
EU+RU and CU columns).  The search result is frozen in ``data/fixture_graph.txt``.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from itertools import combinations

from smhuim.graph import ItemGraph, coverage
from smhuim.model import (
    ConfigurationError,
    ItemDictionary,
    ProcessingOrder,
    TransactionDatabase,
)

LABELS = tuple("ABCDEFGH")

ROWS = (
    (("A", 5), ("C", 10), ("D", 2)),
    (("A", 10), ("C", 6), ("E", 6), ("G", 5)),
    (("A", 10), ("B", 4), ("D", 12), ("E", 6), ("F", 5)),
    (("A", 5), ("B", 2), ("C", 3), ("D", 2), ("H", 2)),
    (("B", 8), ("C", 13), ("D", 6), ("E", 3)),
    (("B", 4), ("C", 4), ("E", 3), ("G", 2)),
    (("F", 1), ("G", 2)),
    (("F", 4), ("G", 3)),
)

# Published per-transaction columns under ucov.  EU+RU and CU are for {A, C}
# with items processed alphabetically.
TU = (58, 97, 139, 47, 99, 42, 9, 21)
TSMU = (37, 62, 69, 26, 58, 27, 7, 15)
EU_RU_AC = (58, 97, 0, 41, 0, 0, 0, 0)
CU_AC = (37, 62, 0, 26, 0, 0, 0, 0)

# Closed-neighbourhood sizes forced by the TU column and the worked examples.
SINGLETON_COVERAGE = {"A": 4, "B": 3, "C": 3, "D": 4, "E": 4, "F": 3, "G": 3, "H": 2}
SET_COVERAGE = {("A", "C"): 4, ("A", "C", "D"): 5, ("F", "G"): 4}
# The worked example also names the covered vertices of {A, C}.
SET_COVERED = {("A", "C"): frozenset("ABCD")}

_GRAPH_FILE = "fixture_graph.txt"


def fixture_dictionary() -> ItemDictionary:
    return ItemDictionary.from_labels(LABELS)


def fixture_database() -> TransactionDatabase:
    return TransactionDatabase.from_rows(ROWS, fixture_dictionary())


def alphabetical_order() -> ProcessingOrder:
    return ProcessingOrder.identity(len(LABELS))


def check_fixture_graph(graph: ItemGraph) -> list:
    """Return the list of violated fixture constraints (empty when all hold)."""
    # imported lazily: bounds depends on utility which depends on graph
    from smhuim.bounds import additive_eu, additive_ru, cu, tsmu, tu
    from smhuim.utility import UcovUtility

    d = fixture_dictionary()
    db = fixture_database()
    f = UcovUtility(graph)
    order = alphabetical_order()
    ac = d.ids("AC")
    problems = []
    for label, want in SINGLETON_COVERAGE.items():
        got = coverage(graph, [d.id(label)])
        if got != want:
            problems.append(f"Co({label}) = {got}, expected {want}")
    for labels, want in SET_COVERAGE.items():
        got = coverage(graph, d.ids(labels))
        if got != want:
            problems.append(f"Co({''.join(labels)}) = {got}, expected {want}")
    for labels, want in SET_COVERED.items():
        mask = 0
        for i in d.ids(labels):
            mask |= graph.closed_mask(i)
        got = frozenset(LABELS[v] for v in range(graph.vertex_count) if mask >> v & 1)
        if got != want:
            problems.append(
                f"{''.join(labels)} covers {''.join(sorted(got))}, expected {''.join(sorted(want))}"
            )
    for i, t in enumerate(db.transactions):
        contained = set(ac) <= t.item_ids()
        got = {
            "TU": tu(f, t),
            "TSMU": tsmu(f, t),
            "EU+RU": additive_eu(f, t, ac) + additive_ru(f, t, ac, order) if contained else 0,
            "CU": cu(f, t, ac, order) if contained else 0,
        }
        want = {"TU": TU[i], "TSMU": TSMU[i], "EU+RU": EU_RU_AC[i], "CU": CU_AC[i]}
        for col in got:
            if got[col] != want[col]:
                problems.append(f"T{t.tid} {col} = {got[col]}, expected {want[col]}")
    return problems


def _search_candidates():
    """Yield degree-feasible graphs in increasing edge-bitmask order.

    Edge ``i`` is the i-th pair of ``combinations(range(8), 2)``; the bitmask
    has bit ``i`` set when that edge is present.  Deciding the highest bit
    first, absent before present, enumerates masks in ascending order.
    """
    n = len(LABELS)
    pairs = list(combinations(range(n), 2))
    need = [SINGLETON_COVERAGE[s] - 1 for s in LABELS]
    # remaining[v][i]: number of edges with index < i touching v
    remaining = [[0] * (len(pairs) + 1) for _ in range(n)]
    for v in range(n):
        for i, (a, b) in enumerate(pairs):
            remaining[v][i + 1] = remaining[v][i] + (v in (a, b))
    chosen = []

    def dfs(i):
        # i = number of still-undecided low edges (indices 0..i-1)
        if any(need[v] < 0 or need[v] > remaining[v][i] for v in range(n)):
            return
        if i == 0:
            yield list(chosen)
            return
        a, b = pairs[i - 1]
        yield from dfs(i - 1)
        need[a] -= 1
        need[b] -= 1
        chosen.append((a, b))
        yield from dfs(i - 1)
        chosen.pop()
        need[a] += 1
        need[b] += 1

    yield from dfs(len(pairs))


def derive_fixture_graph() -> ItemGraph:
    """Search for the first graph (by edge bitmask) satisfying every constraint."""
    for edges in _search_candidates():
        graph = ItemGraph(len(LABELS), edges)
        if not check_fixture_graph(graph):
            return graph
    raise ConfigurationError("no 8-vertex graph reproduces the example database")


def count_fixture_graphs() -> int:
    """Number of graphs satisfying every constraint (exhaustive)."""
    return sum(
        1 for edges in _search_candidates()
        if not check_fixture_graph(ItemGraph(len(LABELS), edges))
    )


def fixture_graph() -> ItemGraph:
    """The frozen fixture graph shipped with the package."""
    from smhuim.io import read_graph_text

    text = resources.files("smhuim.data").joinpath(_GRAPH_FILE).read_text("utf-8")
    graph, _ = read_graph_text(text, fixture_dictionary())
    return graph


@dataclass(frozen=True)
class Fixture:
    db: TransactionDatabase
    graph: ItemGraph
    order: ProcessingOrder


def load_fixture() -> Fixture:
    return Fixture(fixture_database(), fixture_graph(), alphabetical_order())

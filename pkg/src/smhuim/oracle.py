"""Reference miners used to check SM-Miner, plus two known pitfalls.

Both oracles are deliberately naive.  ``brute_force_mine`` evaluates the
definition of ``u(X)`` for every subset of the item universe;
``two_phase_mine`` is a level-wise Apriori pruned by TSMWU only, with all
surviving candidates verified in a second pass.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from smhuim.graph import ItemGraph
from smhuim.miner import MiningResult, Pattern, RunStats
from smhuim.model import ConfigurationError, TransactionDatabase
from smhuim.utility import exact_utility, ucov_utility, sum_utility

MAX_BRUTE_FORCE_ITEMS = 20


class OracleRefusal(ConfigurationError):
    """Instance too large for the exhaustive oracle."""


def brute_force_utilities(db: TransactionDatabase, f: Callable) -> dict:
    """Exact utility of every non-empty subset of the items in ``db``."""
    items = db.items_present()
    if len(items) > MAX_BRUTE_FORCE_ITEMS:
        raise OracleRefusal(
            f"brute force refuses {len(items)} items (limit {MAX_BRUTE_FORCE_ITEMS})"
        )
    out = {}
    for size in range(1, len(items) + 1):
        for itemset in combinations(items, size):
            out[itemset] = exact_utility(f, db, itemset)
    return out


def brute_force_mine(db: TransactionDatabase, f: Callable, threshold: float,
                     utilities: dict | None = None) -> dict:
    """``{itemset: utility}`` for every itemset with utility >= threshold.

    ``utilities`` may pass a precomputed :func:`brute_force_utilities` table
    to reuse it across thresholds.
    """
    if utilities is None:
        utilities = brute_force_utilities(db, f)
    return {x: u for x, u in utilities.items() if u >= threshold}


def two_phase_candidates(db: TransactionDatabase, f: Callable, threshold: float) -> list:
    """Phase 1: level-wise candidates whose TSMWU reaches ``threshold``."""
    tx_sets = [t.item_ids() for t in db.transactions]
    tx_value = [f(t.items) for t in db.transactions]

    def tsmwu(itemset):
        s = set(itemset)
        return sum(v for ts, v in zip(tx_sets, tx_value) if s <= ts)

    level = [(i,) for i in db.items_present() if tsmwu((i,)) >= threshold]
    candidates = list(level)
    while level:
        survivors = set(level)
        by_prefix = {}
        for x in level:
            by_prefix.setdefault(x[:-1], []).append(x[-1])
        nxt = []
        for prefix, lasts in by_prefix.items():
            for a, b in combinations(sorted(lasts), 2):
                cand = prefix + (a, b)
                # every (k-1)-subset must have survived (TSMWU is anti-monotone)
                if any(cand[:j] + cand[j + 1:] not in survivors for j in range(len(cand))):
                    continue
                if tsmwu(cand) >= threshold:
                    nxt.append(cand)
        nxt.sort()
        candidates.extend(nxt)
        level = nxt
    return candidates


def two_phase_mine(db: TransactionDatabase, f: Callable, threshold: float,
                   stats: RunStats | None = None) -> dict:
    candidates = two_phase_candidates(db, f, threshold)
    if stats is not None:
        stats.candidates += len(candidates)
    out = {}
    for cand in candidates:
        u = exact_utility(f, db, cand)
        if u >= threshold:
            out[cand] = u
    return out


def _as_result(found: dict, stats: RunStats) -> MiningResult:
    patterns = sorted(Pattern(x, u) for x, u in found.items())
    stats.patterns = len(patterns)
    return MiningResult(patterns, stats)


def run_two_phase(db, f, threshold) -> MiningResult:
    stats = RunStats(threshold=threshold, utility_name=f.name, algo_name="twophase")
    ufc0 = f.ufc
    t0 = time.perf_counter()
    found = two_phase_mine(db, f, threshold, stats)
    stats.wall_millis = (time.perf_counter() - t0) * 1000
    stats.ufc = f.ufc - ufc0
    return _as_result(found, stats)


def run_brute_force(db, f, threshold) -> MiningResult:
    stats = RunStats(threshold=threshold, utility_name=f.name, algo_name="bruteforce")
    ufc0 = f.ufc
    t0 = time.perf_counter()
    utilities = brute_force_utilities(db, f)
    found = brute_force_mine(db, f, threshold, utilities)
    stats.candidates = len(utilities)
    stats.wall_millis = (time.perf_counter() - t0) * 1000
    stats.ufc = f.ufc - ufc0
    return _as_result(found, stats)


def diff_patterns(expected: dict, actual: dict, tol: float = 1e-9) -> list:
    """Human-readable differences between two ``{itemset: utility}`` maps."""
    lines = []
    for x in sorted(set(expected) | set(actual)):
        if x not in actual:
            lines.append(f"missing {x} (expected {expected[x]})")
        elif x not in expected:
            lines.append(f"extra {x} (utility {actual[x]})")
        elif abs(expected[x] - actual[x]) > tol:
            lines.append(f"value {x}: expected {expected[x]}, got {actual[x]}")
    return lines


# -- pitfalls of adapting additive-utility miners ---------------------------

@dataclass
class CounterexampleReport:
    merged_ucov: int
    unmerged_ucov: int
    merged_sum: int
    unmerged_sum: int
    removal_witness: dict = field(default_factory=dict)

    @property
    def merging_unsound(self) -> bool:
        return self.merged_ucov != self.unmerged_ucov

    @property
    def sum_merge_invariant(self) -> bool:
        return self.merged_sum == self.unmerged_sum

    @property
    def removal_unsound(self) -> bool:
        w = self.removal_witness
        return w["f_x"] + w["f_y"] > w["f_xy"]


def merge_transactions(a, b) -> tuple:
    """Sum quantities of two transactions over the same item set."""
    qa, qb = dict(a), dict(b)
    if set(qa) != set(qb):
        raise ConfigurationError("only transactions with identical item sets merge")
    return tuple((i, qa[i] + qb[i]) for i in sorted(qa))


def counterexample_suite(graph: ItemGraph | None = None) -> CounterexampleReport:
    """Evaluate the merging and local-removal counterexamples.

    (a) Merging T7 = {F:1, G:2} and T8 = {F:4, G:3} of the example database
    into {F:5, G:5} changes the ucov utility of {F, G}; Sum is unaffected.
    (b) On a triangle x-y-z, ucov({x}) + ucov({y}) > ucov({x, y}), so
    subtracting a removed item's singleton utility from a transaction
    utility under-estimates the remaining items' utility.
    """
    from smhuim.fixture import fixture_dictionary, fixture_graph

    graph = graph if graph is not None else fixture_graph()
    d = fixture_dictionary()
    f_, g_ = d.id("F"), d.id("G")
    t7 = ((f_, 1), (g_, 2))
    t8 = ((f_, 4), (g_, 3))
    merged = merge_transactions(t7, t8)

    triangle = ItemGraph(3, [(0, 1), (1, 2), (0, 2)])
    x, y = ((0, 1),), ((1, 1),)
    witness = {
        "f_x": ucov_utility(triangle, x),
        "f_y": ucov_utility(triangle, y),
        "f_xy": ucov_utility(triangle, x + y),
    }
    # bound left after "removing" x from T = x ∪ y the additive way
    witness["subtracted_bound_for_y"] = witness["f_xy"] - witness["f_x"]
    return CounterexampleReport(
        merged_ucov=ucov_utility(graph, merged),
        unmerged_ucov=ucov_utility(graph, t7) + ucov_utility(graph, t8),
        merged_sum=sum_utility(merged),
        unmerged_sum=sum_utility(t7) + sum_utility(t8),
        removal_witness=witness,
    )

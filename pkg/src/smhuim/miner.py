"""SMI-lists and the depth-first SM-Miner search.

An SMI-list for itemset X holds, for every transaction containing X, the
weighted items of X (CWI) and the weighted items after X in processing
order (RWI).  The lists of two 1-extensions of a common prefix are joined
on tid to get the list of their union; ``sum_eu`` is the exact utility of
the itemset and ``sum_cu`` bounds the utility of every extension.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, NamedTuple

from smhuim.bounds import singleton_tsmwu
from smhuim.model import ConfigurationError, ProcessingOrder, TransactionDatabase
from smhuim.utility import UtilityFunction


class MinerInvariantError(RuntimeError):
    """An internal precondition of the list join was violated."""


class SMIEntry(NamedTuple):
    tid: int
    cwi: tuple
    rwi: tuple


@dataclass
class SMIList:
    itemset: tuple  # item ids in processing order
    entries: list = field(default_factory=list)
    sum_eu: float = 0
    sum_cu: float = 0

    def tids(self) -> list:
        return [e.tid for e in self.entries]

    def __len__(self):
        return len(self.entries)


@dataclass
class MinerConfig:
    """Threshold, utility and processing order for one run.

    ``threshold`` is re-read at every check, so a result sink may raise it
    during the search (used by :func:`top_k`).
    """

    threshold: float
    utility: UtilityFunction
    order: ProcessingOrder | None = None

    def __post_init__(self):
        if not self.threshold > 0:
            raise ConfigurationError(f"threshold must be > 0, got {self.threshold}")


@dataclass(frozen=True, order=True)
class Pattern:
    itemset: tuple  # item ids, ascending
    utility: float

    def labels(self, dictionary) -> tuple:
        return dictionary.labels(self.itemset)


@dataclass
class RunStats:
    ufc: int = 0
    candidates: int = 0
    patterns: int = 0
    wall_millis: float = 0.0
    threshold: float = 0.0
    utility_name: str = ""
    algo_name: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class MiningResult:
    patterns: list
    stats: RunStats
    order: ProcessingOrder | None = None

    def as_dict(self) -> dict:
        """``{itemset: utility}`` view, convenient for comparisons."""
        return {p.itemset: p.utility for p in self.patterns}


def default_order(tsmwu_values, n_items: int) -> ProcessingOrder:
    """Ascending singleton TSMWU, ties by ascending item id."""
    seq = sorted(range(n_items), key=lambda i: (tsmwu_values[i], i))
    return ProcessingOrder.from_sequence(seq)


def build_initial_lists(db: TransactionDatabase, f: Callable, threshold: float,
                        order: ProcessingOrder | None = None, stats: RunStats | None = None):
    """Two scans: singleton TSMWU, then SMI-lists of the promising items.

    Items whose TSMWU is below ``threshold`` are removed from every
    transaction before the lists (and hence all CU values) are built.
    Returns ``(order, lists)`` with ``lists`` sorted by processing order.
    """
    if not db.transactions:
        return order or ProcessingOrder.identity(db.n_items), []
    tsmwu = singleton_tsmwu(f, db)
    if order is None:
        order = default_order(tsmwu, db.n_items)
    elif len(order) < db.n_items:
        raise ConfigurationError("processing order does not cover every item")
    rank = order.rank
    promising = [i for i in range(db.n_items) if tsmwu[i] >= threshold]
    promising.sort(key=lambda i: rank[i])
    keep = set(promising)
    lists = {i: SMIList((i,)) for i in promising}
    for t in sorted(db.transactions, key=lambda t: t.tid):
        row = sorted((e for e in t.items if e[0] in keep), key=lambda e: rank[e[0]])
        for p, e in enumerate(row):
            cwi = (e,)
            rwi = tuple(row[p + 1:])
            lst = lists[e[0]]
            lst.entries.append(SMIEntry(t.tid, cwi, rwi))
            lst.sum_eu += f(cwi)
            lst.sum_cu += f(cwi + rwi)
    if stats is not None:
        stats.candidates += len(lists)
    return order, [lists[i] for i in promising]


def construct_smi_list(ix: SMIList, iy: SMIList, f: Callable,
                       order: ProcessingOrder | None = None) -> SMIList:
    """Join the lists of ``P+x`` and ``P+y`` (y after x) into the list of ``P+x+y``."""
    if ix.itemset[:-1] != iy.itemset[:-1]:
        raise MinerInvariantError(
            f"lists {ix.itemset} and {iy.itemset} do not share a prefix"
        )
    if order is not None and order.rank[iy.itemset[-1]] <= order.rank[ix.itemset[-1]]:
        raise MinerInvariantError(
            f"item {iy.itemset[-1]} does not rank after {ix.itemset[-1]}"
        )
    out = SMIList(ix.itemset + (iy.itemset[-1],))
    ex_entries, ey_entries = ix.entries, iy.entries
    a = b = 0
    na, nb = len(ex_entries), len(ey_entries)
    sum_eu = sum_cu = 0
    append = out.entries.append
    while a < na and b < nb:
        ex, ey = ex_entries[a], ey_entries[b]
        if ex.tid == ey.tid:
            cwi = ex.cwi + ey.cwi[-1:]
            append(SMIEntry(ex.tid, cwi, ey.rwi))
            sum_eu += f(cwi)
            sum_cu += f(cwi + ey.rwi)
            a += 1
            b += 1
        elif ex.tid < ey.tid:
            a += 1
        else:
            b += 1
    out.sum_eu = sum_eu
    out.sum_cu = sum_cu
    return out


def sm_miner(ext_lists: list, cfg: MinerConfig, sink: Callable,
             stats: RunStats | None = None) -> None:
    """Depth-first search over the given 1-extension lists.

    Emits ``sink(itemset, utility)`` for every list with ``sum_eu >= threshold``
    and extends a list only when its ``sum_cu >= threshold``.  Uses an
    explicit stack, so chain depth is not limited by the recursion limit.
    """
    f = cfg.utility
    order = cfg.order
    stack = [(ext_lists, 0)]
    while stack:
        lists, i = stack.pop()
        if i >= len(lists):
            continue
        stack.append((lists, i + 1))
        ix = lists[i]
        if ix.sum_eu >= cfg.threshold:
            sink(ix.itemset, ix.sum_eu)
        if ix.sum_cu >= cfg.threshold and i + 1 < len(lists):
            ext = [construct_smi_list(ix, iy, f, order) for iy in lists[i + 1:]]
            if stats is not None:
                stats.candidates += len(ext)
            stack.append((ext, 0))


def _run_smminer(db, f, threshold, order=None):
    stats = RunStats(threshold=threshold, utility_name=f.name, algo_name="smminer")
    found = []
    ufc0 = f.ufc
    t0 = time.perf_counter()
    order, lists = build_initial_lists(db, f, threshold, order, stats)
    cfg = MinerConfig(threshold, f, order)
    sm_miner(lists, cfg, lambda items, u: found.append(Pattern(tuple(sorted(items)), u)), stats)
    stats.wall_millis = (time.perf_counter() - t0) * 1000
    stats.ufc = f.ufc - ufc0
    found.sort()
    stats.patterns = len(found)
    return MiningResult(found, stats, order)


ALGORITHMS = ("smminer", "twophase", "bruteforce")


def mine(db: TransactionDatabase, f: UtilityFunction, threshold: float,
         algo: str = "smminer", order: ProcessingOrder | None = None) -> MiningResult:
    """Find every itemset whose utility is at least ``threshold``.

    ``algo`` selects SM-Miner or one of the reference oracles
    (``twophase``, ``bruteforce``).  Patterns are sorted by itemset.
    """
    if not threshold > 0:
        raise ConfigurationError(f"threshold must be > 0, got {threshold}")
    if algo == "smminer":
        return _run_smminer(db, f, threshold, order)
    from smhuim import oracle

    if algo == "twophase":
        return oracle.run_two_phase(db, f, threshold)
    if algo == "bruteforce":
        return oracle.run_brute_force(db, f, threshold)
    raise ConfigurationError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")


@dataclass
class TopKResult:
    patterns: list  # best first
    truncated: bool
    stats: RunStats


def top_k(db: TransactionDatabase, f: UtilityFunction, k: int,
          min_threshold: float | None = None) -> TopKResult:
    """The ``k`` highest-utility itemsets, via a rising threshold.

    The threshold starts at the smallest positive utility step (1 for
    integer-valued utilities) and is raised to the k-th best utility seen
    so far whenever ``k`` patterns are known.  Ties are broken by itemset
    (ascending item ids).  ``truncated`` is set when fewer than ``k``
    itemsets have positive utility.
    """
    if k < 1:
        raise ConfigurationError(f"k must be >= 1, got {k}")
    if min_threshold is None:
        min_threshold = 1 if f.integral else 1e-9
    stats = RunStats(threshold=min_threshold, utility_name=f.name, algo_name="smminer-topk")
    ufc0 = f.ufc
    t0 = time.perf_counter()
    order, lists = build_initial_lists(db, f, min_threshold, None, stats)
    cfg = MinerConfig(min_threshold, f, order)
    best = []  # min-heap of the k largest utilities seen
    found = []

    def sink(items, u):
        if u < cfg.threshold:
            return
        found.append(Pattern(tuple(sorted(items)), u))
        if len(best) < k:
            heapq.heappush(best, u)
        elif u > best[0]:
            heapq.heapreplace(best, u)
        if len(best) == k and best[0] > cfg.threshold:
            cfg.threshold = best[0]
            if len(found) > 4 * k:
                found[:] = [p for p in found if p.utility >= cfg.threshold]

    sm_miner(lists, cfg, sink, stats)
    found.sort(key=lambda p: (-p.utility, p.itemset))
    result = found[:k]
    stats.wall_millis = (time.perf_counter() - t0) * 1000
    stats.ufc = f.ufc - ufc0
    stats.patterns = len(result)
    stats.threshold = cfg.threshold
    return TopKResult(result, len(result) < k, stats)

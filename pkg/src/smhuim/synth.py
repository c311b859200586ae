"""Seeded synthetic databases with a random coverage graph."""

from __future__ import annotations

import random
from itertools import accumulate

from smhuim.graph import ItemGraph
from smhuim.model import ConfigurationError, ItemDictionary, Transaction, TransactionDatabase


def generate_synthetic(n_tx: int, n_items: int, avg_len: float, avg_degree: float,
                       max_qty: int = 10, seed: int = 0, skew: float = 0.8):
    """Random ``(db, graph)`` pair; identical for identical arguments.

    Transaction lengths are normal around ``avg_len`` (clipped to
    ``1..n_items``), items are drawn with Zipf-like popularity
    ``1 / rank**skew`` and quantities uniformly from ``1..max_qty``.  The
    graph has exactly ``round(n_items * avg_degree / 2)`` distinct edges
    placed uniformly at random, so its mean degree is ``avg_degree`` up to
    rounding.  Item labels are ``"1".."n_items"``.
    """
    for name, value in (("n_tx", n_tx), ("n_items", n_items), ("avg_len", avg_len),
                        ("max_qty", max_qty)):
        if value < 1:
            raise ConfigurationError(f"{name} must be >= 1, got {value}")
    if avg_degree < 0:
        raise ConfigurationError(f"avg_degree must be >= 0, got {avg_degree}")
    if avg_len > n_items:
        raise ConfigurationError(f"avg_len {avg_len} exceeds n_items {n_items}")
    n_edges = round(n_items * avg_degree / 2)
    if n_edges > n_items * (n_items - 1) // 2:
        raise ConfigurationError(f"avg_degree {avg_degree} impossible with {n_items} items")

    rng = random.Random(seed)
    dictionary = ItemDictionary.from_labels(str(i + 1) for i in range(n_items))
    popularity = list(range(n_items))
    rng.shuffle(popularity)
    cum = list(accumulate(1.0 / (r + 1) ** skew for r in popularity))
    ids = range(n_items)

    txs = []
    for tid in range(1, n_tx + 1):
        length = min(n_items, max(1, round(rng.gauss(avg_len, avg_len / 3))))
        chosen = set()
        while len(chosen) < length:
            chosen.update(rng.choices(ids, cum_weights=cum, k=length - len(chosen)))
        items = tuple((i, rng.randint(1, max_qty)) for i in sorted(chosen))
        txs.append(Transaction(tid, items))

    edges = set()
    while len(edges) < n_edges:
        u, v = rng.randrange(n_items), rng.randrange(n_items)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    graph = ItemGraph(n_items, sorted(edges))
    return TransactionDatabase(tuple(txs), dictionary), graph


def random_instance(rng: random.Random, max_items: int = 12, max_tx: int = 25,
                    max_qty: int = 10):
    """Small random ``(db, graph)`` for oracle comparisons.

    Item count, transaction count and lengths are drawn uniformly; the graph
    is G(n, p) with p itself random, so sparse and dense graphs both occur.
    """
    n_items = rng.randint(1, max_items)
    n_tx = rng.randint(1, max_tx)
    dictionary = ItemDictionary.from_labels(f"i{k}" for k in range(n_items))
    txs = []
    for tid in range(1, n_tx + 1):
        length = rng.randint(1, n_items)
        chosen = sorted(rng.sample(range(n_items), length))
        txs.append(Transaction(tid, tuple((i, rng.randint(1, max_qty)) for i in chosen)))
    p = rng.random()
    edges = [(u, v) for u in range(n_items) for v in range(u + 1, n_items) if rng.random() < p]
    return TransactionDatabase(tuple(txs), dictionary), ItemGraph(n_items, edges)

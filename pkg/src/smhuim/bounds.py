"""Upper bounds used for pruning: TU/TWU, TSMU/TSMWU, additive EU/RU, CU.

Every bound is an evaluation of the utility function and is therefore
counted by its call counter.
"""

from __future__ import annotations

from typing import Callable, Iterable

from smhuim.model import (
    ConfigurationError,
    ProcessingOrder,
    Transaction,
    TransactionDatabase,
    project,
    suffix_after,
)


def tu(f: Callable, t: Transaction):
    """Additive transaction utility: sum of singleton utilities."""
    return sum(f((e,)) for e in t.items)


def tsmu(f: Callable, t: Transaction):
    """Utility of the whole transaction under ``f``."""
    return f(t.items)


def _containing(db: TransactionDatabase, itemset):
    itemset = frozenset(itemset)
    if not itemset:
        raise ConfigurationError("bound needs a non-empty itemset")
    return (t for t in db.transactions if itemset <= t.item_ids())


def twu(f: Callable, db: TransactionDatabase, itemset: Iterable[int]):
    return sum(tu(f, t) for t in _containing(db, itemset))


def tsmwu(f: Callable, db: TransactionDatabase, itemset: Iterable[int]):
    return sum(tsmu(f, t) for t in _containing(db, itemset))


def additive_eu(f: Callable, t: Transaction, itemset):
    sub = project(t, itemset)
    if sub is None:
        raise ConfigurationError(f"itemset not contained in transaction {t.tid}")
    return sum(f((e,)) for e in sub)


def additive_ru(f: Callable, t: Transaction, itemset, order: ProcessingOrder):
    rest = suffix_after(t, itemset, order)
    if rest is None:
        raise ConfigurationError(f"itemset not contained in transaction {t.tid}")
    return sum(f((e,)) for e in rest)


def eu_ru_total(f: Callable, db: TransactionDatabase, itemset, order: ProcessingOrder):
    return sum(additive_eu(f, t, itemset) + additive_ru(f, t, itemset, order)
               for t in _containing(db, itemset))


def cu(f: Callable, t: Transaction, itemset, order: ProcessingOrder):
    """Combined utility: ``f`` of the itemset together with the items after it."""
    sub = project(t, itemset)
    if sub is None:
        raise ConfigurationError(f"itemset not contained in transaction {t.tid}")
    rest = suffix_after(t, itemset, order)
    return f(order.sort(sub + rest))


def cu_total(f: Callable, db: TransactionDatabase, itemset, order: ProcessingOrder):
    """Sum of :func:`cu`; transactions not containing the itemset add 0."""
    return sum(cu(f, t, itemset, order) for t in _containing(db, itemset))


def singleton_tsmwu(f: Callable, db: TransactionDatabase) -> list:
    """TSMWU of every item id in one database scan (one ``f`` call per transaction)."""
    out = [0] * db.n_items
    for t in db.transactions:
        value = f(t.items)
        for item, _ in t.items:
            out[item] += value
    return out


def singleton_twu(f: Callable, db: TransactionDatabase) -> list:
    out = [0] * db.n_items
    for t in db.transactions:
        value = tu(f, t)
        for item, _ in t.items:
            out[item] += value
    return out

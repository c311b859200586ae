"""Domain model: items, weighted itemsets, transactions and databases.

A weighted itemset is a plain tuple of ``(item_id, quantity)`` pairs.  Keeping
it a bare tuple matters: the miner builds and evaluates millions of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

WeightedItemset = tuple  # tuple[tuple[int, int], ...]


class ConfigurationError(ValueError):
    """Inputs are inconsistent (unknown item, bad order, bad threshold...)."""


@dataclass
class ItemDictionary:
    """Bidirectional map between external string labels and dense item ids."""

    label_to_id: dict = field(default_factory=dict)
    id_to_label: list = field(default_factory=list)

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "ItemDictionary":
        d = cls()
        for label in labels:
            d.add(label)
        return d

    def add(self, label: str) -> int:
        """Register ``label`` (if new) and return its id."""
        item = self.label_to_id.get(label)
        if item is None:
            item = len(self.id_to_label)
            self.label_to_id[label] = item
            self.id_to_label.append(label)
        return item

    def __len__(self) -> int:
        return len(self.id_to_label)

    def __contains__(self, label: str) -> bool:
        return label in self.label_to_id

    def id(self, label: str) -> int:
        try:
            return self.label_to_id[label]
        except KeyError:
            raise ConfigurationError(f"unknown item label {label!r}") from None

    def label(self, item: int) -> str:
        return self.id_to_label[item]

    def ids(self, labels: Iterable[str]) -> tuple:
        return tuple(self.id(s) for s in labels)

    def labels(self, items: Iterable[int]) -> tuple:
        return tuple(self.id_to_label[i] for i in items)


@dataclass(frozen=True)
class ProcessingOrder:
    """Total order on item ids; ``rank[item]`` is the item's position."""

    rank: tuple

    def __post_init__(self):
        if sorted(self.rank) != list(range(len(self.rank))):
            raise ConfigurationError("rank is not a permutation of 0..m-1")

    @classmethod
    def identity(cls, n_items: int) -> "ProcessingOrder":
        return cls(tuple(range(n_items)))

    @classmethod
    def from_sequence(cls, items: Sequence[int]) -> "ProcessingOrder":
        """Build the order in which ``items`` appear (first is lowest)."""
        rank = [0] * len(items)
        for pos, item in enumerate(items):
            rank[item] = pos
        return cls(tuple(rank))

    def __len__(self) -> int:
        return len(self.rank)

    def sequence(self) -> list:
        """Item ids from lowest to highest rank."""
        seq = [0] * len(self.rank)
        for item, pos in enumerate(self.rank):
            seq[pos] = item
        return seq

    def sort(self, itemset: WeightedItemset) -> WeightedItemset:
        rank = self.rank
        return tuple(sorted(itemset, key=lambda e: rank[e[0]]))


@dataclass(frozen=True)
class Transaction:
    tid: int
    items: WeightedItemset

    def __post_init__(self):
        if not self.items:
            raise ConfigurationError(f"transaction {self.tid} is empty")
        if self.tid < 1:
            raise ConfigurationError(f"tid must be >= 1, got {self.tid}")
        seen = set()
        for item, qty in self.items:
            if qty < 1:
                raise ConfigurationError(
                    f"transaction {self.tid}: quantity of item {item} must be >= 1"
                )
            if item in seen:
                raise ConfigurationError(
                    f"transaction {self.tid}: duplicate item {item}"
                )
            seen.add(item)

    def item_ids(self) -> frozenset:
        return frozenset(item for item, _ in self.items)

    def quantity(self, item: int) -> int:
        for i, q in self.items:
            if i == item:
                return q
        raise KeyError(item)


@dataclass(frozen=True)
class TransactionDatabase:
    transactions: tuple
    dictionary: ItemDictionary = field(compare=False)

    def __post_init__(self):
        tids = [t.tid for t in self.transactions]
        if len(set(tids)) != len(tids):
            raise ConfigurationError("transaction ids are not unique")
        m = len(self.dictionary)
        for t in self.transactions:
            for item, _ in t.items:
                if not 0 <= item < m:
                    raise ConfigurationError(
                        f"transaction {t.tid}: item id {item} is not registered"
                    )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[tuple]],
                  dictionary: ItemDictionary | None = None) -> "TransactionDatabase":
        """Build a database from rows of ``(label, quantity)`` pairs; tids are 1..n."""
        dictionary = dictionary if dictionary is not None else ItemDictionary()
        txs = []
        for tid, row in enumerate(rows, start=1):
            items = tuple((dictionary.add(label), int(q)) for label, q in row)
            txs.append(Transaction(tid, items))
        return cls(tuple(txs), dictionary)

    def __len__(self) -> int:
        return len(self.transactions)

    def __iter__(self):
        return iter(self.transactions)

    @property
    def n_items(self) -> int:
        return len(self.dictionary)

    def items_present(self) -> list:
        """Sorted ids of items occurring in at least one transaction."""
        present = set()
        for t in self.transactions:
            present.update(item for item, _ in t.items)
        return sorted(present)

    def by_tid(self, tid: int) -> Transaction:
        for t in self.transactions:
            if t.tid == tid:
                return t
        raise KeyError(tid)


def canonicalize(db: TransactionDatabase, order: ProcessingOrder) -> TransactionDatabase:
    """Return ``db`` with every transaction's entries sorted by ``order``."""
    if len(order) < db.n_items:
        raise ConfigurationError(
            f"order covers {len(order)} items but the database has {db.n_items}"
        )
    txs = tuple(Transaction(t.tid, order.sort(t.items)) for t in db.transactions)
    return TransactionDatabase(txs, db.dictionary)


def project(t: Transaction, itemset) -> WeightedItemset | None:
    """Restrict ``t`` to the item ids in ``itemset``; None if not all present."""
    wanted = set(itemset)
    out = tuple(e for e in t.items if e[0] in wanted)
    if len(out) != len(wanted):
        return None
    return out


def suffix_after(t: Transaction, itemset, order: ProcessingOrder) -> WeightedItemset | None:
    """Entries of ``t`` ranked strictly after every item of ``itemset``.

    Returns None when ``itemset`` is not contained in ``t``. Items ranked
    before the itemset's last item are excluded even if absent from it.
    """
    wanted = set(itemset)
    present = {e[0] for e in t.items}
    if not wanted <= present:
        return None
    rank = order.rank
    last = max((rank[i] for i in wanted), default=-1)
    return tuple(e for e in t.items if rank[e[0]] > last)

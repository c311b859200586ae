"""Subadditive monotone (SM) utility functions and call counting.

Every concrete function maps a weighted itemset (tuple of ``(item, qty)``
pairs) to a non-negative number and returns 0 on the empty itemset.
Integer-valued functions stay in exact ``int`` arithmetic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable

from smhuim.graph import ItemGraph, coverage
from smhuim.model import ConfigurationError, TransactionDatabase, project


class CallCounter:
    """Number of utility evaluations (UFC) since the last reset."""

    __slots__ = ("ufc",)

    def __init__(self):
        self.ufc = 0

    def reset(self):
        self.ufc = 0

    def __repr__(self):
        return f"CallCounter(ufc={self.ufc})"


# -- plain functions --------------------------------------------------------

def sum_utility(itemset) -> int:
    return sum(q for _, q in itemset)


def sqrt_sum_utility(itemset) -> float:
    return math.sqrt(sum(q for _, q in itemset))


def log_product_utility(itemset) -> float:
    # log of the exact integer product: independent of summation order
    prod = 1
    for _, q in itemset:
        prod *= q
    return math.log(prod) if prod > 1 else 0.0


def freq_utility(itemset) -> int:
    return 1 if itemset else 0


def fcov_utility(g: ItemGraph, itemset) -> int:
    return coverage(g, (i for i, _ in itemset))


def sumcov_utility(g: ItemGraph, itemset) -> int:
    return sum(q * g.closed_mask(i).bit_count() for i, q in itemset)


def ucov_utility(g: ItemGraph, itemset) -> int:
    """Coverage utility: quantity-sorted telescoping sum of suffix coverages.

    With entries sorted by ascending quantity ``q_1 <= ... <= q_k`` and
    ``c_j`` the coverage of ``{x_j, ..., x_k}``, the value is
    ``q_1*c_1 + sum_{j>=2} (q_j - q_{j-1}) * c_j``.
    """
    if not itemset:
        return 0
    entries = sorted(itemset, key=lambda e: (e[1], e[0]))
    total = 0
    mask = 0
    # walk from the largest quantity down, growing the suffix union
    for j in range(len(entries) - 1, -1, -1):
        item, q = entries[j]
        mask |= g.closed_mask(item)
        lower = entries[j - 1][1] if j else 0
        total += (q - lower) * mask.bit_count()
    return total


# -- counted function objects ----------------------------------------------

class UtilityFunction:
    """A per-transaction SM utility with a call counter.

    Subclasses implement :meth:`evaluate`.  Calling the object counts the
    call and evaluates.  The SM contract is trusted, not verified; use
    :func:`check_sm` to test a candidate function empirically.
    """

    name = "custom"
    integral = False
    needs_graph = False

    def __init__(self):
        self.counter = CallCounter()

    def evaluate(self, itemset):
        raise NotImplementedError

    def __call__(self, itemset):
        self.counter.ufc += 1
        return self.evaluate(itemset)

    @property
    def ufc(self) -> int:
        return self.counter.ufc

    def __repr__(self):
        return f"<{type(self).__name__} {self.name!r}>"


class FunctionUtility(UtilityFunction):
    """Wrap an arbitrary callable as a counted utility."""

    def __init__(self, name: str, fn: Callable, integral: bool = False):
        super().__init__()
        self.name = name
        self.integral = integral
        self._fn = fn

    def evaluate(self, itemset):
        return self._fn(itemset)


class SumUtility(UtilityFunction):
    name = "sum"
    integral = True

    def evaluate(self, itemset):
        return sum_utility(itemset)


class SqrtSumUtility(UtilityFunction):
    name = "sqrtsum"

    def evaluate(self, itemset):
        return sqrt_sum_utility(itemset)


class LogProductUtility(UtilityFunction):
    name = "logprod"

    def evaluate(self, itemset):
        return log_product_utility(itemset)


class FreqUtility(UtilityFunction):
    name = "freq"
    integral = True

    def evaluate(self, itemset):
        return freq_utility(itemset)


class _GraphUtility(UtilityFunction):
    integral = True
    needs_graph = True

    def __init__(self, graph: ItemGraph):
        super().__init__()
        if graph is None:
            raise ConfigurationError(f"utility {self.name!r} requires a graph")
        self.graph = graph


class FcovUtility(_GraphUtility):
    name = "fcov"

    def evaluate(self, itemset):
        return fcov_utility(self.graph, itemset)


class SumcovUtility(_GraphUtility):
    name = "sumcov"

    def evaluate(self, itemset):
        return sumcov_utility(self.graph, itemset)


class UcovUtility(_GraphUtility):
    name = "ucov"

    def evaluate(self, itemset):
        return ucov_utility(self.graph, itemset)


UTILITIES = {
    "sum": SumUtility,
    "sqrtsum": SqrtSumUtility,
    "logprod": LogProductUtility,
    "freq": FreqUtility,
    "fcov": FcovUtility,
    "sumcov": SumcovUtility,
    "ucov": UcovUtility,
}

GRAPH_UTILITIES = frozenset(n for n, c in UTILITIES.items() if c.needs_graph)


def make_utility(name: str, graph: ItemGraph | None = None) -> UtilityFunction:
    """Instantiate a built-in utility by name (sum, sqrtsum, logprod, freq, fcov, sumcov, ucov)."""
    try:
        cls = UTILITIES[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown utility {name!r}; choose from {', '.join(UTILITIES)}"
        ) from None
    if cls.needs_graph:
        return cls(graph)
    return cls()


def exact_utility(f: Callable, db: TransactionDatabase, itemset: Iterable[int]) -> float:
    """``u(X)``: sum of ``f(X restricted to T)`` over transactions containing X."""
    itemset = frozenset(itemset)
    if not itemset:
        raise ConfigurationError("exact_utility needs a non-empty itemset")
    m = db.n_items
    for i in itemset:
        if not 0 <= i < m:
            raise ConfigurationError(f"unknown item id {i}")
    total = 0
    for t in db.transactions:
        sub = project(t, itemset)
        if sub is not None:
            total += f(sub)
    return total


@dataclass(frozen=True)
class SMViolation:
    kind: str  # "subadditive" or "monotone"
    transaction: tuple
    x: tuple
    y: tuple
    lhs: float
    rhs: float


def check_sm(f: Callable, transactions: Iterable[tuple], trials: int = 1000,
             rng: random.Random | None = None, tol: float = 1e-9) -> list:
    """Randomised SM check of ``f`` over the given weighted itemsets.

    For each trial a transaction is drawn, with random subsets X and Y.
    Subadditivity is checked on ``(X, Y)``, monotonicity on ``X ⊆ X ∪ Y``.
    Returns the violations found (empty means none observed).
    """
    rng = rng or random.Random(0)
    pool = [tuple(t) for t in transactions]
    if not pool:
        return []
    violations = []
    for _ in range(trials):
        t = rng.choice(pool)
        xs = tuple(e for e in t if rng.random() < 0.5)
        ys = tuple(e for e in t if rng.random() < 0.5)
        xy = tuple(e for e in t if e in xs or e in ys)
        fx, fy, fxy = f(xs), f(ys), f(xy)
        if fxy > fx + fy + tol:
            violations.append(SMViolation("subadditive", t, xs, ys, fxy, fx + fy))
        if fx > fxy + tol:
            violations.append(SMViolation("monotone", t, xs, xy, fx, fxy))
    return violations

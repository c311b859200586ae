"""High-utility itemset mining for subadditive monotone utility functions."""

from smhuim.model import (
    ItemDictionary,
    ProcessingOrder,
    Transaction,
    TransactionDatabase,
    canonicalize,
    project,
    suffix_after,
)
from smhuim.graph import ItemGraph
from smhuim.utility import UtilityFunction, exact_utility, make_utility
from smhuim.miner import MinerConfig, Pattern, RunStats, mine, sm_miner, top_k
from smhuim.fixture import load_fixture

__all__ = [
    "ItemDictionary",
    "ItemGraph",
    "MinerConfig",
    "Pattern",
    "ProcessingOrder",
    "RunStats",
    "Transaction",
    "TransactionDatabase",
    "UtilityFunction",
    "canonicalize",
    "exact_utility",
    "load_fixture",
    "make_utility",
    "mine",
    "project",
    "sm_miner",
    "suffix_after",
    "top_k",
]

__version__ = "0.1.0"

import random

import pytest
from hypothesis import given, settings, strategies as st

from smhuim.bounds import cu_total
from smhuim.miner import (
    MinerConfig,
    MinerInvariantError,
    RunStats,
    SMIList,
    build_initial_lists,
    construct_smi_list,
    mine,
    sm_miner,
    top_k,
)
from smhuim.model import (
    ConfigurationError,
    ItemDictionary,
    ProcessingOrder,
    Transaction,
    TransactionDatabase,
)
from smhuim.oracle import brute_force_mine, brute_force_utilities
from smhuim.utility import UTILITIES, FunctionUtility, exact_utility, make_utility

from strategies import instances


def named(db, itemset):
    return [(db.dictionary.label(i), q) for i, q in itemset]


def lists_by_label(db, lists):
    return {"".join(db.dictionary.labels(lst.itemset)): lst for lst in lists}


def test_initial_lists_reproduce_published_tables(fx, ucov):
    _, lists = build_initial_lists(fx.db, ucov, 1, fx.order)
    by = lists_by_label(fx.db, lists)
    a, b = by["A"], by["B"]
    assert a.tids() == [1, 2, 3, 4]
    assert [named(fx.db, e.rwi) for e in a.entries] == [
        [("C", 10), ("D", 2)],
        [("C", 6), ("E", 6), ("G", 5)],
        [("B", 4), ("D", 12), ("E", 6), ("F", 5)],
        [("B", 2), ("C", 3), ("D", 2), ("H", 2)],
    ]
    assert [named(fx.db, e.cwi) for e in b.entries] == [
        [("B", 4)], [("B", 2)], [("B", 8)], [("B", 4)]]
    assert [named(fx.db, e.rwi) for e in b.entries] == [
        [("D", 12), ("E", 6), ("F", 5)],
        [("C", 3), ("D", 2), ("H", 2)],
        [("C", 13), ("D", 6), ("E", 3)],
        [("C", 4), ("E", 3), ("G", 2)],
    ]
    ab = construct_smi_list(a, b, ucov, fx.order)
    assert ab.tids() == [3, 4]
    assert [named(fx.db, e.cwi) for e in ab.entries] == [
        [("A", 10), ("B", 4)], [("A", 5), ("B", 2)]]
    assert [named(fx.db, e.rwi) for e in ab.entries] == [
        [("D", 12), ("E", 6), ("F", 5)], [("C", 3), ("D", 2), ("H", 2)]]


def test_initial_pruning_by_tsmwu(fx, ucov):
    _, lists = build_initial_lists(fx.db, ucov, 126)
    by = lists_by_label(fx.db, lists)
    # TSMWU: H 26, F 91, G 111 fall below 126
    assert set(by) == set("ABCDE")
    assert by["A"].tids() == [1, 2, 3, 4]
    assert all(e.cwi == ((0, q),) for e, q in zip(by["A"].entries, (5, 10, 10, 5)))
    _, none = build_initial_lists(fx.db, ucov, 10_000)
    assert none == []


def test_join_of_f_and_g(fx, ucov):
    _, lists = build_initial_lists(fx.db, ucov, 1, fx.order)
    by = lists_by_label(fx.db, lists)
    fg = construct_smi_list(by["F"], by["G"], ucov, fx.order)
    assert fg.tids() == [7, 8]
    assert fg.sum_eu == 7 + 15


def test_join_disjoint_and_malformed(fx, ucov):
    _, lists = build_initial_lists(fx.db, ucov, 1, fx.order)
    by = lists_by_label(fx.db, lists)
    empty = construct_smi_list(by["A"], by["F"], ucov, fx.order)
    # A and F share only T3
    assert empty.tids() == [3]
    none = construct_smi_list(by["C"], by["F"], ucov, fx.order)
    assert none.tids() == [] and none.sum_eu == none.sum_cu == 0
    with pytest.raises(MinerInvariantError):
        construct_smi_list(by["B"], by["A"], ucov, fx.order)
    ab = construct_smi_list(by["A"], by["B"], ucov, fx.order)
    with pytest.raises(MinerInvariantError):
        construct_smi_list(ab, by["C"], ucov, fx.order)


def filtered_db(db, f, theta):
    """``db`` without items whose singleton TSMWU is below ``theta``."""
    from smhuim.bounds import singleton_tsmwu

    keep = {i for i, v in enumerate(singleton_tsmwu(f, db)) if v >= theta}
    txs = []
    for t in db:
        items = tuple(e for e in t.items if e[0] in keep)
        if items:
            txs.append(Transaction(t.tid, items))
    return TransactionDatabase(tuple(txs), db.dictionary)


def test_list_invariants_after_global_filtering(fx, ucov):
    theta = 100
    f = ucov.evaluate
    order, lists = build_initial_lists(fx.db, ucov, theta, fx.order)
    reduced = filtered_db(fx.db, f, theta)
    pool = list(lists)
    for i, x in enumerate(lists):
        pool.extend(construct_smi_list(x, y, ucov, order) for y in lists[i + 1:])
    for lst in pool:
        assert lst.sum_eu == exact_utility(f, fx.db, lst.itemset)
        if lst.entries:
            assert lst.sum_cu == cu_total(f, reduced, lst.itemset, order)
            assert lst.sum_cu <= cu_total(f, fx.db, lst.itemset, order)
        assert lst.sum_eu <= lst.sum_cu
        tids = lst.tids()
        assert tids == sorted(set(tids))
        last = max(order.rank[j] for j in lst.itemset)
        for e in lst.entries:
            assert {i for i, _ in e.cwi} == set(lst.itemset)
            assert all(order.rank[i] > last for i, _ in e.rwi)
            source = dict(fx.db.by_tid(e.tid).items)
            assert all(source[i] == q for i, q in e.cwi + e.rwi)


def test_sum_cu_equals_cu_total_without_filtering(fx, ucov):
    order, lists = build_initial_lists(fx.db, ucov, 1, fx.order)
    for i, x in enumerate(lists):
        assert x.sum_cu == cu_total(ucov.evaluate, fx.db, x.itemset, order)
        for y in lists[i + 1:]:
            xy = construct_smi_list(x, y, ucov, order)
            if xy.entries:
                assert xy.sum_cu == cu_total(ucov.evaluate, fx.db, xy.itemset, order)


def test_high_threshold_gives_nothing(fx, ucov):
    table = brute_force_utilities(fx.db, ucov.evaluate)
    assert max(table.values()) < 1000
    assert mine(fx.db, ucov, 1000).patterns == []


def test_sum_at_threshold_one_matches_brute_force(fx):
    s = make_utility("sum")
    assert mine(fx.db, s, 1).as_dict() == brute_force_mine(fx.db, s, 1)


def test_single_transaction_freq():
    d = ItemDictionary.from_labels("ab")
    db = TransactionDatabase((Transaction(1, ((0, 1), (1, 1))),), d)
    got = mine(db, make_utility("freq"), 1).as_dict()
    assert got == {(0,): 1, (1,): 1, (0, 1): 1}


def test_threshold_and_empty_db():
    d = ItemDictionary.from_labels("a")
    with pytest.raises(ConfigurationError):
        mine(TransactionDatabase((), d), make_utility("sum"), 0)
    assert mine(TransactionDatabase((), d), make_utility("sum"), 1).patterns == []
    with pytest.raises(ConfigurationError):
        MinerConfig(-1, make_utility("sum"))


def test_stats_are_filled(fx, ucov):
    r = mine(fx.db, ucov, 60)
    s = r.stats
    assert s.algo_name == "smminer" and s.utility_name == "ucov" and s.threshold == 60
    assert s.ufc > 0 and s.candidates >= s.patterns == len(r.patterns) > 0
    assert s.wall_millis >= 0


def test_five_hundred_item_chain():
    n = 500
    d = ItemDictionary.from_labels(str(i) for i in range(n))
    db = TransactionDatabase((Transaction(1, tuple((i, 1) for i in range(n))),), d)
    card = FunctionUtility("card", len, integral=True)
    r = mine(db, card, n)
    assert [p.itemset for p in r.patterns] == [tuple(range(n))]


@pytest.mark.parametrize("name", sorted(UTILITIES))
@settings(max_examples=40, deadline=None)
@given(inst=instances(), data=st.data())
def test_matches_brute_force_under_any_order(name, inst, data):
    db, g = inst
    f = make_utility(name, g)
    table = brute_force_utilities(db, f.evaluate)
    positive = sorted({u for u in table.values() if u > 0})
    if not positive:
        return
    theta = data.draw(st.sampled_from(positive))
    seq = data.draw(st.permutations(range(db.n_items)))
    expected = brute_force_mine(db, f, theta, table)
    for order in (None, ProcessingOrder.from_sequence(seq)):
        got = mine(db, f, theta, order=order).as_dict()
        assert got.keys() == expected.keys()
        for x in expected:
            assert got[x] == pytest.approx(expected[x], abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(inst=instances(), data=st.data())
def test_candidates_shrink_as_threshold_rises(inst, data):
    db, g = inst
    f = make_utility("ucov", g)
    t1 = data.draw(st.integers(1, 200))
    t2 = t1 + data.draw(st.integers(0, 200))
    assert mine(db, f, t2).stats.candidates <= mine(db, f, t1).stats.candidates


def brute_top_k(table, k):
    ranked = sorted(((-u, x) for x, u in table.items() if u > 0))
    return [(x, -nu) for nu, x in ranked[:k]]


def test_top_k_on_fixture(fx, ucov):
    table = brute_force_utilities(fx.db, ucov.evaluate)
    best = top_k(fx.db, ucov, 1)
    assert [(p.itemset, p.utility) for p in best.patterns] == brute_top_k(table, 1)
    assert not best.truncated
    n_pos = sum(1 for u in table.values() if u > 0)
    everything = top_k(fx.db, ucov, n_pos + 5)
    assert everything.truncated
    assert {p.itemset for p in everything.patterns} == set(mine(fx.db, ucov, 1).as_dict())


def test_top_k_freq_picks_max_support(fx):
    f = make_utility("freq")
    table = brute_force_utilities(fx.db, f.evaluate)
    best = top_k(fx.db, f, 1).patterns[0]
    assert best.utility == max(table.values())
    assert len(best.itemset) == 1
    with pytest.raises(ConfigurationError):
        top_k(fx.db, f, 0)


@pytest.mark.parametrize("name", sorted(UTILITIES))
@settings(max_examples=25, deadline=None)
@given(inst=instances(), k=st.integers(1, 12))
def test_top_k_matches_brute_force(name, inst, k):
    db, g = inst
    f = make_utility(name, g)
    table = brute_force_utilities(db, f.evaluate)
    got = top_k(db, f, k)
    want = brute_top_k(table, k)
    assert [p.itemset for p in got.patterns] == [x for x, _ in want]
    assert got.truncated == (len(want) < k)


def test_sink_driven_threshold_is_respected(fx, ucov):
    order, lists = build_initial_lists(fx.db, ucov, 1, fx.order)
    cfg = MinerConfig(1, ucov, order)
    seen = []

    def sink(items, u):
        seen.append(u)
        cfg.threshold = 100

    sm_miner(lists, cfg, sink, RunStats())
    assert all(u >= 100 for u in seen[1:])

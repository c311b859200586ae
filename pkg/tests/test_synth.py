import random

import pytest

from smhuim import io
from smhuim.model import ConfigurationError
from smhuim.synth import generate_synthetic, random_instance


def test_deterministic_bytes():
    a = generate_synthetic(200, 50, 5, 4, 10, seed=3)
    b = generate_synthetic(200, 50, 5, 4, 10, seed=3)
    c = generate_synthetic(200, 50, 5, 4, 10, seed=4)
    assert io.format_database(a[0]) == io.format_database(b[0])
    assert io.format_graph(a[1], a[0].dictionary) == io.format_graph(b[1], b[0].dictionary)
    assert io.format_database(a[0]) != io.format_database(c[0])


def test_mean_degree():
    _, g = generate_synthetic(10, 1000, 3, 4, 5, seed=1)
    assert 3.5 <= g.mean_degree() <= 4.5


def test_shape_and_validation():
    db, g = generate_synthetic(300, 40, 6, 2, 7, seed=0)
    assert len(db) == 300 and g.vertex_count == 40
    assert all(1 <= q <= 7 for t in db for _, q in t.items)
    mean_len = sum(len(t.items) for t in db) / len(db)
    assert 5 <= mean_len <= 7
    with pytest.raises(ConfigurationError):
        generate_synthetic(10, 5, 6, 2)
    with pytest.raises(ConfigurationError):
        generate_synthetic(0, 5, 2, 2)
    with pytest.raises(ConfigurationError):
        generate_synthetic(10, 5, 2, 10)


def test_random_instance_limits():
    rng = random.Random(0)
    for _ in range(50):
        db, g = random_instance(rng)
        assert db.n_items <= 12 and len(db) <= 25
        assert g.vertex_count == db.n_items

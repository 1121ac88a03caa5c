from fractions import Fraction

import pytest

from relladder import LadderConfig, Preset, TooLarge, expand_graph, oracle_enumerate, oracle_factoring, rel2
from relladder.oracle import reachable
from relladder.verify import random_config


def test_reachable_simple():
    g = expand_graph(LadderConfig.uniform("angele_directed", 1, Fraction(1, 2), 1))
    everything = g.components()
    assert reachable(g, everything)
    assert not reachable(g, [c for c in everything if c[0] == "node"])


@pytest.mark.parametrize("preset", list(Preset))
def test_enumerate_equals_factoring(preset, rng):
    for _ in range(5):
        g = expand_graph(random_config(rng, preset, 1))
        assert oracle_enumerate(g) == oracle_factoring(g)


def test_float_enumeration():
    cfg = LadderConfig.uniform("undirected", 1, 0.3, 0.8)
    assert oracle_enumerate(expand_graph(cfg)) == pytest.approx(rel2(cfg), abs=1e-15)


def test_too_large():
    g = expand_graph(LadderConfig.uniform("general_directed", 3, Fraction(1, 2), Fraction(1, 2)))
    with pytest.raises(TooLarge):
        oracle_enumerate(g)
    with pytest.raises(TooLarge):
        oracle_factoring(expand_graph(LadderConfig.uniform("general_directed", 4, Fraction(1, 2), Fraction(1, 2))))


def test_perfect_components_are_free():
    cfg = LadderConfig.uniform("general_directed", 3, 1, 1)
    assert oracle_enumerate(expand_graph(cfg)) == 1 == rel2(cfg)

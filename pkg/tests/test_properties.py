"""Structural properties of Rel2 on random configs (200 examples each)."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from relladder import CellParams, LadderConfig, Preset, expand_graph, oracle_enumerate, rel2
from relladder.ladder import EDGE_FIELDS, FIELDS, REV_FIELDS
from relladder.verify import swap_destination

from conftest import fractions01

PROPERTY = settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def configs(draw, presets=tuple(Preset), sizes=(1, 2, 3), destination=None):
    preset = draw(st.sampled_from(presets))
    n = draw(st.sampled_from(sizes))
    cells = [CellParams(**{f: draw(fractions01) for f in FIELDS}) for _ in range(n + 1)]
    dest = destination or draw(st.sampled_from("ST"))
    return LadderConfig.from_cells(preset, cells, dest)


@PROPERTY
@given(configs(), st.data())
def test_affine_in_each_component(cfg, data):
    key = data.draw(st.sampled_from(cfg.components()))
    x = data.draw(fractions01)
    lo, hi = rel2(cfg.with_value(key, 0)), rel2(cfg.with_value(key, 1))
    assert rel2(cfg.with_value(key, x)) == lo + x * (hi - lo)


@PROPERTY
@given(configs(), st.data())
def test_monotone_in_each_component(cfg, data):
    key = data.draw(st.sampled_from(cfg.components()))
    a, b = sorted([data.draw(fractions01), data.draw(fractions01)])
    assert rel2(cfg.with_value(key, a)) <= rel2(cfg.with_value(key, b))


@PROPERTY
@given(configs())
def test_range(cfg):
    assert 0 <= rel2(cfg) <= 1


@PROPERTY
@given(configs(presets=(Preset.GENERAL_DIRECTED, Preset.UNDIRECTED)))
def test_source_target_permutation_symmetry(cfg):
    assert rel2(swap_destination(cfg)) == rel2(cfg)


@PROPERTY
@given(configs(presets=(Preset.UNDIRECTED,), sizes=(1, 2)))
def test_undirected_recovery(cfg):
    # a general directed ladder with a_rev = a etc. is the undirected ladder
    tied = [c.replace(**{f + "_rev": getattr(c, f) for f in EDGE_FIELDS}) for c in cfg.cells]
    directed = LadderConfig.from_cells(Preset.GENERAL_DIRECTED, tied, cfg.destination)
    assert rel2(directed) == oracle_enumerate(expand_graph(cfg))


@PROPERTY
@given(configs(presets=(Preset.GENERAL_DIRECTED, Preset.ANGELE_DIRECTED)))
def test_directed_at_most_undirected(cfg):
    forward = [c.replace(**{f: 0 for f in REV_FIELDS}) for c in cfg.cells]
    directed = LadderConfig.from_cells(cfg.preset, forward, cfg.destination)
    partner = Preset.UNDIRECTED if cfg.preset is Preset.GENERAL_DIRECTED else Preset.ANGELE_UNDIRECTED
    undirected = LadderConfig.from_cells(partner, forward, cfg.destination)
    assert rel2(directed) <= rel2(undirected)


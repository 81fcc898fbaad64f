import itertools

import numpy as np
import pytest
import hypothesis.strategies as st
from hypothesis import given

from conftest import metric_spaces
from metricglue.generators import c_expansive_diagram
from metricglue.gluing import (BrokenChainError, EquivRelation, GlueDiagram, chain_cost,
                               dii_formula, multiple_pushout, precdx_formula, quotient,
                               quotient_oracle, quotient_semimetric, streamline,
                               within_space_distance)
from metricglue.morphisms import PointMap, identity, is_contraction, is_isometry
from metricglue.numerics import INF
from metricglue.space import (MetricSpace, SemiMetricSpace, coproduct, discretize_segment, distances_close,
                              singleton, two_point)


def line(*coords):
    """Points on the real line labelled a, b, c, ..."""
    labels = "abcdefgh"[:len(coords)]
    c = np.array(coords, dtype=float)
    return MetricSpace(labels, np.abs(c[:, None] - c[None, :]))


@st.composite
def spaces_with_partitions(draw, max_points=6):
    x = draw(metric_spaces(max_points=max_points))
    labels = draw(st.lists(st.integers(0, len(x) - 1), min_size=len(x), max_size=len(x)))
    blocks = {}
    for p, b in zip(x.points, labels):
        blocks.setdefault(b, []).append(p)
    return x, EquivRelation(x.points, blocks.values())


# -- equivalence relations --

def test_relation_must_cover():
    with pytest.raises(ValueError):
        EquivRelation(["a", "b"], [["a"]])
    with pytest.raises(ValueError):
        EquivRelation(["a", "b"], [["a", "b"], ["b"]])
    with pytest.raises(ValueError):
        EquivRelation(["a"], [["a", "z"]])


def test_relation_from_pairs_is_transitive():
    rel = EquivRelation.from_pairs("abcd", [("a", "b"), ("c", "b")])
    assert rel.related("a", "c") and not rel.related("a", "d")
    assert rel.representative("c") == "a"
    assert len(rel) == 2


# -- chains --

def test_chain_cost_trivial():
    x = two_point(1)
    rel = EquivRelation.discrete(x.points)
    assert chain_cost(x, rel, [("x0", "x0")]) == 0.0
    assert chain_cost(x, rel, [("x0", "x1")]) == 1.0


def test_chain_cost_adds_across_identified_points():
    x = line(0, 0.3, 5, 5.4)
    rel = EquivRelation(x.points, [["a"], ["b", "c"], ["d"]])
    assert chain_cost(x, rel, [("a", "b"), ("c", "d")]) == pytest.approx(0.7, abs=1e-12)


def test_chain_must_be_linked():
    x = line(0, 1, 2)
    rel = EquivRelation.discrete(x.points)
    with pytest.raises(BrokenChainError) as info:
        chain_cost(x, rel, [("a", "b"), ("c", "a")])
    assert info.value.index == 0


def test_streamline_collapses_trivial_link():
    x = line(0, 1, 3)
    rel = EquivRelation.discrete(x.points)
    chain = [("a", "b"), ("b", "c")]
    out = streamline(x, rel, chain)
    assert out == [("a", "c")]
    assert chain_cost(x, rel, out) <= chain_cost(x, rel, chain)


def test_streamline_keeps_streamlined_chain():
    x = line(0, 1, 5, 6)
    rel = EquivRelation(x.points, [["a"], ["b", "c"], ["d"]])
    chain = [("a", "b"), ("c", "d")]
    assert streamline(x, rel, chain) == chain


def test_streamline_flags_infinite_pair():
    x = two_point(INF)
    rel = EquivRelation.discrete(x.points)
    assert streamline(x, rel, [("x0", "x1")]) is None


# -- quotients --

def test_full_collapse_of_discrete_pair():
    x = two_point(INF)
    q, proj = quotient(x, EquivRelation(x.points, [x.points]))
    assert len(q) == 1
    assert set(proj.assignment.values()) == {"x0"}


def test_two_segments_glued_at_both_ends():
    a = discretize_segment(1.0, 0.25)
    b = discretize_segment(1.25, 0.25)
    u, (ia, ib) = coproduct([a, b])
    rel = EquivRelation.from_pairs(u.points, [(ia["s0"], ib["s0"]), (ia["s4"], ib["s5"])])
    q, proj = quotient(u, rel)
    assert q.d(proj(ia["s0"]), proj(ia["s4"])) == pytest.approx(1.0, abs=1e-9)
    # the longer segment's far end is reached through the shorter one
    assert q.d(proj(ib["s0"]), proj(ib["s5"])) == pytest.approx(1.0, abs=1e-9)


def test_identity_partition_is_isometric_copy():
    x = line(0, 1, 2.5)
    q, proj = quotient(x, EquivRelation.discrete(x.points))
    assert is_isometry(proj)


def test_zero_distance_classes_are_merged():
    x = SemiMetricSpace(["a", "b", "c"], [[0, 0, 1], [0, 0, 1], [1, 1, 0]])
    q, proj = quotient(x, EquivRelation.discrete(x.points))
    assert q.points == ("a", "c")
    assert proj("b") == "a"
    assert quotient_semimetric(x, EquivRelation.discrete(x.points)).d("a", "b") == 0.0


def test_oracle_identity_partition():
    x = line(0, 0.5, 2)
    assert np.array_equal(quotient_oracle(x, EquivRelation.discrete(x.points)).dist, x.dist)


def test_oracle_full_collapse():
    x = line(0, 0.5, 2)
    out = quotient_oracle(x, EquivRelation(x.points, [x.points]))
    assert out.dist.shape == (1, 1) and out.dist[0, 0] == 0.0


def _brute_chain_infimum(x, rel, a, b):
    """Cheapest chain between two classes, trying every class sequence."""
    blocks = rel.blocks
    best = INF
    others = [k for k in range(len(blocks)) if k not in (a, b)]
    for r in range(len(others) + 1):
        for mids in itertools.permutations(others, r):
            seq = [a, *mids, b]
            cost = 0.0
            for s, t in zip(seq, seq[1:]):
                cost += min(x.d(p, q) for p in blocks[s] for q in blocks[t])
            best = min(best, cost)
    return best


@given(spaces_with_partitions(max_points=5))
def test_oracle_matches_brute_force_chains(case):
    x, rel = case
    oracle = quotient_oracle(x, rel)
    for a, b in itertools.combinations(range(len(rel)), 2):
        expected = _brute_chain_infimum(x, rel, a, b)
        got = oracle.dist[a, b]
        assert (got == expected == INF) or abs(got - expected) <= 1e-9


@given(spaces_with_partitions())
def test_fast_quotient_matches_oracle(case):
    x, rel = case
    assert distances_close(quotient_semimetric(x, rel).dist, quotient_oracle(x, rel).dist, 1e-9)


@given(spaces_with_partitions())
def test_projection_is_contraction_and_constant_on_blocks(case):
    x, rel = case
    q, proj = quotient(x, rel)
    assert is_contraction(proj)
    for block in rel.blocks:
        assert len({proj(p) for p in block}) == 1


# -- multiple pushouts --

def wedge():
    hub = singleton()
    arm = PointMap(hub, two_point(1), {"p0": "x0"})
    return GlueDiagram(hub, [arm, arm])


def test_wedge_of_two_intervals():
    d = wedge()
    po = multiple_pushout(d)
    assert len(po.space) == 3
    tip0, tip1 = po.legs[0]("x1"), po.legs[1]("x1")
    joint = po.hub_map("p0")
    assert po.space.d(joint, tip0) == 1.0 and po.space.d(joint, tip1) == 1.0
    assert po.space.d(tip0, tip1) == 2.0
    assert dii_formula(d, 0, "x1", 1, "x1") == 2.0


def test_isometric_arms_give_isometric_legs():
    hub = two_point(1)
    x1 = MetricSpace(["a", "b", "c"], [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    x2 = MetricSpace(["u", "v"], [[0, 1], [1, 0]])
    d = GlueDiagram(hub, [PointMap(hub, x1, {"x0": "a", "x1": "b"}),
                          PointMap(hub, x2, {"x0": "u", "x1": "v"})])
    po = multiple_pushout(d)
    assert all(is_isometry(leg) for leg in po.legs)


def test_single_identity_arm():
    x = line(0, 1, 3)
    po = multiple_pushout(GlueDiagram(x, [identity(x)]))
    assert is_isometry(po.legs[0])


def test_diagram_needs_arms_from_hub():
    with pytest.raises(ValueError):
        GlueDiagram(singleton(), [])
    with pytest.raises(ValueError):
        GlueDiagram(singleton(), [identity(two_point(1))])


def nstr_like(*lengths, step=0.125):
    hub = two_point(INF)
    arms = []
    for length in lengths:
        seg = discretize_segment(length, step)
        arms.append(PointMap(hub, seg, {"x0": seg.endpoints[0], "x1": seg.endpoints[1]}))
    return GlueDiagram(hub, arms)


def test_hub_formula_cases():
    d = nstr_like(1.5, 1.125)
    assert precdx_formula(d, "x0", "x0") == 0.0
    assert precdx_formula(d, "x0", "x1") == 1.125
    assert precdx_formula(nstr_like(1.5), "x0", "x1") == 1.5
    po = multiple_pushout(d)
    assert po.space.d(po.hub_map("x0"), po.hub_map("x1")) == pytest.approx(1.125, abs=1e-9)


def test_cross_formula_empty_hub():
    empty = MetricSpace([], [])
    d = GlueDiagram(empty, [PointMap(empty, two_point(1), {}), PointMap(empty, singleton(), {})])
    assert dii_formula(d, 0, "x0", 1, "p0") == INF


def test_cross_formula_identified_points():
    d = nstr_like(1.5, 1.125)
    a = d.arms[0]("x1")
    b = d.arms[1]("x1")
    assert dii_formula(d, 0, a, 1, b) == 0.0


def test_within_formula_cases():
    d = nstr_like(2.0, 1.0, step=0.25)
    assert within_space_distance(d, 0, "s3", "s3") == 0.0
    assert within_space_distance(d, 0, "s0", "s8") == 1.0
    x = line(0, 1, 3)
    assert within_space_distance(GlueDiagram(x, [identity(x)]), 0, "a", "c") == 3.0


def test_hub_formula_is_only_an_upper_bound_in_general():
    # Two arms, each shrinking a different hub pair: the glued distance chains
    # the two shortcuts and undercuts the cheapest single arm.
    hub = MetricSpace("abc", [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    x1 = MetricSpace("abc", [[0, 0.3, 1], [0.3, 0, 1], [1, 1, 0]])
    x2 = MetricSpace("abc", [[0, 1, 1], [1, 0, 0.3], [1, 0.3, 0]])
    same = {p: p for p in "abc"}
    d = GlueDiagram(hub, [PointMap(hub, x1, same), PointMap(hub, x2, same)])
    po = multiple_pushout(d)
    glued = po.space.d(po.hub_map("a"), po.hub_map("c"))
    assert glued == pytest.approx(0.6, abs=1e-12)
    assert precdx_formula(d, "a", "c") == 1.0


@given(st.integers(0, 2**32 - 1), st.sampled_from([0.3, 0.5, 1.0]))
def test_pushout_formulas_on_uniformly_scaled_arms(seed, c):
    d = c_expansive_diagram(np.random.default_rng(seed), c)
    po = multiple_pushout(d)
    for y, y2 in itertools.combinations(d.hub.points, 2):
        got = po.space.d(po.hub_map(y), po.hub_map(y2))
        expected = precdx_formula(d, y, y2)
        assert (got == expected == INF) or abs(got - expected) <= 1e-9
    for i, leg in enumerate(po.legs):
        for x, x2 in itertools.combinations(leg.source.points, 2):
            got = po.space.d(leg(x), leg(x2))
            expected = within_space_distance(d, i, x, x2)
            assert (got == expected == INF) or abs(got - expected) <= 1e-9


@given(st.data())
def test_hub_formula_upper_bounds_any_gluing(data):
    hub = data.draw(metric_spaces(max_points=3, prefix="y"))
    arms = []
    for k in range(data.draw(st.integers(1, 3))):
        target = data.draw(metric_spaces(min_points=len(hub), max_points=5, prefix=f"t{k}_"))
        assignment = dict(zip(hub.points, target.points))
        arms.append(PointMap(hub, target, assignment))
    d = GlueDiagram(hub, arms)
    po = multiple_pushout(d)
    for y, y2 in itertools.combinations(hub.points, 2):
        assert po.space.d(po.hub_map(y), po.hub_map(y2)) <= precdx_formula(d, y, y2) + 1e-9

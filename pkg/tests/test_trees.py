import random

import pytest
from hypothesis import given, settings

import finaf
from finaf import (
    FiniteAF,
    Frontier,
    InputError,
    ResourceLimitError,
    TreeSpec,
    alive_at_depth,
    children,
    decision_depth,
    enumerate_extensions,
    extensions_via_tree,
    gadget_fig1,
    is_node,
    parse_stage_set,
)
from finaf.trees import ins_out_sets

from conftest import finite_afs, random_finite_af

CHAIN = FiniteAF(3, frozenset({(0, 1), (1, 2)}))
LOOP = FiniteAF(1, frozenset({(0, 0)}))
MUTUAL = FiniteAF(2, frozenset({(0, 1), (1, 0)}))


def test_spec_validation():
    with pytest.raises(InputError):
        TreeSpec(CHAIN, "preferred")
    with pytest.raises(InputError):
        TreeSpec(CHAIN, "ad", frozenset({0}), frozenset({0}))
    with pytest.raises(InputError):
        TreeSpec(CHAIN, "ad", frozenset({9}))


def test_extensions_frozen():
    assert extensions_via_tree(CHAIN, "stb") == [frozenset({0, 2})]
    assert extensions_via_tree(CHAIN, "ad") == [frozenset(), frozenset({0}), frozenset({0, 2})]
    assert extensions_via_tree(MUTUAL, "co") == [frozenset(), frozenset({0}), frozenset({1})]
    assert extensions_via_tree(LOOP, "stb") == []
    assert extensions_via_tree(CHAIN, "ad", include=[2]) == [frozenset({0, 2})]
    assert extensions_via_tree(CHAIN, "ad", exclude=[0]) == [frozenset()]


@settings(max_examples=150)
@given(finite_afs())
def test_extensions_match_oracle(af):
    for kind in ("ad", "stb", "co"):
        assert sorted(extensions_via_tree(af, kind), key=sorted) == sorted(
            enumerate_extensions(af, kind), key=sorted
        )


@settings(max_examples=100)
@given(finite_afs(max_args=3))
def test_filters_restrict_the_enumeration(af):
    for kind in ("ad", "stb", "co"):
        full = enumerate_extensions(af, kind)
        for a in range(af.n_args):
            with_a = extensions_via_tree(af, kind, include=[a])
            without_a = extensions_via_tree(af, kind, exclude=[a])
            assert sorted(with_a, key=sorted) == sorted(
                [e for e in full if a in e], key=sorted)
            assert sorted(without_a, key=sorted) == sorted(
                [e for e in full if a not in e], key=sorted)


def test_children_walk():
    spec = TreeSpec(CHAIN, "ad")
    level = [()]
    for _ in range(4):
        nxt = []
        for node in level:
            for child in children(spec, node):
                assert is_node(spec, child)
                assert child[:-1] == tuple(node)
                nxt.append(child)
        level = nxt
    assert level  # the admissible tree of a finite framework never dies
    assert not is_node(spec, [99])


def test_ins_out_sets():
    spec = TreeSpec(CHAIN, "ad")
    first = children(spec, [])[0]
    ins, outs, hit, unhit = ins_out_sets(spec, first)
    assert ins == frozenset() and outs == {0}
    assert hit == frozenset() and unhit == frozenset()
    co_spec = TreeSpec(CHAIN, "co")
    deep = [()]
    for _ in range(4):
        deep = [c for node in deep for c in children(co_spec, node)]
    ins, outs, hit, unhit = ins_out_sets(co_spec, deep[0])
    assert ins.isdisjoint(outs)
    assert hit.isdisjoint(unhit)


def test_decision_depth():
    assert decision_depth(CHAIN, "stb") == 3
    assert decision_depth(CHAIN, "co") == 6
    assert decision_depth(CHAIN, "ad") == 6
    dense = FiniteAF(2, frozenset({(0, 0), (0, 1), (1, 0), (1, 1)}))
    assert decision_depth(dense, "ad") == 8
    with pytest.raises(InputError):
        decision_depth(CHAIN, "inf-na")


@settings(max_examples=100)
@given(finite_afs())
def test_aliveness_decides_existence(af):
    for kind in ("ad", "stb", "co"):
        spec = TreeSpec(af, kind)
        assert alive_at_depth(spec, decision_depth(af, kind)) == bool(
            enumerate_extensions(af, kind)
        )


def test_aliveness_with_filters():
    rng = random.Random(11)
    for _ in range(60):
        af = random_finite_af(rng, max_args=4)
        if af.n_args == 0:
            continue
        a = rng.randrange(af.n_args)
        kind = rng.choice(("ad", "stb", "co"))
        spec = TreeSpec(af, kind, frozenset({a}))
        expected = any(a in e for e in enumerate_extensions(af, kind))
        assert alive_at_depth(spec, decision_depth(af, kind)) == expected


def test_infinite_naive_needs_label_cap():
    spec = TreeSpec(gadget_fig1(parse_stage_set("none")), "inf-na")
    with pytest.raises(InputError):
        children(spec, [])
    assert children(spec, [], label_cap=3) == [(1,), (2,), (3,)]


def test_frontier_raises_on_budget():
    g = gadget_fig1(parse_stage_set("all"))
    spec = TreeSpec(g, "ad")
    with pytest.raises(ResourceLimitError):
        alive_at_depth(spec, 30, node_budget=5)


def test_frontier_death_depths():
    # singleton forcing in the all-stages framework kills every branch
    g = gadget_fig1(parse_stage_set("all"))
    f = Frontier(TreeSpec(g, "ad", frozenset({0})))
    assert not f.advance(100)
    assert f.depth <= 8
    g12 = gadget_fig1(parse_stage_set("1,2"))
    dead = Frontier(TreeSpec(g12, "ad", frozenset({4})))
    assert not dead.advance(100)
    assert dead.depth == 5
    alive = Frontier(TreeSpec(g12, "ad", frozenset({8})))
    assert alive.advance(60)


def test_stable_tree_pads_with_attackers():
    # beyond the finite framework the stable tree continues unforced
    spec = TreeSpec(LOOP, "stb")
    assert not alive_at_depth(spec, 1)
    assert alive_at_depth(TreeSpec(MUTUAL, "stb"), 12)

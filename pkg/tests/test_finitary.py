import pytest

import finaf
from finaf import (
    FiniteAF,
    InputError,
    StageSet,
    disjoint_union,
    embed_finite,
    enumerate_extensions,
    gadget_chain_w,
    gadget_fig1,
    gadget_fig2,
    gadget_stars,
    gadget_tree_cf,
    gadget_unistb,
    parse_stage_set,
    truncate,
    truncation_names,
)

CHAIN = FiniteAF(3, frozenset({(0, 1), (1, 2)}))


def rows(faf, count):
    return [(faf.name_of(m), sorted(faf.attackers_of(m))) for m in range(count)]


# --- stage sets ---------------------------------------------------------


def test_parse_stage_set():
    assert [m for m in range(8) if parse_stage_set("all").contains(m)] == list(range(8))
    assert [m for m in range(8) if parse_stage_set("1,2").contains(m)] == [1, 2]
    assert parse_stage_set("none").bound == -1
    assert parse_stage_set("").member_count() == 0
    arith = parse_stage_set("1+3k")
    assert [m for m in range(12) if arith.contains(m)] == [1, 4, 7, 10]
    assert parse_stage_set("1,,2").member_count() == 2
    for bad in ("2+", "3k", "evens", "1-4"):
        with pytest.raises(InputError):
            parse_stage_set(bad)


def test_stage_set_helpers():
    s = StageSet.arithmetic(1, 3)
    assert s.label == "1+3k"
    assert not s.is_finite
    assert s.member_count() is None
    assert s.kth_member(2) == 7
    assert s.members_below(9) == [1, 4, 7]

    fe = StageSet.from_elements([4, 1])
    assert fe.label == "{1,4}"
    assert fe.bound == 4
    assert fe.is_finite
    assert fe.member_count() == 2
    assert StageSet.empty().member_count() == 0
    assert StageSet.always().contains(10**9)


# --- naming and truncation ---------------------------------------------


@pytest.mark.parametrize("faf", [
    gadget_fig1(parse_stage_set("1,2")),
    gadget_stars(parse_stage_set("all")),
    gadget_stars(3),
    gadget_fig2(lambda i: StageSet.from_elements([0])),
    gadget_chain_w(parse_stage_set("all")),
    gadget_unistb(lambda i: StageSet.empty()),
], ids=["fig1", "stars", "stars3", "fig2", "chain_w", "unistb"])
def test_name_index_roundtrip(faf):
    for m in range(24):
        assert faf.index_of(faf.name_of(m)) == m
    with pytest.raises(InputError):
        faf.index_of("no_such_argument", search_limit=200)


def test_truncate_is_prefix():
    g = gadget_fig1(parse_stage_set("1,2"))
    big = truncate(g, 20)
    for n in (0, 1, 7, 13):
        small = truncate(g, n)
        assert small.n_args == n
        assert small.attacks == frozenset(
            (x, y) for x, y in big.attacks if x < n and y < n
        )
    with pytest.raises(InputError):
        truncate(g, -1)


def test_truncation_names():
    g = gadget_stars(2)
    assert truncation_names(g, 5) == [g.name_of(m) for m in range(5)]
    assert truncation_names(g, 0) == []


def test_embed_spiky():
    emb = embed_finite(CHAIN)
    assert truncate(emb, 3) == CHAIN
    assert [emb.name_of(m) for m in range(5)] == ["x0", "x1", "x2", "pad3", "pad4"]
    # padding is self-refuting, so finite-semantics answers are preserved
    for m in (3, 4, 11):
        assert m in emb.attackers_of(m)


def test_embed_guarded():
    emb = embed_finite(CHAIN, pad="guarded")
    assert emb.name_of(3) == "guard"
    assert sorted(emb.attackers_of(3)) == []
    assert sorted(emb.attackers_of(4)) == [3, 4]
    # the guard joins every stable extension and covers the padding
    assert enumerate_extensions(truncate(emb, 7), "stb") == [frozenset({0, 2, 3})]
    with pytest.raises(InputError):
        embed_finite(CHAIN, pad="soft")


# --- gadget layouts ------------------------------------------------------


def test_fig1_layout():
    g = gadget_fig1(parse_stage_set("1,2"))
    assert [g.name_of(m) for m in range(14)] == [
        "a0", "a1", "a2", "a3", "b1", "a4", "a5", "b2",
        "a6", "a7", "a8", "a9", "a10", "a11",
    ]
    assert rows(g, 9) == [
        ("a0", [1]), ("a1", [2]), ("a2", [3, 4]), ("a3", [4, 5]), ("b1", [4]),
        ("a4", [6, 7]), ("a5", [7, 8]), ("b2", [7]), ("a6", [9]),
    ]


def test_fig1_finite_stages_leave_the_tail_plain():
    # beyond the last stage the even chain is only attacked by its successor
    t = 2
    g = gadget_fig1(parse_stage_set("1,2"))
    for m in range(t + 1, t + 21):
        idx = g.index_of(f"a{2 * m}")
        assert sorted(g.attackers_of(idx)) == [g.index_of(f"a{2 * m + 1}")]


def test_fig1_empty_stage_set_is_a_chain():
    g = gadget_fig1(parse_stage_set("none"))
    assert rows(g, 4) == [("a0", [1]), ("a1", [2]), ("a2", [3]), ("a3", [4])]


def test_stars_layout():
    g = gadget_stars(parse_stage_set("all"))
    assert rows(g, 6) == [
        ("c0", []), ("l0_1", [0]), ("c1", []), ("l0_2", [0]), ("l1_1", [2]), ("c2", []),
    ]
    # finite form packs the centers first
    g4 = gadget_stars(2)
    assert truncation_names(g4, 4) == ["c0", "c1", "l0_1", "l1_1"]


def test_stars_center_leaf_invariant():
    g = gadget_stars(parse_stage_set("all"))
    for m in range(40):
        name = g.name_of(m)
        att = sorted(g.attackers_of(m))
        if name.startswith("c"):
            assert att == []
        else:
            center = int(name[1:].split("_")[0])
            assert att == [g.index_of(f"c{center}")]


def test_fig2_layout():
    g = gadget_fig2(lambda i: StageSet.from_elements([0]))
    assert rows(g, 6) == [
        ("a0", []), ("d1_0", [2, 4]), ("a1", [0, 2]),
        ("d2_0", [6, 8]), ("a2", [1, 2]), ("d3_0", [10, 12]),
    ]


def test_fig2_extra_cardinality_members_self_attack():
    card = lambda i: parse_stage_set("0,5") if i == 1 else parse_stage_set("0")
    g = gadget_fig2(card)
    d11 = g.index_of("d1_1")
    assert d11 == 3
    assert d11 in g.attackers_of(d11)
    assert g.index_of("d1_0") in g.attackers_of(d11)


def test_unistb_layout():
    g = gadget_unistb(lambda i: StageSet.empty())
    assert rows(g, 6) == [
        ("a0", [1]), ("b0", [0]), ("a1", [0, 3]),
        ("b1", [0, 2]), ("a2", [0, 2, 5]), ("b2", [0, 2, 4]),
    ]
    g2 = gadget_unistb(lambda i: parse_stage_set("all") if i == 0 else StageSet.empty())
    assert sorted(g2.attackers_of(2)) == [3]
    assert sorted(g2.attackers_of(4)) == [2, 5]


def test_chain_w_layout():
    g = gadget_chain_w(parse_stage_set("1,3"))
    assert rows(g, 8) == [
        ("a0_0", [1]), ("a0_1", [3]), ("a1_0", [4]), ("a0_2", [6]),
        ("a1_1", [7]), ("a2_0", [8]), ("a0_3", [10]), ("a1_2", []),
    ]


def test_tree_cf_spine():
    g = gadget_tree_cf(lambda path: all(c == 0 for c in path))
    assert rows(g, 4) == [("n", []), ("n_0", []), ("n_0_0", []), ("n_0_0_0", [])]


def test_tree_cf_binary():
    g = gadget_tree_cf(lambda path: all(c <= 1 for c in path))
    assert rows(g, 6) == [
        ("n", []), ("n_0", []), ("n_1", [1]), ("n_0_0", [2]),
        ("n_0_1", [2, 3]), ("n_1_0", [1, 3, 4]),
    ]
    assert g.index_of("n_0_1") == 4


def test_disjoint_union():
    u = disjoint_union(gadget_stars(1), gadget_chain_w(parse_stage_set("all")))
    assert [u.name_of(m) for m in range(4)] == ["L.c0", "R.a0_0", "L.l0_1", "R.a1_0"]
    # left occupies evens, right odds, with attacks shifted accordingly
    assert sorted(u.attackers_of(2)) == [0]
    assert sorted(u.attackers_of(3)) == [5]
    assert u.index_of("R.a1_1") == 5


def test_finitary_description():
    g = gadget_chain_w(parse_stage_set("all"))
    assert "chains" in g.description

import random
from itertools import product

import pytest
from hypothesis import given, settings

from conftest import graphs, listings
from posetcsf.listing import (
    BicolouredGraph,
    GraphPart,
    LinListing,
    ListingError,
    ListingSyntaxError,
    PartListing,
    VertexPart,
    circulate,
    combine,
    commute,
    find_listing,
    listing_from_json,
    listing_to_json,
    listing_to_poset,
    parse_graph,
    parse_listing,
    peel,
    serialize_listing,
    two_level_word_to_graph,
)
from posetcsf.poset import (
    PosetClass,
    antichain,
    canonical_key,
    chain,
    enumerate_posets,
    is_2plus2_free,
    is_3plus1_free,
)

A, B, C, D, E_, F, G, H, I = range(9)


def key(L):
    return canonical_key(listing_to_poset(L))


def word(levels):
    return PartListing(tuple(VertexPart(i) for i in levels))


# -- listing to poset ----------------------------------------------------------------


def test_nine_vertex_listing_relations(nine_vertex):
    p = listing_to_poset(nine_vertex)
    want = {(x, y) for x in (B, E_, F, G) for y in (C, D)}
    want |= {(A, C), (A, D)} | {(x, y) for x in (B, E_) for y in (H, I)}
    want |= {(F, H), (G, H), (G, I)}
    assert set(p.relations()) == want


def test_small_listings():
    assert listing_to_poset(parse_listing("v1 v1")) == antichain(2)
    assert listing_to_poset(parse_listing("v1 v2")) == chain(2)
    assert listing_to_poset(parse_listing("")).n == 0


@settings(max_examples=300, deadline=None)
@given(listings())
def test_listing_posets_are_three_plus_one_free(L):
    assert is_3plus1_free(listing_to_poset(L))


def test_thousand_random_listings_are_three_plus_one_free():
    rng = random.Random(11)
    for _ in range(1000):
        parts = []
        budget = rng.randint(1, 8)
        while budget > 0:
            if budget >= 2 and rng.random() < 0.4:
                r = rng.randint(1, min(3, budget - 1))
                s = rng.randint(1, min(3, budget - r))
                edges = {(d, u) for d in range(1, r + 1) for u in range(1, s + 1) if rng.random() < 0.5}
                parts.append(GraphPart(rng.randint(1, 4), BicolouredGraph(r, s, frozenset(edges))))
                budget -= r + s
            else:
                parts.append(VertexPart(rng.randint(1, 5)))
                budget -= 1
        assert is_3plus1_free(listing_to_poset(PartListing(tuple(parts))))


# -- rewrites -------------------------------------------------------------------------


def test_commute_examples(nine_vertex):
    swapped = commute(nine_vertex, 1)
    assert serialize_listing(swapped) == "v2 v3 v1 v3 v1 b1{2x2:1-1,2-1,2-2}"
    assert listing_to_poset(swapped) == listing_to_poset(nine_vertex).relabel([0, 2, 1] + list(range(3, 9)))
    assert serialize_listing(commute(parse_listing("v1 v3"), 0)) == "v3 v1"
    with pytest.raises(ListingError):
        commute(parse_listing("v1 v2"), 0)


def test_circulate_examples(nine_vertex):
    assert serialize_listing(circulate(nine_vertex)) == "v1 v3 v3 v1 b1{2x2:1-1,2-1,2-2} v1"
    assert key(circulate(nine_vertex)) == key(nine_vertex)
    assert circulate(word([2])) == word([1])
    with pytest.raises(ListingError):
        circulate(parse_listing("v1 v2"))


def test_combine_examples(nine_vertex):
    got = combine(nine_vertex, 4, 5)
    assert got.parts[-1] == GraphPart(1, parse_graph("3x2:1-1,1-2,2-1,3-1,3-2"))
    assert key(got) == key(nine_vertex)
    single = parse_listing("v1 b1{2x2:1-1}")
    assert combine(single, 1, 1) == single
    assert combine(parse_listing("v1 v2"), 0, 1) == PartListing((GraphPart(1, parse_graph("1x1:1-1")),))
    with pytest.raises(ListingError):
        combine(parse_listing("v1 v3"), 0, 1)


def test_two_level_words():
    assert two_level_word_to_graph(word([1, 1, 2, 2, 2])) == BicolouredGraph.complete(2, 3)
    assert two_level_word_to_graph(word([2, 2, 1, 1, 1])) == BicolouredGraph(3, 2)
    star = two_level_word_to_graph(word([1, 1, 1, 1, 2, 1]))
    assert star == BicolouredGraph(5, 1, frozenset({(1, 1), (2, 1), (3, 1), (4, 1)}))


def test_peel_examples():
    assert peel(PartListing((GraphPart(1, BicolouredGraph.complete(2, 3)),))) == word([1, 1, 2, 2, 2])
    assert peel(PartListing((GraphPart(2, BicolouredGraph(3, 2)),))) == word([3, 3, 2, 2, 2])
    # a down vertex joined to every up vertex peels off first
    assert peel(parse_listing("b1{2x2:1-1,2-1,2-2}")) == word([1, 2, 1, 2])
    tangle = parse_listing("b1{2x2:1-1,2-2}")
    assert peel(tangle) == tangle


@settings(max_examples=300, deadline=None)
@given(listings())
def test_rewrites_preserve_poset(L):
    k = key(L)
    assert key(peel(L)) == k
    if L.parts and L.parts[0].level >= 2:
        assert key(circulate(L)) == k
    for i in range(len(L.parts) - 1):
        try:
            assert key(commute(L, i)) == k
        except ListingError:
            pass
    for lo in range(len(L.parts)):
        for hi in range(lo, len(L.parts)):
            try:
                assert key(combine(L, lo, hi)) == k
            except ListingError:
                pass


def test_peel_then_combine_returns_the_graph():
    rng = random.Random(3)
    for _ in range(500):
        r, s = rng.randint(1, 4), rng.randint(1, 4)
        edges = {(d, u) for d in range(1, r + 1) for u in range(1, s + 1) if rng.random() < 0.5}
        g = BicolouredGraph(r, s, frozenset(edges))
        peeled = peel(PartListing((GraphPart(1, g),)))
        back = combine(peeled, 0, len(peeled.parts) - 1)
        assert back.parts[0].graph.canonical() == g.canonical()


# -- finding listings ----------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 7))
def test_find_listing_reproduces_every_three_plus_one_free_poset(n):
    for p in enumerate_posets(n, PosetClass.THREE_PLUS_ONE_FREE):
        L = find_listing(p)
        assert key(L) == canonical_key(p)
        both_free = is_2plus2_free(p)
        assert (not L.has_graph_parts()) == both_free


@pytest.mark.parametrize("n", range(1, 6))
def test_vertex_only_words_give_exactly_the_both_free_classes(n):
    keys = {key(word(levels)) for levels in product(range(1, n + 1), repeat=n)}
    assert keys == {canonical_key(p) for p in enumerate_posets(n, PosetClass.INTERVAL_ORDER_FREE_BOTH)}


@pytest.mark.parametrize("n", [6, 7, 8])
def test_vertex_only_words_cover_both_free_classes(n):
    rng = random.Random(n)
    for _ in range(300):
        q = listing_to_poset(word([rng.randint(1, n) for _ in range(n)]))
        assert is_3plus1_free(q) and is_2plus2_free(q)
    for p in enumerate_posets(n, PosetClass.INTERVAL_ORDER_FREE_BOTH):
        L = find_listing(p)
        assert not L.has_graph_parts() and key(L) == canonical_key(p)


def test_find_listing_rejects_three_plus_one():
    from posetcsf.poset import THREE_PLUS_ONE

    with pytest.raises(ValueError):
        find_listing(THREE_PLUS_ONE)


# -- text and JSON --------------------------------------------------------------------


def test_parse_examples(nine_vertex):
    assert len(nine_vertex.parts) == 6 and nine_vertex.n_vertices == 9
    assert parse_listing("") == PartListing(())
    assert parse_listing("  v3   v4 ") == word([1, 2])


@pytest.mark.parametrize("text,offset", [
    ("b1{2x2:3-1}", 0),
    ("v1 x2", 3),
    ("v1 v0", 3),
    ("v1 b1{2x2:1-1", 3),
])
def test_parse_errors_carry_offsets(text, offset):
    with pytest.raises(ListingSyntaxError) as info:
        parse_listing(text)
    assert info.value.offset == offset


@settings(max_examples=200)
@given(listings())
def test_text_and_json_roundtrip(L):
    L = L.normalized()
    assert parse_listing(serialize_listing(L)) == L
    assert listing_from_json(listing_to_json(L)) == L


@settings(max_examples=100)
@given(graphs())
def test_graph_text_roundtrip(g):
    assert parse_graph(g.to_text()) == g
    assert g.canonical().canonical() == g.canonical()
    assert g.transpose().transpose() == g


def test_lin_listing_merges_and_checks_sizes():
    x = LinListing(((1, word([1, 2])), (2, word([1, 2]))))
    assert len(x) == 1 and x.total() == 3
    with pytest.raises(ValueError):
        LinListing(((1, word([1])), (1, word([1, 1]))))

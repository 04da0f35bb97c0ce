from fractions import Fraction
from itertools import combinations
from math import comb, factorial

import pytest
from hypothesis import given, settings

from conftest import graphs
from posetcsf.csf import csf_listing, csf_lin
from posetcsf.listing import (
    BicolouredGraph,
    GraphPart,
    LinListing,
    PartListing,
    listing_to_poset,
    parse_graph,
    parse_listing,
    two_level_word_to_graph,
)
from posetcsf.modular import (
    circulate_udu,
    decompose_dual,
    dud,
    functionals,
    matching_reduction,
    modular_triple,
    reduce_listing,
    three_free_e_expansion,
    udu,
)
from posetcsf.poset import is_2plus2_free, is_3plus1_free
from posetcsf.symfunc import E, SymFunc, m_to_e
from posetcsf.verify import all_bicoloured_graphs, bicoloured_graphs


def rook_functionals(g):
    """F_k from matching counts of G by inclusion-exclusion (no injection enumeration)."""
    a, b = min(g.r, g.s), max(g.r, g.s)
    edges = sorted(g.edges)
    rooks = [0] * (a + 1)
    for j in range(a + 1):
        for sub in combinations(edges, j):
            if len({d for d, _ in sub}) == j and len({u for _, u in sub}) == j:
                rooks[j] += 1
    # placements extending a fixed j-matching of G to a full injection
    ext = [factorial(b - j) // factorial(b - a) for j in range(a + 1)]
    total = factorial(b) // factorial(b - a)
    out = []
    for k in range(a + 1):
        n_k = sum((-1) ** (j - k) * comb(j, k) * rooks[j] * ext[j] for j in range(k, a + 1))
        out.append(Fraction(n_k, total))
    return tuple(out)


def b1(g):
    return PartListing((GraphPart(1, g),))


# -- modular triples ----------------------------------------------------------------


def test_modular_triple_examples():
    path = parse_graph("2x1:1-1,2-1")
    g1, g2, g12 = modular_triple(path, (1, 1), (2, 1))
    assert g1.edges == {(2, 1)} and g2.edges == {(1, 1)} and not g12.edges
    assert (g12.r, g12.s) == (2, 1)
    k22 = BicolouredGraph.complete(2, 2)
    g1, g2, g12 = modular_triple(k22, (1, 1), (1, 2))
    assert g1 == k22.without((1, 1)) and g2 == k22.without((1, 2)) and g12 == k22.without((1, 1), (1, 2))
    with pytest.raises(ValueError):
        modular_triple(k22, (1, 1), (2, 2))
    with pytest.raises(ValueError):
        modular_triple(path, (1, 1), (1, 1))
    with pytest.raises(ValueError):
        modular_triple(BicolouredGraph(2, 1, frozenset({(1, 1)})), (1, 1), (2, 1))


# -- functionals -----------------------------------------------------------------------


def test_functional_examples(example_graph):
    assert functionals(BicolouredGraph(3, 2)) == (1, 0, 0)
    assert functionals(BicolouredGraph.complete(2, 2)) == (0, 0, 1)
    assert functionals(example_graph) == (Fraction(2, 12), Fraction(5, 12), Fraction(5, 12))


@pytest.mark.parametrize("g", all_bicoloured_graphs(6), ids=lambda g: g.to_text())
def test_functionals_match_rook_oracle(g):
    assert functionals(g) == rook_functionals(g)


@settings(max_examples=150, deadline=None)
@given(graphs(max_r=5, max_s=5))
def test_functionals_match_rook_oracle_random(g):
    assert functionals(g) == rook_functionals(g)


def test_functionals_normalized_through_eight():
    for g in all_bicoloured_graphs(8):
        f = functionals(g)
        assert sum(f) == 1 and all(x >= 0 for x in f)


def test_functionals_size_bound():
    with pytest.raises(ValueError):
        functionals(BicolouredGraph(0, 0))


# -- udu / dud -----------------------------------------------------------------------


def test_udu_examples():
    assert two_level_word_to_graph(udu(3, 2, 2)) == BicolouredGraph.complete(3, 2)
    assert two_level_word_to_graph(udu(3, 2, 0)) == BicolouredGraph(3, 2)
    assert str(udu(4, 2, 1)) == "v2 v1 v1 v1 v1 v2"
    g = two_level_word_to_graph(udu(4, 2, 1))
    assert g.edges == {(d, 2) for d in range(1, 5)}
    assert str(dud(2, 1, 1)) == "v1 v2 v1"
    with pytest.raises(ValueError):
        udu(2, 2, 3)


@pytest.mark.parametrize("r", range(1, 6))
def test_dual_basis_orthogonality(r):
    for s in range(0, r + 1):
        for k in range(s + 1):
            f = functionals(two_level_word_to_graph(udu(r, s, k)))
            assert f == tuple(int(j == k) for j in range(s + 1))
    for s in range(r, 6):
        for k in range(r + 1):
            f = functionals(two_level_word_to_graph(dud(r, s, k)))
            assert f == tuple(int(j == k) for j in range(r + 1))


@pytest.mark.parametrize("r", range(1, 5))
def test_udu_and_dud_agree_when_sides_match(r):
    for k in range(r + 1):
        assert csf_listing(udu(r, r, k)) == csf_listing(dud(r, r, k))


def test_decompose_examples(example_graph):
    assert decompose_dual(BicolouredGraph.complete(3, 2)) == [(1, udu(3, 2, 2))]
    assert decompose_dual(BicolouredGraph(3, 2)) == [(1, udu(3, 2, 0))]
    assert decompose_dual(example_graph) == [
        (Fraction(2, 12), udu(4, 2, 0)),
        (Fraction(5, 12), udu(4, 2, 1)),
        (Fraction(5, 12), udu(4, 2, 2)),
    ]
    assert decompose_dual(BicolouredGraph.complete(1, 3)) == [(1, dud(1, 3, 1))]


@pytest.mark.parametrize("g", all_bicoloured_graphs(7), ids=lambda g: g.to_text())
def test_decomposition_preserves_csf(g):
    terms = decompose_dual(g)
    assert sum(c for c, _ in terms) == 1 and all(c > 0 for c, _ in terms)
    assert csf_lin(LinListing(tuple(terms))) == csf_listing(b1(g))


# -- matching reduction ------------------------------------------------------------------


def test_matching_reduction_examples():
    m2 = BicolouredGraph.matching(3, 2, 2)
    assert matching_reduction(m2).terms == ((1, m2),)
    got = matching_reduction(parse_graph("2x1:1-1,2-1")).coeffs()
    assert got == {BicolouredGraph.matching(2, 1, 0): -1, BicolouredGraph.matching(2, 1, 1): 2}


@pytest.mark.parametrize("g", all_bicoloured_graphs(6), ids=lambda g: g.to_text())
def test_matching_reduction_is_consistent(g):
    lin = matching_reduction(g)
    combined = [sum((c * functionals(m)[j] for c, m in lin.terms), Fraction(0)) for j in range(min(g.r, g.s) + 1)]
    assert tuple(combined) == functionals(g)
    assert sum((c * csf_listing(b1(m)) for c, m in lin.terms), SymFunc.zero()) == csf_listing(b1(g))


# -- listing reduction -------------------------------------------------------------------


def test_reduce_listing_examples(example_graph, nine_vertex):
    plain = parse_listing("v1 v2 v1")
    assert reduce_listing(LinListing.single(plain)) == LinListing.single(plain)
    out = reduce_listing(LinListing.single(b1(example_graph)))
    assert sorted(c for c, _ in out) == [Fraction(2, 12), Fraction(5, 12), Fraction(5, 12)]
    out = reduce_listing(LinListing.single(nine_vertex))
    assert out.total() == 1
    for c, L in out:
        q = listing_to_poset(L)
        assert c > 0 and not L.has_graph_parts()
        assert is_3plus1_free(q) and is_2plus2_free(q)
    assert csf_lin(out) == csf_listing(nine_vertex)


# -- the 3-free expansion -------------------------------------------------------------------


def test_circulate_udu_examples():
    assert circulate_udu(4, 2, 1) == BicolouredGraph(5, 1, frozenset({(d, 1) for d in range(1, 5)}))
    assert circulate_udu(4, 2, 0) == BicolouredGraph(5, 1)
    assert circulate_udu(3, 1, 0) == BicolouredGraph(4, 0)
    with pytest.raises(ValueError):
        circulate_udu(3, 2, 2)


def test_circulate_udu_preserves_csf():
    for r in range(1, 5):
        for s in range(1, r + 1):
            for k in range(s):
                moved = csf_listing(b1(circulate_udu(r, s, k)))
                assert moved == csf_listing(udu(r, s, k))


def test_three_free_examples(example_graph):
    assert three_free_e_expansion(example_graph) == SymFunc(E, {(4, 2): 20, (5, 1): 40, (6,): 180})
    assert three_free_e_expansion(BicolouredGraph.complete(3, 2)) == SymFunc(E, {(3, 2): 12})
    assert three_free_e_expansion(parse_graph("1x1:1-1")) == SymFunc(E, {(1, 1): 1})


@settings(max_examples=60, deadline=None)
@given(graphs(max_r=4, max_s=4))
def test_three_free_matches_direct_computation(g):
    got = three_free_e_expansion(g)
    assert all(c >= 0 for c in got.terms.values())
    assert got == m_to_e(csf_listing(b1(g)))


def test_graph_listing_representatives_are_distinct():
    reps = bicoloured_graphs(2, 2)
    assert len(reps) == len(set(reps)) == 7

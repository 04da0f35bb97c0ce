"""Modular-law machinery on bicoloured graph parts.

Probability functionals, the udu/dud words that are dual to them, the
rewrite of a graph into matchings, the reduction of whole listings to
vertex-only words, and the e-expansion algorithm for two-level (3-free)
posets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Dict, List, Tuple

from .listing import (
    BicolouredGraph,
    GraphPart,
    LinListing,
    PartListing,
    VertexPart,
    two_level_word_to_graph,
)
from .symfunc import E, SymFunc, partition

MAX_FUNCTIONAL_SIDE = 8
MAX_MATCHING_SIDE = 6


@dataclass(frozen=True)
class LinGraph:
    """Rational combination of graphs sharing one ``(r, s)``."""

    r: int
    s: int
    terms: Tuple[Tuple[Fraction, BicolouredGraph], ...]

    def __post_init__(self):
        for _, g in self.terms:
            if (g.r, g.s) != (self.r, self.s):
                raise ValueError("all graphs in a combination must share (r, s)")

    def coeffs(self) -> Dict[BicolouredGraph, Fraction]:
        return {g: c for c, g in self.terms}


def modular_triple(g: BicolouredGraph, e1: Tuple[int, int], e2: Tuple[int, int]):
    """``(G - e1, G - e2, G - e1 - e2)`` for two edges meeting in one vertex."""
    e1, e2 = tuple(e1), tuple(e2)
    if e1 not in g.edges or e2 not in g.edges:
        raise ValueError(f"edges {e1} and {e2} must both be in the graph")
    if e1 == e2:
        raise ValueError("the two edges must differ")
    if (e1[0] == e2[0]) == (e1[1] == e2[1]):
        raise ValueError(f"edges {e1} and {e2} do not share exactly one endpoint")
    return g.without(e1), g.without(e2), g.without(e1, e2)


# -- probability functionals ---------------------------------------------------


@lru_cache(maxsize=None)
def _functionals(g: BicolouredGraph) -> Tuple[Fraction, ...]:
    r, s = g.r, g.s
    small, large = min(r, s), max(r, s)
    # injection from the smaller side into the larger; edge test in (d, u) order
    if r <= s:
        hit = lambda i, j: (i + 1, j + 1) in g.edges  # noqa: E731
    else:
        hit = lambda i, j: (j + 1, i + 1) in g.edges  # noqa: E731
    counts = [0] * (small + 1)
    for image in permutations(range(large), small):
        counts[sum(1 for i, j in enumerate(image) if hit(i, j))] += 1
    total = factorial(large) // factorial(large - small)
    return tuple(Fraction(c, total) for c in counts)


def functionals(g: BicolouredGraph) -> Tuple[Fraction, ...]:
    """``F_k(G)`` for ``k = 0..min(r, s)``.

    ``F_k`` is the fraction of maximum matchings of the complete bicoloured
    graph on the same vertices that share exactly ``k`` edges with ``G``,
    counted by enumerating every injection of the smaller side.
    """
    if g.r + g.s < 1:
        raise ValueError("graph has no vertices")
    if min(g.r, g.s) > MAX_FUNCTIONAL_SIDE:
        raise ValueError(f"min(r, s) = {min(g.r, g.s)} exceeds {MAX_FUNCTIONAL_SIDE}")
    return _functionals(g)


# -- udu / dud words -----------------------------------------------------------


def udu(r: int, s: int, k: int) -> PartListing:
    """``v2^(s-k) v1^r v2^k``."""
    if not 0 <= k <= s:
        raise ValueError(f"udu index {k} outside 0..{s}")
    return PartListing((VertexPart(2),) * (s - k) + (VertexPart(1),) * r + (VertexPart(2),) * k)


def dud(r: int, s: int, k: int) -> PartListing:
    """``v1^k v2^s v1^(r-k)``."""
    if not 0 <= k <= r:
        raise ValueError(f"dud index {k} outside 0..{r}")
    return PartListing((VertexPart(1),) * k + (VertexPart(2),) * s + (VertexPart(1),) * (r - k))


def decompose_dual(g: BicolouredGraph) -> List[Tuple[Fraction, PartListing]]:
    """Convex combination of udu words (``r >= s``) or dud words (``r < s``).

    The coefficients are the probability functionals of ``g``; zero terms
    are dropped.
    """
    word = udu if g.r >= g.s else dud
    return [(c, word(g.r, g.s, k)) for k, c in enumerate(functionals(g)) if c]


# -- rewriting into matchings ---------------------------------------------------


def _modular_pair(g: BicolouredGraph):
    """Smallest vertex of degree >= 2 (downs before ups) and its two smallest edges."""
    for d in range(1, g.r + 1):
        nb = sorted(g.down_nbrs(d))
        if len(nb) >= 2:
            return (d, nb[0]), (d, nb[1])
    for u in range(1, g.s + 1):
        nb = sorted(g.up_nbrs(u))
        if len(nb) >= 2:
            return (nb[0], u), (nb[1], u)
    return None


@lru_cache(maxsize=None)
def _matching_coeffs(g: BicolouredGraph) -> Tuple[Tuple[int, int], ...]:
    pair = _modular_pair(g)
    if pair is None:
        return ((len(g.edges), 1),)
    g1, g2, g12 = modular_triple(g, *pair)
    acc: Dict[int, int] = {}
    for sign, h in ((1, g1), (1, g2), (-1, g12)):
        for k, c in _matching_coeffs(h.canonical()):
            acc[k] = acc.get(k, 0) + sign * c
    return tuple(sorted((k, c) for k, c in acc.items() if c))


def matching_reduction(g: BicolouredGraph) -> LinGraph:
    """``b(G) = sum_k c_k b(M_k)`` by repeated ``b(G) = b(G1) + b(G2) - b(G12)``."""
    if min(g.r, g.s) > MAX_MATCHING_SIDE:
        raise ValueError(f"min(r, s) = {min(g.r, g.s)} exceeds {MAX_MATCHING_SIDE}")
    terms = tuple((Fraction(c), BicolouredGraph.matching(g.r, g.s, k)) for k, c in _matching_coeffs(g.canonical()))
    return LinGraph(g.r, g.s, terms)


# -- listing reduction --------------------------------------------------------------


def reduce_listing(x: LinListing) -> LinListing:
    """Rewrite every graph part into udu/dud words until only vertex parts remain.

    The leftmost graph part of each term is replaced first; coefficients of
    the words multiply into the term's coefficient.
    """
    if isinstance(x, PartListing):
        x = LinListing.single(x)
    out: List[Tuple[Fraction, PartListing]] = []
    stack = list(reversed(x.terms))
    while stack:
        c, L = stack.pop()
        idx = next((i for i, p in enumerate(L.parts) if isinstance(p, GraphPart)), None)
        if idx is None:
            out.append((c, L))
            continue
        part = L.parts[idx]
        expanded = []
        for w, word in decompose_dual(part.graph):
            shifted = word.shifted(part.level - 1).parts
            expanded.append((c * w, PartListing(L.parts[:idx] + shifted + L.parts[idx + 1:])))
        stack.extend(reversed(expanded))
    return LinListing(tuple(out))


# -- the 3-free expansion ----------------------------------------------------------


def circulate_udu(r: int, s: int, k: int) -> BicolouredGraph:
    """Graph of ``v2^(s-k-1) v1^r v2^k v1``: the leading up vertex moved to a trailing down."""
    if not 0 <= k < s:
        raise ValueError(f"need 0 <= k < s, got k={k}, s={s}")
    word = (VertexPart(2),) * (s - k - 1) + (VertexPart(1),) * r + (VertexPart(2),) * k + (VertexPart(1),)
    return two_level_word_to_graph(word)


def three_free_e_expansion(g: BicolouredGraph) -> SymFunc:
    """e-expansion of the chromatic symmetric function of the two-level poset ``b1(G)``.

    Keeps a convex combination of graphs on ``r' >= s'`` vertices.  Each round
    the ``k = s'`` udu term is the complete graph, whose function is
    ``r'! s'! e_(r', s')``; every other udu term is circulated into
    ``(r'+1, s'-1)``.  Ends when ``s' = 0``.
    """
    if g.r < g.s:
        g = g.transpose()
    if g.r == 0:
        return SymFunc.one(E)
    out: Dict[Tuple[int, ...], Fraction] = {}
    r, s = g.r, g.s
    stage: Dict[BicolouredGraph, Fraction] = {g.canonical(): Fraction(1)}
    while s > 0:
        nxt: Dict[BicolouredGraph, Fraction] = {}
        for h, c in stage.items():
            f = functionals(h)
            if f[s]:
                lam = partition((r, s))
                out[lam] = out.get(lam, Fraction(0)) + c * f[s] * factorial(r) * factorial(s)
            for k in range(s):
                if f[k]:
                    h2 = circulate_udu(r, s, k).canonical()
                    nxt[h2] = nxt.get(h2, Fraction(0)) + c * f[k]
        stage = nxt
        r, s = r + 1, s - 1
    weight = sum(stage.values(), Fraction(0))
    if weight:
        out[(r,)] = out.get((r,), Fraction(0)) + weight * factorial(r)
    return SymFunc(E, out)

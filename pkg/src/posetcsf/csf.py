"""Chromatic symmetric functions of posets, graphs, and part listings.

A proper colouring of a poset makes every colour class a chain, so the
coefficient of ``m_lam`` is the number of chain partitions with block sizes
``lam`` times ``prod_j mult_j(lam)!`` (the ways to hand distinct colours to
equal-sized blocks in a fixed monomial).
"""

from __future__ import annotations

import os
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .listing import BicolouredGraph, GraphPart, LinListing, PartListing, listing_to_poset
from .modular import modular_triple
from .poset import Poset, _bits
from .symfunc import M, SymFunc, multiplicity_factorial, sf_scale, sf_sum

MAX_VERTICES = 12


def _cache_size():
    raw = os.environ.get("POSETCSF_CACHE_SIZE", "").strip()
    return int(raw) if raw else None


def _blocks_from(adj_ok: Sequence[int], n: int) -> List[List[int]]:
    """For each vertex ``v``: masks of admissible blocks containing ``v`` and only larger vertices.

    ``adj_ok[v]`` is the set of vertices that may share a block with ``v``.
    """
    out = []
    for v in range(n):
        blocks = []

        def grow(mask: int, allowed: int) -> None:
            blocks.append(mask)
            for w in _bits(allowed):
                grow(mask | (1 << w), allowed & adj_ok[w] & ~((1 << (w + 1)) - 1))

        higher = ~((1 << (v + 1)) - 1)
        grow(1 << v, adj_ok[v] & higher & ((1 << n) - 1))
        out.append(blocks)
    return out


def _block_partition_counts(adj_ok: Sequence[int], n: int) -> Dict[Tuple[int, ...], int]:
    """Set partitions of ``0..n-1`` into admissible blocks, tallied by block-size multiset."""
    blocks = _blocks_from(adj_ok, n)
    memo: Dict[int, Dict[Tuple[int, ...], int]] = {0: {(): 1}}

    def rec(mask: int) -> Dict[Tuple[int, ...], int]:
        got = memo.get(mask)
        if got is not None:
            return got
        v = (mask & -mask).bit_length() - 1
        acc: Dict[Tuple[int, ...], int] = {}
        for b in blocks[v]:
            if b & ~mask:
                continue
            k = bin(b).count("1")
            for lam, c in rec(mask & ~b).items():
                key = tuple(sorted(lam + (k,), reverse=True))
                acc[key] = acc.get(key, 0) + c
        memo[mask] = acc
        return acc

    return rec((1 << n) - 1)


def _to_symfunc(counts: Dict[Tuple[int, ...], int]) -> SymFunc:
    return SymFunc(M, {lam: c * multiplicity_factorial(lam) for lam, c in counts.items()})


@lru_cache(maxsize=_cache_size())
def csf_poset(p: Poset) -> SymFunc:
    """Chromatic symmetric function of ``p`` in the monomial basis."""
    if p.n > MAX_VERTICES:
        raise ValueError(f"poset has {p.n} vertices; limit is {MAX_VERTICES}")
    comparable = [p.up[v] | p.down[v] for v in range(p.n)]
    return _to_symfunc(_block_partition_counts(comparable, p.n))


def csf_graph(n: int, adj: Sequence[int]) -> SymFunc:
    """Chromatic symmetric function of a simple graph given by adjacency bitmasks."""
    if n > MAX_VERTICES:
        raise ValueError(f"graph has {n} vertices; limit is {MAX_VERTICES}")
    full = (1 << n) - 1
    non_adjacent = [full & ~adj[v] & ~(1 << v) for v in range(n)]
    return _to_symfunc(_block_partition_counts(non_adjacent, n))


def csf_listing(L: PartListing) -> SymFunc:
    if L.n_vertices > MAX_VERTICES:
        raise ValueError(f"listing has {L.n_vertices} vertices; limit is {MAX_VERTICES}")
    return csf_poset(listing_to_poset(L))


def csf_lin(x: LinListing) -> SymFunc:
    return sf_sum((sf_scale(c, csf_listing(L)) for c, L in x.terms), M)


def verify_modular(
    prefix: PartListing,
    g: BicolouredGraph,
    suffix: PartListing,
    e1: Tuple[int, int],
    e2: Tuple[int, int],
    level: int = 1,
) -> bool:
    """Check ``csf(P) + csf(P12) == csf(P1) + csf(P2)`` for ``prefix b_level(G) suffix``."""
    g1, g2, g12 = modular_triple(g, e1, e2)

    def f(h: BicolouredGraph) -> SymFunc:
        return csf_listing(PartListing(prefix.parts + (GraphPart(level, h),) + suffix.parts))

    return f(g) + f(g12) == f(g1) + f(g2)

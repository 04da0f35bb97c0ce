"""Finite posets on ``0..n-1`` stored as bitmasks of strict up-sets.

``up[i]`` has bit ``j`` set iff ``i < j``.  Everything here is small-n
combinatorics: induced-pattern tests, duality, ordinal splits, a home-grown
canonical form (colour refinement + individualisation), and exhaustive
enumeration up to isomorphism.
"""

from __future__ import annotations

import itertools
import json
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union


class CycleError(ValueError):
    """Raised when a relation set closes up to ``i < i``."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Strict partial order; immutable and hashable."""

    __slots__ = ("n", "up", "down", "_key")

    def __init__(self, n: int, up: Sequence[int]):
        if len(up) != n:
            raise ValueError("up-set list must have length n")
        self.n = n
        self.up = tuple(up)
        down = [0] * n
        for i, m in enumerate(self.up):
            for j in _bits(m):
                down[j] |= 1 << i
        self.down = tuple(down)
        self._key = None

    # -- basic queries --------------------------------------------------------

    def lt(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def comparable(self, i: int, j: int) -> bool:
        return self.lt(i, j) or self.lt(j, i)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def comp_mask(self, i: int) -> int:
        """Vertices comparable to ``i``, including ``i`` itself."""
        return self.up[i] | self.down[i] | (1 << i)

    def relations(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.up[i])]

    def is_valid(self) -> bool:
        for i in range(self.n):
            if self.up[i] >> i & 1:
                return False
            for j in _bits(self.up[i]):
                if self.up[j] & ~self.up[i]:
                    return False
        return True

    def restrict(self, vertices: Sequence[int]) -> "Poset":
        """Induced subposet on ``vertices``, relabelled ``0..k-1`` in the given order."""
        pos = {v: k for k, v in enumerate(vertices)}
        up = []
        for v in vertices:
            m = 0
            for w in _bits(self.up[v]):
                if w in pos:
                    m |= 1 << pos[w]
            up.append(m)
        return Poset(len(vertices), up)

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """Poset in which old vertex ``i`` is called ``perm[i]``."""
        up = [0] * self.n
        for i in range(self.n):
            m = 0
            for j in _bits(self.up[i]):
                m |= 1 << perm[j]
            up[perm[i]] = m
        return Poset(self.n, up)

    def heights(self) -> List[int]:
        """Number of vertices on a longest chain ending at each vertex."""
        h = [0] * self.n
        for v in topological_order(self):
            h[v] = 1 + max((h[u] for u in _bits(self.down[v])), default=0)
        return h

    def incomparability_graph(self) -> List[int]:
        """Adjacency bitmasks of the incomparability graph."""
        return [self.full & ~self.comp_mask(i) for i in range(self.n)]

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self.n == other.n and self.up == other.up

    def __hash__(self) -> int:
        return hash((self.n, self.up))

    def __repr__(self) -> str:
        return f"Poset({self.n}, {self.relations()})"

    def to_json(self) -> dict:
        return {"n": self.n, "lt": [list(p) for p in self.relations()]}

    @classmethod
    def from_json(cls, obj: Union[str, dict]) -> "Poset":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return poset_from_relations(obj["n"], [tuple(p) for p in obj.get("lt", [])])


def topological_order(p: Poset) -> List[int]:
    seen = 0
    order: List[int] = []
    while len(order) < p.n:
        for v in range(p.n):
            if not seen >> v & 1 and p.down[v] & ~seen == 0:
                order.append(v)
                seen |= 1 << v
    return order


def poset_from_relations(n: int, pairs: Iterable[Tuple[int, int]]) -> Poset:
    """Transitive closure of ``pairs``; raises :class:`CycleError` on a cycle."""
    up = [0] * n
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"relation ({i}, {j}) out of range for n={n}")
        up[i] |= 1 << j
    # Warshall on bitmasks
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if up[i] & bit:
                up[i] |= up[k]
    for i in range(n):
        if up[i] >> i & 1:
            raise CycleError(f"relations force {i} < {i}")
    return Poset(n, up)


def chain(n: int) -> Poset:
    return Poset(n, [((1 << n) - 1) & ~((1 << (i + 1)) - 1) for i in range(n)])


def antichain(n: int) -> Poset:
    return Poset(n, [0] * n)


def disjoint_union(*ps: Poset) -> Poset:
    up: List[int] = []
    off = 0
    for p in ps:
        up.extend(m << off for m in p.up)
        off += p.n
    return Poset(off, up)


def ordinal_sum(*ps: Poset) -> Poset:
    """Every vertex of an earlier summand is below every vertex of a later one."""
    total = sum(p.n for p in ps)
    up: List[int] = []
    off = 0
    for p in ps:
        above = ((1 << total) - 1) & ~((1 << (off + p.n)) - 1)
        up.extend((m << off) | above for m in p.up)
        off += p.n
    return Poset(total, up)


def graded_poset(lam: Sequence[int]) -> Poset:
    """``lam[i]`` vertices on rank ``i``; each rank entirely below the next."""
    return ordinal_sum(*(antichain(k) for k in lam))


THREE_PLUS_ONE = disjoint_union(chain(3), antichain(1))
TWO_PLUS_TWO = disjoint_union(chain(2), chain(2))
THREE_CHAIN = chain(3)


# -- pattern containment ------------------------------------------------------


def contains_induced(host: Poset, pattern: Poset) -> bool:
    """Generic backtracking search for an induced copy of ``pattern``."""
    k = pattern.n
    if k > host.n:
        return False
    if k == 0:
        return True
    image = [0] * k

    def rel(p: Poset, a: int, b: int) -> int:
        return 1 if p.lt(a, b) else (2 if p.lt(b, a) else 0)

    def extend(i: int, used: int) -> bool:
        if i == k:
            return True
        for v in range(host.n):
            if used >> v & 1:
                continue
            if all(rel(host, image[j], v) == rel(pattern, j, i) for j in range(i)):
                image[i] = v
                if extend(i + 1, used | (1 << v)):
                    return True
        return False

    return extend(0, 0)


def is_3plus1_free(p: Poset) -> bool:
    full = p.full
    for y in range(p.n):
        for x in _bits(p.down[y]):
            for z in _bits(p.up[y]):
                if full & ~(p.comp_mask(x) | p.comp_mask(y) | p.comp_mask(z)):
                    return False
    return True


def is_2plus2_free(p: Poset) -> bool:
    pairs = p.relations()
    for (a, b), (c, d) in itertools.combinations(pairs, 2):
        if len({a, b, c, d}) < 4:
            continue
        if not (p.comparable(a, c) or p.comparable(a, d) or p.comparable(b, c) or p.comparable(b, d)):
            return False
    return True


def is_3_free(p: Poset) -> bool:
    """No 3-chain: every vertex is minimal or maximal."""
    return all(not (p.down[v] and p.up[v]) for v in range(p.n))


def dual(p: Poset) -> Poset:
    return Poset(p.n, p.down)


def ordinal_split(p: Poset) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Smallest ``X`` (then lexicographically first) with ``X`` entirely below the rest.

    A valid ``X`` is a down-set whose every element lies below every element
    outside it; returns ``None`` when no nonempty proper split exists.
    """
    n = p.n
    full = p.full
    best = None
    for size in range(1, n):
        for xs in itertools.combinations(range(n), size):
            xmask = sum(1 << x for x in xs)
            rest = full & ~xmask
            if all(p.up[x] & rest == rest for x in xs):
                best = (xs, tuple(_bits(rest)))
                break
        if best:
            break
    return best


# -- canonical form -----------------------------------------------------------


def _refine(p: Poset, colour: List[int]) -> List[int]:
    """Equitable refinement; new colours are ranks of label-free signatures."""
    ncells = len(set(colour))
    while True:
        sig = [
            (
                colour[v],
                tuple(sorted(colour[u] for u in _bits(p.down[v]))),
                tuple(sorted(colour[u] for u in _bits(p.up[v]))),
            )
            for v in range(p.n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        colour = [ranks[s] for s in sig]
        if len(ranks) == ncells:
            return colour
        ncells = len(ranks)


def _encode(p: Poset, order: Sequence[int]) -> int:
    code = 0
    for v in order:
        row = 0
        for w in order:
            row = (row << 1) | (p.up[v] >> w & 1)
        code = (code << p.n) | row
    return code


def canonical_order(p: Poset) -> Tuple[List[int], int]:
    """Vertex order minimising the relation-matrix code, and that code.

    Search tree: refine, individualise each vertex of the first non-singleton
    cell, recurse.  Incomparable twins (equal up- and down-sets) produce
    isomorphic subtrees, so only one per twin class is tried.
    """
    n = p.n
    if n == 0:
        return [], 0
    best: List = [None, None]

    def search(colour: List[int]) -> None:
        colour = _refine(p, colour)
        if len(set(colour)) == n:
            order = sorted(range(n), key=colour.__getitem__)
            code = _encode(p, order)
            if best[1] is None or code < best[1]:
                best[0], best[1] = order, code
            return
        counts: Dict[int, int] = {}
        for c in colour:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        tried = set()
        for v in range(n):
            if colour[v] != target:
                continue
            sig = (p.up[v], p.down[v])
            if sig in tried:
                continue
            tried.add(sig)
            # individualised vertex goes first within its old cell
            search([2 * c + (0 if u == v else 1) if c == target else 2 * c for u, c in enumerate(colour)])

    search([0] * n)
    return best[0], best[1]


def canonical_key(p: Poset) -> bytes:
    """Isomorphism-invariant byte string (vertex count + minimal relation code)."""
    if p._key is None:
        _, code = canonical_order(p)
        nbytes = (p.n * p.n + 7) // 8
        p._key = bytes([p.n]) + code.to_bytes(nbytes, "big")
    return p._key


def canonical_form(p: Poset) -> Poset:
    order, _ = canonical_order(p)
    perm = [0] * p.n
    for new, old in enumerate(order):
        perm[old] = new
    q = p.relabel(perm)
    q._key = canonical_key(p)
    return q


def is_isomorphic(p: Poset, q: Poset) -> bool:
    return p.n == q.n and canonical_key(p) == canonical_key(q)


# -- enumeration --------------------------------------------------------------


class PosetClass(str, Enum):
    ALL = "all"
    THREE_PLUS_ONE_FREE = "3p1free"
    INTERVAL_ORDER_FREE_BOTH = "both"

    @classmethod
    def parse(cls, text: Union[str, "PosetClass"]) -> "PosetClass":
        if isinstance(text, PosetClass):
            return text
        aliases = {
            "all": cls.ALL,
            "3p1free": cls.THREE_PLUS_ONE_FREE,
            "3p1": cls.THREE_PLUS_ONE_FREE,
            "three_plus_one_free": cls.THREE_PLUS_ONE_FREE,
            "both": cls.INTERVAL_ORDER_FREE_BOTH,
            "bothfree": cls.INTERVAL_ORDER_FREE_BOTH,
            "uio": cls.INTERVAL_ORDER_FREE_BOTH,
            "interval_order_free_both": cls.INTERVAL_ORDER_FREE_BOTH,
        }
        try:
            return aliases[text.lower()]
        except KeyError:
            raise ValueError(f"unknown poset class {text!r}") from None


MAX_N = {PosetClass.ALL: 7, PosetClass.THREE_PLUS_ONE_FREE: 10, PosetClass.INTERVAL_ORDER_FREE_BOTH: 10}


def in_class(p: Poset, cls: PosetClass) -> bool:
    if cls is PosetClass.ALL:
        return True
    if cls is PosetClass.THREE_PLUS_ONE_FREE:
        return is_3plus1_free(p)
    return is_3plus1_free(p) and is_2plus2_free(p)


def _order_ideals(p: Poset) -> Iterator[int]:
    for mask in range(1 << p.n):
        if all(p.down[v] & ~mask == 0 for v in _bits(mask)):
            yield mask


def _extensions(p: Poset) -> Iterator[Poset]:
    """Add a new maximal vertex ``n`` above each order ideal of ``p``."""
    n = p.n
    for ideal in _order_ideals(p):
        up = [m | ((1 << n) if ideal >> i & 1 else 0) for i, m in enumerate(p.up)]
        up.append(0)
        yield Poset(n + 1, up)


_ENUM_CACHE: Dict[Tuple[int, PosetClass], List[Poset]] = {}


def _by_extension(n: int, hereditary_test) -> List[Poset]:
    level = [Poset(0, [])]
    for _ in range(n):
        found: Dict[bytes, Poset] = {}
        for p in level:
            for q in _extensions(p):
                if hereditary_test(q):
                    key = canonical_key(q)
                    if key not in found:
                        found[key] = canonical_form(q)
        level = [found[k] for k in sorted(found)]
    return level


def unit_interval_orders(n: int) -> Iterator[Poset]:
    """One labelled representative per weakly increasing threshold sequence.

    Vertex ``i`` is below exactly the vertices ``j >= h[i]``, where ``h`` is
    weakly increasing with ``i < h[i] <= n``; these are the natural labellings
    of the (3+1)-and-(2+2)-free posets.
    """

    def rec(i: int, lo: int, h: List[int]) -> Iterator[List[int]]:
        if i == n:
            yield h
            return
        for v in range(max(lo, i + 1), n + 1):
            yield from rec(i + 1, v, h + [v])

    full = (1 << n) - 1
    for h in rec(0, 0, []):
        yield Poset(n, [full & ~((1 << hi) - 1) for hi in h])


def enumerate_posets(n: int, cls: Union[str, PosetClass] = PosetClass.ALL) -> List[Poset]:
    """One canonical representative per isomorphism class, sorted by canonical key."""
    cls = PosetClass.parse(cls)
    if not 1 <= n <= MAX_N[cls]:
        raise ValueError(f"n={n} outside supported range 1..{MAX_N[cls]} for class {cls.value}")
    cached = _ENUM_CACHE.get((n, cls))
    if cached is not None:
        return list(cached)
    if cls is PosetClass.INTERVAL_ORDER_FREE_BOTH:
        found: Dict[bytes, Poset] = {}
        for q in unit_interval_orders(n):
            found.setdefault(canonical_key(q), q)
        out = [canonical_form(found[k]) for k in sorted(found)]
    elif cls is PosetClass.THREE_PLUS_ONE_FREE:
        out = _by_extension(n, is_3plus1_free)
    else:
        out = _by_extension(n, lambda q: True)
    _ENUM_CACHE[(n, cls)] = out
    return list(out)

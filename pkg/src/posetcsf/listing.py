"""Part listings: words of vertex parts ``v<i>`` and bicoloured graph parts ``b<i>{...}``.

A listing defines a (3+1)-free poset: ``x < y`` iff ``x`` is at least two
levels below ``y``, or exactly one level below and either in an earlier part
or joined to ``y`` by an edge of their shared graph part.

Vertices are numbered part by part; inside a graph part the down vertices
come first, then the up vertices.  Part indices in the rewrite functions are
0-based.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from .poset import Poset, _bits, is_2plus2_free, is_3plus1_free, topological_order


class ListingError(ValueError):
    """A rewrite was applied outside its precondition."""


class ListingSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


Edge = Tuple[int, int]


@dataclass(frozen=True)
class BicolouredGraph:
    """``r`` down vertices, ``s`` up vertices, edges ``(d, u)`` 1-based."""

    r: int
    s: int
    edges: FrozenSet[Edge] = frozenset()

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise ValueError("vertex counts must be nonnegative")
        edges = frozenset((int(d), int(u)) for d, u in self.edges)
        for d, u in edges:
            if not (1 <= d <= self.r and 1 <= u <= self.s):
                raise ValueError(f"edge {d}-{u} out of range for {self.r}x{self.s}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def complete(cls, r: int, s: int) -> "BicolouredGraph":
        return cls(r, s, frozenset((d, u) for d in range(1, r + 1) for u in range(1, s + 1)))

    @classmethod
    def matching(cls, r: int, s: int, k: int) -> "BicolouredGraph":
        """The canonical ``k``-edge matching ``{(i, i) : i <= k}``."""
        if not 0 <= k <= min(r, s):
            raise ValueError(f"matching size {k} out of range for {r}x{s}")
        return cls(r, s, frozenset((i, i) for i in range(1, k + 1)))

    @property
    def size(self) -> int:
        return self.r + self.s

    def down_nbrs(self, d: int) -> FrozenSet[int]:
        return frozenset(u for dd, u in self.edges if dd == d)

    def up_nbrs(self, u: int) -> FrozenSet[int]:
        return frozenset(d for d, uu in self.edges if uu == u)

    def transpose(self) -> "BicolouredGraph":
        """Swap the roles of down and up (the upside-down poset)."""
        return BicolouredGraph(self.s, self.r, frozenset((u, d) for d, u in self.edges))

    def without(self, *drop: Edge) -> "BicolouredGraph":
        return BicolouredGraph(self.r, self.s, self.edges - set(drop))

    def canonical(self) -> "BicolouredGraph":
        """Representative of the class under independent down/up relabelling.

        Permutes the smaller side exhaustively; for a fixed order there, the
        other side's vectors are simply sorted.
        """
        r, s = self.r, self.s
        if r <= s:
            rows = [[(d, u) in self.edges for u in range(1, s + 1)] for d in range(1, r + 1)]
            best = None
            for perm in permutations(range(r)):
                cols = sorted(tuple(rows[perm[i]][u] for i in range(r)) for u in range(s))
                cand = tuple(cols)
                if best is None or cand > best:
                    best = cand
            edges = frozenset((i + 1, u + 1) for u, col in enumerate(best or ()) for i, bit in enumerate(col) if bit)
        else:
            edges = self.transpose().canonical().transpose().edges
        return BicolouredGraph(r, s, edges)

    def to_text(self) -> str:
        body = f"{self.r}x{self.s}"
        if self.edges:
            body += ":" + ",".join(f"{d}-{u}" for d, u in sorted(self.edges))
        return body

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class VertexPart:
    level: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("levels start at 1")

    @property
    def span(self) -> Tuple[int, ...]:
        return (self.level,)

    @property
    def size(self) -> int:
        return 1

    def shifted(self, delta: int) -> "VertexPart":
        return VertexPart(self.level + delta)

    def to_text(self) -> str:
        return f"v{self.level}"


@dataclass(frozen=True)
class GraphPart:
    level: int
    graph: BicolouredGraph

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("levels start at 1")
        if self.graph.r == 0 and self.graph.s == 0:
            raise ValueError("graph part needs at least one vertex")

    @property
    def span(self) -> Tuple[int, ...]:
        return (self.level, self.level + 1)

    @property
    def size(self) -> int:
        return self.graph.size

    def shifted(self, delta: int) -> "GraphPart":
        return GraphPart(self.level + delta, self.graph)

    def to_text(self) -> str:
        return f"b{self.level}{{{self.graph.to_text()}}}"


Part = Union[VertexPart, GraphPart]


@dataclass(frozen=True)
class PartListing:
    parts: Tuple[Part, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def n_vertices(self) -> int:
        return sum(p.size for p in self.parts)

    def has_graph_parts(self) -> bool:
        return any(isinstance(p, GraphPart) for p in self.parts)

    def normalized(self) -> "PartListing":
        """Shift all levels so the lowest part sits on level 1."""
        shift = 1 - min((p.level for p in self.parts), default=1)
        return self.shifted(shift) if shift else self

    def shifted(self, delta: int) -> "PartListing":
        return PartListing(tuple(p.shifted(delta) for p in self.parts))

    def __add__(self, other: "PartListing") -> "PartListing":
        return PartListing(self.parts + other.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return serialize_listing(self)


@dataclass(frozen=True)
class LinListing:
    """Formal rational combination of part listings."""

    terms: Tuple[Tuple[Fraction, PartListing], ...] = ()

    def __post_init__(self):
        merged: Dict[PartListing, Fraction] = {}
        order: List[PartListing] = []
        for c, L in self.terms:
            c = Fraction(c)
            if L not in merged:
                merged[L] = Fraction(0)
                order.append(L)
            merged[L] += c
        terms = tuple((merged[L], L) for L in order if merged[L])
        sizes = {L.n_vertices for _, L in terms}
        if len(sizes) > 1:
            raise ValueError(f"mixed vertex counts {sorted(sizes)} in one combination")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def single(cls, L: PartListing) -> "LinListing":
        return cls(((Fraction(1), L),))

    def total(self) -> Fraction:
        return sum((c for c, _ in self.terms), Fraction(0))

    def __iter__(self) -> Iterator[Tuple[Fraction, PartListing]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)


# -- listing -> poset -------------------------------------------------------------


def vertex_table(L: PartListing) -> List[Tuple[int, int, int]]:
    """``(level, part index, local index)`` per vertex in numbering order."""
    out = []
    for k, part in enumerate(L.parts):
        if isinstance(part, VertexPart):
            out.append((part.level, k, 0))
        else:
            g = part.graph
            out.extend((part.level, k, d) for d in range(1, g.r + 1))
            out.extend((part.level + 1, k, -u) for u in range(1, g.s + 1))
    return out


def listing_to_poset(L: PartListing) -> Poset:
    verts = vertex_table(L)
    n = len(verts)
    up = [0] * n
    for x, (lx, px, ix) in enumerate(verts):
        for y, (ly, py, iy) in enumerate(verts):
            if ly - lx >= 2:
                up[x] |= 1 << y
            elif ly - lx == 1:
                if px < py:
                    up[x] |= 1 << y
                elif px == py and (ix, -iy) in L.parts[px].graph.edges:
                    up[x] |= 1 << y
    return Poset(n, up)


# -- rewrites -------------------------------------------------------------------


def commute(L: PartListing, i: int) -> PartListing:
    """Swap parts ``i`` and ``i+1`` when their level spans are at least two apart."""
    if not 0 <= i < len(L.parts) - 1:
        raise IndexError(f"no parts at positions {i}, {i + 1}")
    a, b = L.parts[i], L.parts[i + 1]
    gap = min(abs(x - y) for x in a.span for y in b.span)
    if gap < 2:
        raise ListingError(f"parts {i} and {i + 1} occupy touching levels {a.span} / {b.span}")
    parts = list(L.parts)
    parts[i], parts[i + 1] = b, a
    return PartListing(tuple(parts))


def circulate_general(L: PartListing, split: int) -> PartListing:
    """``A+ B  ->  B A``: lower the first ``split`` parts one level and move them to the end."""
    head, tail = L.parts[:split], L.parts[split:]
    if any(p.level < 2 for p in head):
        raise ListingError("circulated parts must start at level 2 or above")
    return PartListing(tail + tuple(p.shifted(-1) for p in head)).normalized()


def circulate(L: PartListing) -> PartListing:
    if not L.parts:
        raise ListingError("cannot circulate an empty listing")
    return circulate_general(L, 1)


def _combine_parts(parts: Sequence[Part], base: Optional[int] = None) -> Tuple[int, BicolouredGraph]:
    if base is None:
        base = min(p.level for p in parts)
    levels = {lv for p in parts for lv in p.span}
    if not levels <= {base, base + 1}:
        raise ListingError(f"parts span levels {sorted(levels)}, more than two adjacent levels")
    downs: List[Tuple[int, int]] = []  # (part position, local id)
    ups: List[Tuple[int, int]] = []
    for k, p in enumerate(parts):
        if isinstance(p, VertexPart):
            (downs if p.level == base else ups).append((k, 0))
        else:
            downs.extend((k, d) for d in range(1, p.graph.r + 1))
            ups.extend((k, u) for u in range(1, p.graph.s + 1))
    edges = set()
    for di, (kd, d) in enumerate(downs, start=1):
        for ui, (ku, u) in enumerate(ups, start=1):
            if kd < ku or (kd == ku and (d, u) in parts[kd].graph.edges):
                edges.add((di, ui))
    return base, BicolouredGraph(len(downs), len(ups), frozenset(edges))


def combine(L: PartListing, lo: int, hi: int) -> PartListing:
    """Replace parts ``lo..hi`` (inclusive) on two adjacent levels by one graph part."""
    if not 0 <= lo <= hi < len(L.parts):
        raise IndexError(f"bad part range {lo}..{hi}")
    level, g = _combine_parts(L.parts[lo:hi + 1])
    return PartListing(L.parts[:lo] + (GraphPart(level, g),) + L.parts[hi + 1:])


def two_level_word_to_graph(word: Union[PartListing, Sequence[Part]]) -> BicolouredGraph:
    """The single graph part equivalent to a word on levels 1 and 2."""
    parts = tuple(word.parts if isinstance(word, PartListing) else word)
    if not parts:
        return BicolouredGraph(0, 0)
    return _combine_parts(parts, base=1)[1]


def _peel_graph(level: int, g: BicolouredGraph) -> List[Part]:
    lead: List[Part] = []
    trail: List[Part] = []
    while g.r or g.s:
        ups = range(1, g.s + 1)
        downs = range(1, g.r + 1)
        full_down = next((d for d in downs if len(g.down_nbrs(d)) == g.s), None)
        if full_down is not None:
            lead.append(VertexPart(level))
            g = _drop_vertex(g, down=full_down)
            continue
        lonely_up = next((u for u in ups if not g.up_nbrs(u)), None)
        if lonely_up is not None:
            lead.append(VertexPart(level + 1))
            g = _drop_vertex(g, up=lonely_up)
            continue
        lonely_down = next((d for d in downs if not g.down_nbrs(d)), None)
        if lonely_down is not None:
            trail.insert(0, VertexPart(level))
            g = _drop_vertex(g, down=lonely_down)
            continue
        full_up = next((u for u in ups if len(g.up_nbrs(u)) == g.r), None)
        if full_up is not None:
            trail.insert(0, VertexPart(level + 1))
            g = _drop_vertex(g, up=full_up)
            continue
        break
    middle: List[Part] = [GraphPart(level, g)] if (g.r or g.s) else []
    return lead + middle + trail


def _drop_vertex(g: BicolouredGraph, down: Optional[int] = None, up: Optional[int] = None) -> BicolouredGraph:
    if down is not None:
        edges = {(d - (d > down), u) for d, u in g.edges if d != down}
        return BicolouredGraph(g.r - 1, g.s, frozenset(edges))
    edges = {(d, u - (u > up)) for d, u in g.edges if u != up}
    return BicolouredGraph(g.r, g.s - 1, frozenset(edges))


def peel(L: PartListing) -> PartListing:
    """Split single vertices off graph parts wherever the combination relation allows.

    Rules, tried in order with the lowest vertex index first: a down vertex
    joined to every up vertex becomes a leading ``v_i``; an isolated up
    vertex becomes a leading ``v_{i+1}``; an isolated down vertex becomes a
    trailing ``v_i``; an up vertex joined to every down vertex becomes a
    trailing ``v_{i+1}``.  What remains cannot be peeled this way.
    """
    out: List[Part] = []
    for p in L.parts:
        if isinstance(p, GraphPart):
            out.extend(_peel_graph(p.level, p.graph))
        else:
            out.append(p)
    return PartListing(tuple(out))


# -- finding a listing for a poset -------------------------------------------------


def _level_functions(p: Poset) -> Iterator[List[int]]:
    """Level maps with ``x < y => l(x) < l(y)`` and ``x || y => |l(x) - l(y)| <= 1``.

    Longest-chain heights come first; they always satisfy these constraints
    on (3+1)-free posets.  The exhaustive search follows.
    """
    h = p.heights()
    yield h
    order = topological_order(p)
    lv = [0] * p.n
    done = 0

    def rec(k: int) -> Iterator[List[int]]:
        nonlocal done
        if k == p.n:
            yield list(lv)
            return
        v = order[k]
        lo = max((lv[u] + 1 for u in _bits(p.down[v])), default=1)
        hi = p.n
        inc = done & ~p.comp_mask(v)
        for w in _bits(inc):
            lo = max(lo, lv[w] - 1)
            hi = min(hi, lv[w] + 1)
        for w in _bits(done & p.up[v]):
            hi = min(hi, lv[w] - 1)
        for val in range(lo, hi + 1):
            lv[v] = val
            done |= 1 << v
            yield from rec(k + 1)
            done &= ~(1 << v)

    for cand in rec(0):
        if cand != h:
            yield cand


def _valid_levels(p: Poset, lv: Sequence[int]) -> bool:
    for x in range(p.n):
        for y in range(p.n):
            if p.lt(x, y) and lv[x] >= lv[y]:
                return False
            if lv[y] - lv[x] >= 2 and not p.lt(x, y):
                return False
    return True


def _listing_for_levels(p: Poset, lv: Sequence[int]) -> Optional[PartListing]:
    n = p.n
    # arc a -> b means part(a) must not come after part(b)
    reach = [1 << v for v in range(n)]
    for x in range(n):
        for y in range(n):
            if lv[y] == lv[x] + 1:
                if p.lt(x, y):
                    reach[x] |= 1 << y
                else:
                    reach[y] |= 1 << x
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if reach[i] & bit:
                reach[i] |= reach[k]
    comp = [0] * n
    for v in range(n):
        comp[v] = sum(1 << w for w in range(n) if reach[v] >> w & 1 and reach[w] >> v & 1)
    blocks: Dict[int, int] = {}
    for v in range(n):
        blocks.setdefault(comp[v], v)
    for mask in blocks:
        levels = {lv[v] for v in _bits(mask)}
        if max(levels) - min(levels) > 1:
            return None
    # topological order of the blocks, smallest vertex first among ready ones
    remaining = set(blocks)
    parts: List[Part] = []
    while remaining:
        ready = [
            b for b in remaining
            if not any(o != b and reach[min(_bits(o))] >> min(_bits(b)) & 1 for o in remaining)
        ]
        b = min(ready, key=lambda m: min(_bits(m)))
        remaining.remove(b)
        members = list(_bits(b))
        if len(members) == 1:
            parts.append(VertexPart(lv[members[0]]))
            continue
        base = min(lv[v] for v in members)
        downs = [v for v in members if lv[v] == base]
        ups = [v for v in members if lv[v] == base + 1]
        edges = frozenset(
            (i + 1, j + 1) for i, d in enumerate(downs) for j, u in enumerate(ups) if p.lt(d, u)
        )
        parts.append(GraphPart(base, BicolouredGraph(len(downs), len(ups), edges)))
    return PartListing(tuple(parts)).normalized()


def find_listing(p: Poset, prefer_vertex_only: bool = True) -> PartListing:
    """A part listing whose poset is isomorphic to the (3+1)-free poset ``p``.

    Levels come from a level map; parts are the strongly connected classes of
    the "must not come later than" constraints between adjacent levels.  A
    graph part left over is peeled where possible.
    """
    if p.n == 0:
        return PartListing()
    if not is_3plus1_free(p):
        raise ValueError("poset contains an induced (3+1); no part listing exists")
    fallback = None
    for lv in _level_functions(p):
        if not _valid_levels(p, lv):
            continue
        L = _listing_for_levels(p, lv)
        if L is None:
            continue
        L = peel(L)
        if not prefer_vertex_only or not L.has_graph_parts():
            return L
        if fallback is None:
            fallback = L
            # only (2+2)-free posets can have a vertex-only listing
            if not is_2plus2_free(p):
                return L
    if fallback is None:
        raise RuntimeError("no level map admits a part listing")
    return fallback


# -- text form ------------------------------------------------------------------

_PART_RE = re.compile(r"v(\d+)|b(\d+)\{(\d+)x(\d+)(?::([^}]*))?\}")
_EDGE_RE = re.compile(r"(\d+)-(\d+)$")


def parse_graph(text: str, offset: int = 0) -> BicolouredGraph:
    """Parse a graph body ``RxS:d-u,...``."""
    m = re.fullmatch(r"(\d+)x(\d+)(?::(.*))?", text.strip())
    if not m:
        raise ListingSyntaxError(f"bad graph literal {text!r}", offset)
    return _graph_from(int(m.group(1)), int(m.group(2)), m.group(3), offset)


def _graph_from(r: int, s: int, edge_text: Optional[str], offset: int) -> BicolouredGraph:
    edges = set()
    if edge_text is not None and edge_text.strip():
        for chunk in edge_text.split(","):
            em = _EDGE_RE.match(chunk.strip())
            if not em:
                raise ListingSyntaxError(f"bad edge {chunk!r}", offset)
            d, u = int(em.group(1)), int(em.group(2))
            if not (1 <= d <= r and 1 <= u <= s):
                raise ListingSyntaxError(f"edge {d}-{u} out of range for {r}x{s}", offset)
            edges.add((d, u))
    return BicolouredGraph(r, s, frozenset(edges))


def parse_listing(text: str) -> PartListing:
    """Parse the whitespace-separated listing grammar; result is level-normalised."""
    parts: List[Part] = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _PART_RE.match(text, pos)
        if not m or (m.end() < n and not text[m.end()].isspace()):
            raise ListingSyntaxError("expected a part 'v<level>' or 'b<level>{RxS:...}'", len(text[:pos].encode()))
        byte_off = len(text[:pos].encode())
        if m.group(1) is not None:
            level = int(m.group(1))
            if level < 1:
                raise ListingSyntaxError("levels start at 1", byte_off)
            parts.append(VertexPart(level))
        else:
            level, r, s = int(m.group(2)), int(m.group(3)), int(m.group(4))
            if level < 1:
                raise ListingSyntaxError("levels start at 1", byte_off)
            if r == 0 and s == 0:
                raise ListingSyntaxError("graph part needs at least one vertex", byte_off)
            parts.append(GraphPart(level, _graph_from(r, s, m.group(5), byte_off)))
        pos = m.end()
    return PartListing(tuple(parts)).normalized()


def serialize_listing(L: PartListing) -> str:
    return " ".join(p.to_text() for p in L.parts)


def listing_to_json(L: PartListing) -> dict:
    parts = []
    for p in L.parts:
        if isinstance(p, VertexPart):
            parts.append({"v": p.level})
        else:
            g = p.graph
            parts.append({"b": {"level": p.level, "r": g.r, "s": g.s, "edges": [list(e) for e in sorted(g.edges)]}})
    return {"parts": parts}


def listing_from_json(obj: Union[str, dict]) -> PartListing:
    if isinstance(obj, str):
        obj = json.loads(obj)
    parts: List[Part] = []
    for item in obj["parts"]:
        if "v" in item:
            parts.append(VertexPart(int(item["v"])))
        else:
            b = item["b"]
            g = BicolouredGraph(int(b["r"]), int(b["s"]), frozenset(tuple(e) for e in b.get("edges", [])))
            parts.append(GraphPart(int(b["level"]), g))
    return PartListing(tuple(parts)).normalized()


def lin_to_json(x: LinListing) -> List[dict]:
    return [{"coeff": str(c), "listing": serialize_listing(L)} for c, L in x.terms]

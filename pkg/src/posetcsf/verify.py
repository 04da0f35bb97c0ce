"""Batch checks: poset counts, e-positivity sweeps, and the reduction/expansion sweeps."""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .csf import csf_lin, csf_listing, csf_poset, verify_modular
from .listing import (
    BicolouredGraph,
    GraphPart,
    LinListing,
    PartListing,
    VertexPart,
    find_listing,
    listing_to_poset,
    serialize_listing,
)
from .modular import reduce_listing, three_free_e_expansion
from .poset import (
    MAX_N,
    Poset,
    PosetClass,
    canonical_key,
    dual,
    enumerate_posets,
    is_2plus2_free,
    is_3plus1_free,
    ordinal_split,
)
from .symfunc import format_symfunc, is_e_positive, m_to_e


class Reduction(str, Enum):
    SPLIT = "split"
    DUAL = "dual"
    UDU_DUD = "udu_dud"

    @classmethod
    def parse_set(cls, text: Union[str, Iterable, None]) -> frozenset:
        if text is None:
            return frozenset()
        if isinstance(text, str):
            items = [t.strip() for t in text.split(",") if t.strip()]
        else:
            items = list(text)
        out = set()
        for item in items:
            if isinstance(item, Reduction):
                out.add(item)
                continue
            key = item.lower().replace("-", "_")
            if key in ("udu", "dud"):
                key = "udu_dud"
            try:
                out.add(cls(key))
            except ValueError:
                raise ValueError(f"unknown reduction {item!r}") from None
        return frozenset(out)


@dataclass
class VerificationReport:
    cls: str
    n: int
    checked: int
    counterexamples: List[Tuple[dict, str]] = field(default_factory=list)
    seconds: float = 0.0
    skipped: int = 0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "class": self.cls,
            "n": self.n,
            "checked": self.checked,
            "skipped": self.skipped,
            "counterexamples": [{"poset": p, "e": e} for p, e in self.counterexamples],
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class SweepReport:
    name: str
    size: int
    checked: int
    failures: List[dict] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, timing: bool = False) -> dict:
        out = {"sweep": self.name, "size": self.size, "checked": self.checked, "failures": self.failures}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _default_jobs() -> int:
    return os.cpu_count() or 1


def _pmap(fn, items: Sequence, jobs: Optional[int]) -> List:
    """Order-preserving map, optionally over worker processes."""
    jobs = _default_jobs() if jobs is None else max(1, jobs)
    if jobs == 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=chunk))


# -- class counts ---------------------------------------------------------------

ROW_LABELS = {
    PosetClass.ALL: "All posets",
    PosetClass.THREE_PLUS_ONE_FREE: "(3+1)-free",
    PosetClass.INTERVAL_ORDER_FREE_BOTH: "and (2+2)-free",
}


def table1_counts(max_n: int) -> Dict[str, List[int]]:
    """Counts per class for ``n = 1..max_n``; each row stops at its class's size limit."""
    if not 1 <= max_n <= max(MAX_N.values()):
        raise ValueError(f"max_n must be in 1..{max(MAX_N.values())}")
    rows = {}
    for cls, label in ROW_LABELS.items():
        top = min(max_n, MAX_N[cls])
        rows[label] = [len(enumerate_posets(n, cls)) for n in range(1, top + 1)]
    return rows


# -- e-positivity --------------------------------------------------------------------


def _e_text(p: Poset) -> Tuple[bool, str]:
    e = m_to_e(csf_poset(p))
    return is_e_positive(e), format_symfunc(e)


def _check_direct(p: Poset) -> Optional[Tuple[dict, str]]:
    ok, text = _e_text(p)
    return None if ok else (p.to_json(), text)


_CONSTITUENT_MEMO: Dict[bytes, bool] = {}


def _check_via_listing(p: Poset) -> Optional[Tuple[dict, str]]:
    """Certify ``p`` through the vertex-only posets its listing reduces to.

    Equal-sized graph parts go to udu words.  Only when some constituent is
    not e-positive is the poset's own function examined.
    """
    L = find_listing(p)
    if L.has_graph_parts():
        certified = True
        for _, word in reduce_listing(LinListing.single(L)):
            q = listing_to_poset(word)
            key = canonical_key(q)
            if key not in _CONSTITUENT_MEMO:
                _CONSTITUENT_MEMO[key] = _e_text(q)[0]
            if not _CONSTITUENT_MEMO[key]:
                certified = False
                break
        if certified:
            return None
    return _check_direct(p)


def select_posets(n: int, cls: PosetClass, reductions: frozenset) -> Tuple[List[Poset], int]:
    posets = enumerate_posets(n, cls)
    keep = []
    for p in posets:
        if Reduction.SPLIT in reductions and ordinal_split(p) is not None:
            continue
        if Reduction.DUAL in reductions and canonical_key(dual(p)) < canonical_key(p):
            continue
        keep.append(p)
    return keep, len(posets) - len(keep)


def check_epositivity(
    n: int,
    cls: Union[str, PosetClass],
    reductions: Union[str, Iterable, None] = None,
    jobs: Optional[int] = 1,
) -> VerificationReport:
    """Enumerate the class at ``n`` and record every poset whose csf is not e-positive.

    ``SPLIT`` skips ordinal sums (their function is a product of smaller
    ones), ``DUAL`` keeps one of each dual pair, and ``UDU_DUD`` certifies
    (3+1)-free posets through the vertex-only words of their reduced listing.
    """
    cls = PosetClass.parse(cls)
    reductions = Reduction.parse_set(reductions)
    limit = 8 if cls is PosetClass.THREE_PLUS_ONE_FREE else MAX_N[cls]
    if not 1 <= n <= limit:
        raise ValueError(f"n={n} outside 1..{limit} for class {cls.value}")
    if Reduction.UDU_DUD in reductions and cls is PosetClass.ALL:
        raise ValueError("the udu/dud reduction needs part listings, i.e. a (3+1)-free class")
    start = time.perf_counter()
    todo, skipped = select_posets(n, cls, reductions)
    fn = _check_via_listing if Reduction.UDU_DUD in reductions else _check_direct
    results = _pmap(fn, todo, jobs)
    bad = [r for r in results if r is not None]
    return VerificationReport(cls.value, n, len(todo), bad, time.perf_counter() - start, skipped)


def reexpand_counterexamples(n: int, cls: Union[str, PosetClass], reductions) -> List[bytes]:
    """Canonical keys of all non-e-positive posets implied by a reduced run.

    Reported counterexamples are closed under duality (if ``DUAL`` was on);
    split posets are settled from the product of their two sides' functions.
    """
    cls = PosetClass.parse(cls)
    reductions = Reduction.parse_set(reductions)
    report = check_epositivity(n, cls, reductions)
    keys = {canonical_key(Poset.from_json(p)) for p, _ in report.counterexamples}
    if Reduction.DUAL in reductions:
        keys |= {canonical_key(dual(Poset.from_json(p))) for p, _ in report.counterexamples}
    if Reduction.SPLIT in reductions:
        for p in enumerate_posets(n, cls):
            split = ordinal_split(p)
            if split is None:
                continue
            xs, ys = split
            prod = csf_poset(p.restrict(xs)) * csf_poset(p.restrict(ys))
            if not is_e_positive(prod):
                keys.add(canonical_key(p))
    return sorted(keys)


# -- reduction / expansion sweeps -------------------------------------------------------


def check_reduction(L: PartListing, target: Optional[Poset] = None) -> List[str]:
    """Problems with ``reduce_listing`` on ``L`` (empty list when everything holds)."""
    problems = []
    out = reduce_listing(LinListing.single(L))
    if any(c < 0 for c, _ in out):
        problems.append("negative coefficient")
    if out.total() != 1:
        problems.append(f"coefficients sum to {out.total()}")
    for _, word in out:
        if word.has_graph_parts():
            problems.append(f"graph part left in {serialize_listing(word)}")
            continue
        q = listing_to_poset(word)
        if not (is_3plus1_free(q) and is_2plus2_free(q)):
            problems.append(f"{serialize_listing(word)} is not (3+1)-and-(2+2)-free")
    want = csf_listing(L) if target is None else csf_poset(target)
    if csf_lin(out) != want:
        problems.append("chromatic symmetric function changed")
    return problems


def _theorem1_item(p: Poset) -> Optional[dict]:
    L = find_listing(p)
    problems = check_reduction(L, p)
    if canonical_key(listing_to_poset(L)) != canonical_key(p):
        problems.append("listing does not reproduce the poset")
    if problems:
        return {"poset": p.to_json(), "listing": serialize_listing(L), "problems": problems}
    return None


def sweep_theorem1(n: int, jobs: Optional[int] = 1) -> SweepReport:
    """Reduce a listing of every (3+1)-free poset on ``n`` vertices to vertex-only words."""
    if not 1 <= n <= 8:
        raise ValueError("sweep_theorem1 supports 1 <= n <= 8")
    start = time.perf_counter()
    posets = enumerate_posets(n, PosetClass.THREE_PLUS_ONE_FREE)
    failures = [r for r in _pmap(_theorem1_item, posets, jobs) if r is not None]
    return SweepReport("theorem1", n, len(posets), failures, time.perf_counter() - start)


def bicoloured_graphs(r: int, s: int) -> List[BicolouredGraph]:
    """One representative per class of ``r x s`` bicoloured graphs (sides not swapped)."""
    cells = [(d, u) for d in range(1, r + 1) for u in range(1, s + 1)]
    seen = set()
    for mask in range(1 << len(cells)):
        g = BicolouredGraph(r, s, frozenset(c for i, c in enumerate(cells) if mask >> i & 1))
        seen.add(g.canonical())
    return sorted(seen, key=lambda g: (len(g.edges), sorted(g.edges)))


def all_bicoloured_graphs(max_rs: int) -> List[BicolouredGraph]:
    out = []
    for total in range(1, max_rs + 1):
        for r in range(total + 1):
            out.extend(bicoloured_graphs(r, total - r))
    return out


def _theorem2_item(g: BicolouredGraph) -> Optional[dict]:
    got = three_free_e_expansion(g)
    want = m_to_e(csf_listing(PartListing((GraphPart(1, g),))))
    problems = []
    if any(c < 0 for c in got.terms.values()):
        problems.append("negative e-coefficient")
    if got != want:
        problems.append(f"expansion {format_symfunc(got)} != {format_symfunc(want)}")
    if problems:
        return {"graph": g.to_text(), "problems": problems}
    return None


def sweep_theorem2(max_rs: int, jobs: Optional[int] = 1) -> SweepReport:
    """Compare the 3-free expansion with the direct computation on every small graph."""
    if not 1 <= max_rs <= 8:
        raise ValueError("sweep_theorem2 supports 1 <= max_rs <= 8")
    start = time.perf_counter()
    graphs = all_bicoloured_graphs(max_rs)
    failures = [r for r in _pmap(_theorem2_item, graphs, jobs) if r is not None]
    return SweepReport("theorem2", max_rs, len(graphs), failures, time.perf_counter() - start)


# -- random modular-law contexts ------------------------------------------------------


def _random_part(rng: random.Random, budget: int, max_level: int):
    if budget >= 2 and rng.random() < 0.35:
        r = rng.randint(0, min(3, budget))
        s = rng.randint(1 if r == 0 else 0, min(3, budget - r))
        edges = frozenset((d, u) for d in range(1, r + 1) for u in range(1, s + 1) if rng.random() < 0.5)
        return GraphPart(rng.randint(1, max_level), BicolouredGraph(r, s, edges))
    return VertexPart(rng.randint(1, max_level + 1))


def random_modular_case(rng: random.Random, max_size: int, max_level: int = 3):
    """``(prefix, G, suffix, e1, e2, level)`` with at most ``max_size`` vertices in total."""
    if max_size < 3:
        raise ValueError("need room for at least three vertices")
    size_g = rng.randint(3, max_size)
    r = rng.randint(1, size_g - 1)
    s = size_g - r
    sides = [side for side, other in (("d", s), ("u", r)) if other >= 2]
    if rng.choice(sides) == "d":
        d = rng.randint(1, r)
        a, b = rng.sample(range(1, s + 1), 2)
        e1, e2 = (d, a), (d, b)
    else:
        u = rng.randint(1, s)
        a, b = rng.sample(range(1, r + 1), 2)
        e1, e2 = (a, u), (b, u)
    edges = {(d, u) for d in range(1, r + 1) for u in range(1, s + 1) if rng.random() < 0.5}
    g = BicolouredGraph(r, s, frozenset(edges | {e1, e2}))
    budget = rng.randint(0, max_size - size_g)
    parts = []
    while budget > 0:
        p = _random_part(rng, budget, max_level)
        parts.append(p)
        budget -= p.size
    cut = rng.randint(0, len(parts))
    prefix = PartListing(tuple(parts[:cut]))
    suffix = PartListing(tuple(parts[cut:]))
    return prefix, g, suffix, e1, e2, rng.randint(1, max_level)


def verify_modular_samples(samples: int, max_size: int, seed: int) -> SweepReport:
    """Check the modular identity on ``samples`` seeded random contexts."""
    start = time.perf_counter()
    rng = random.Random(seed)
    failures = []
    for i in range(samples):
        prefix, g, suffix, e1, e2, level = random_modular_case(rng, max_size)
        if not verify_modular(prefix, g, suffix, e1, e2, level):
            failures.append({
                "sample": i,
                "prefix": serialize_listing(prefix),
                "graph": g.to_text(),
                "level": level,
                "suffix": serialize_listing(suffix),
                "e1": list(e1),
                "e2": list(e2),
            })
    return SweepReport("modular", max_size, samples, failures, time.perf_counter() - start)

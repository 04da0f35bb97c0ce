"""Partitions and exact symmetric functions in the monomial and elementary bases.

A symmetric function is stored as a sparse map from partitions (tuples of
positive ints, weakly decreasing) to ``Fraction`` coefficients.  Only the
``m`` and ``e`` bases exist here; products are always formed in ``m``.
"""

from __future__ import annotations

import json
import re
import threading
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

Partition = Tuple[int, ...]
Rational = Union[int, Fraction]

M = "m"
E = "e"
BASES = (M, E)


def partition(parts: Iterable[int]) -> Partition:
    """Return the canonical (descending, zero-free) tuple for ``parts``."""
    out = tuple(sorted((int(p) for p in parts if p), reverse=True))
    if out and out[-1] < 0:
        raise ValueError(f"negative part in {out}")
    return out


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def multiplicity_factorial(lam: Partition) -> int:
    """Product of ``mult_j(lam)!`` over the distinct part sizes ``j``."""
    out = 1
    for c in Counter(lam).values():
        out *= factorial(c)
    return out


def partitions_of(n: int) -> List[Partition]:
    """All partitions of ``n`` in reverse lexicographic order.

    >>> partitions_of(4)
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partitions_bounded(n, n))


def _partitions_bounded(n: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


def _revlex_key(lam: Partition) -> Tuple[int, Tuple[int, ...]]:
    # degree first, then reverse lexicographic inside a degree
    return (sum(lam), tuple(-p for p in lam))


class SymFunc:
    """Immutable sparse symmetric function in basis ``m`` or ``e``."""

    __slots__ = ("basis", "_terms", "_hash")

    def __init__(self, basis: str, terms: Mapping[Partition, Rational] = ()):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        clean: Dict[Partition, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for lam, c in items:
            key = partition(lam)
            c = Fraction(c)
            if c:
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        self.basis = basis
        self._terms = clean
        self._hash = None

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, basis: str = M) -> "SymFunc":
        return cls(basis)

    @classmethod
    def one(cls, basis: str = M) -> "SymFunc":
        return cls(basis, {(): 1})

    @classmethod
    def monomial(cls, lam: Iterable[int], coeff: Rational = 1) -> "SymFunc":
        return cls(M, {partition(lam): coeff})

    @classmethod
    def elementary(cls, lam: Iterable[int], coeff: Rational = 1) -> "SymFunc":
        return cls(E, {partition(lam): coeff})

    # -- mapping-ish access ---------------------------------------------------

    @property
    def terms(self) -> Dict[Partition, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Partition, Fraction]]:
        """Terms sorted by degree, then lexicographically (``e[4,2]`` before ``e[6]``)."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def coeff(self, lam: Iterable[int]) -> Fraction:
        return self._terms.get(partition(lam), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degrees(self) -> set:
        return {sum(lam) for lam in self._terms}

    # -- arithmetic -----------------------------------------------------------

    def to(self, basis: str) -> "SymFunc":
        if basis == self.basis:
            return self
        return e_to_m(self) if basis == M else m_to_e(self)

    def __add__(self, other: "SymFunc") -> "SymFunc":
        return sf_add(self, other)

    def __neg__(self) -> "SymFunc":
        return sf_scale(-1, self)

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return sf_add(self, sf_scale(-1, other))

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return sf_mul(self, other)
        return sf_scale(other, self)

    def __rmul__(self, other):
        return sf_scale(other, self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.basis == other.basis:
            return self._terms == other._terms
        return self.to(M)._terms == other.to(M)._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.basis, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"SymFunc({format_symfunc(self)!r})"

    def __str__(self) -> str:
        return format_symfunc(self)

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "terms": [[list(lam), str(c)] for lam, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj: Union[str, dict]) -> "SymFunc":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["basis"], {tuple(lam): Fraction(c) for lam, c in obj["terms"]})


def sf_add(a: SymFunc, b: SymFunc) -> SymFunc:
    b = b.to(a.basis)
    out = dict(a._terms)
    for lam, c in b._terms.items():
        out[lam] = out.get(lam, Fraction(0)) + c
    return SymFunc(a.basis, out)


def sf_scale(c: Rational, a: SymFunc) -> SymFunc:
    c = Fraction(c)
    if not c:
        return SymFunc(a.basis)
    return SymFunc(a.basis, {lam: c * v for lam, v in a._terms.items()})


def sf_sum(items: Iterable[SymFunc], basis: str = M) -> SymFunc:
    out: Dict[Partition, Fraction] = {}
    for f in items:
        for lam, c in f.to(basis)._terms.items():
            out[lam] = out.get(lam, Fraction(0)) + c
    return SymFunc(basis, out)


# -- monomial products ---------------------------------------------------------


@lru_cache(maxsize=None)
def monomial_product(lam: Partition, mu: Partition) -> Tuple[Tuple[Partition, int], ...]:
    """Structure constants of ``m_lam * m_mu`` as ``((nu, c), ...)``.

    The coefficient of ``m_nu`` is the coefficient of the monomial ``x^nu``,
    i.e. the number of ways to write ``nu = alpha + beta`` with ``alpha`` a
    rearrangement of ``lam`` and ``beta`` a rearrangement of ``mu`` (both
    zero-padded to the length of ``nu``).
    """
    if not lam:
        return ((mu, 1),)
    if not mu:
        return ((lam, 1),)
    n = sum(lam) + sum(mu)
    lo = max(len(lam), len(mu))
    hi = len(lam) + len(mu)
    out = []
    for nu in partitions_of(n):
        if not lo <= len(nu) <= hi or nu[0] > lam[0] + mu[0]:
            continue
        c = _count_splits(nu, lam, mu)
        if c:
            out.append((nu, c))
    return tuple(out)


def _count_splits(nu: Partition, lam: Partition, mu: Partition) -> int:
    need_a = Counter(lam)
    need_a[0] = len(nu) - len(lam)
    need_b = Counter(mu)
    need_b[0] = len(nu) - len(mu)
    if need_a[0] < 0 or need_b[0] < 0:
        return 0

    def rec(i: int) -> int:
        if i == len(nu):
            return 1
        total = 0
        for a in list(need_a):
            if need_a[a] <= 0:
                continue
            b = nu[i] - a
            if b < 0 or need_b.get(b, 0) <= 0:
                continue
            need_a[a] -= 1
            need_b[b] -= 1
            total += rec(i + 1)
            need_a[a] += 1
            need_b[b] += 1
        return total

    return rec(0)


def sf_mul(a: SymFunc, b: SymFunc) -> SymFunc:
    """Product of two symmetric functions, returned in the ``m`` basis."""
    a = a.to(M)
    b = b.to(M)
    out: Dict[Partition, Fraction] = {}
    for lam, ca in a._terms.items():
        for mu, cb in b._terms.items():
            w = ca * cb
            for nu, c in monomial_product(lam, mu):
                out[nu] = out.get(nu, Fraction(0)) + w * c
    return SymFunc(M, out)


# -- change of basis -----------------------------------------------------------

_E_LOCK = threading.Lock()


@lru_cache(maxsize=None)
def _e_in_m(lam: Partition) -> Tuple[Tuple[Partition, int], ...]:
    if not lam:
        return (((), 1),)
    head = SymFunc(M, dict(_e_in_m(lam[:-1])))
    prod = sf_mul(head, SymFunc.monomial((1,) * lam[-1]))
    return tuple((nu, int(c)) for nu, c in prod.items())


def e_in_m(lam: Iterable[int]) -> Dict[Partition, int]:
    """Monomial expansion of ``e_lam`` (integer coefficients)."""
    lam = partition(lam)
    with _E_LOCK:
        return dict(_e_in_m(lam))


def e_to_m(a: SymFunc) -> SymFunc:
    if a.basis == M:
        return a
    out: Dict[Partition, Fraction] = {}
    for lam, c in a._terms.items():
        for nu, k in e_in_m(lam).items():
            out[nu] = out.get(nu, Fraction(0)) + c * k
    return SymFunc(M, out)


def m_to_e(a: SymFunc) -> SymFunc:
    """Inverse of :func:`e_to_m` by elimination on the unitriangular transition.

    ``e_lam = m_{lam'} + (terms strictly below lam' in dominance)``, so
    repeatedly clearing the reverse-lexicographically largest monomial term
    solves the triangular system exactly.
    """
    if a.basis == E:
        return a
    rem: Dict[Partition, Fraction] = dict(a._terms)
    out: Dict[Partition, Fraction] = {}
    while rem:
        mu = min(rem, key=_revlex_key)
        c = rem[mu]
        lam = conjugate(mu)
        out[lam] = c
        for nu, k in e_in_m(lam).items():
            v = rem.get(nu, Fraction(0)) - c * k
            if v:
                rem[nu] = v
            else:
                rem.pop(nu, None)
        if mu in rem:
            raise ArithmeticError(f"elimination failed to clear m{list(mu)}")
    return SymFunc(E, out)


def is_e_positive(a: SymFunc) -> bool:
    """True iff every e-coefficient is positive (vacuously true for zero)."""
    return all(c > 0 for c in a.to(E)._terms.values())


# -- text form -----------------------------------------------------------------


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_symfunc(a: SymFunc) -> str:
    """``20*e[4,2] + 40*e[5,1] + 180*e[6]``; zero renders as ``0``."""
    items = a.items()
    if not items:
        return "0"
    chunks = []
    for i, (lam, c) in enumerate(items):
        body = f"{_fmt_rat(abs(c))}*{a.basis}[{','.join(map(str, lam))}]"
        if i == 0:
            chunks.append(("-" if c < 0 else "") + body)
        else:
            chunks.append((" - " if c < 0 else " + ") + body)
    return "".join(chunks)


_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)\*([me])\[([\d,\s]*)\]\s*")


def parse_symfunc(text: str) -> SymFunc:
    text = text.strip()
    if text == "0":
        return SymFunc(M)
    pos = 0
    basis = None
    terms: Dict[Partition, Fraction] = {}
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or (not first and m.group(1) is None):
            raise ValueError(f"bad symmetric function text at offset {pos}: {text[pos:pos + 20]!r}")
        sign, coeff, b, parts = m.groups()
        if basis is None:
            basis = b
        elif b != basis:
            raise ValueError("mixed bases in one expression")
        lam = partition(int(p) for p in parts.split(",") if p.strip())
        c = Fraction(coeff) * (-1 if sign == "-" else 1)
        terms[lam] = terms.get(lam, Fraction(0)) + c
        pos = m.end()
        first = False
    if basis is None:
        raise ValueError("empty symmetric function text")
    return SymFunc(basis, terms)

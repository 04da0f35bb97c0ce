"""Functionals, reduction and e-expansion of one two-level poset, step by step."""

from __future__ import annotations

import argparse
from fractions import Fraction
from math import factorial

from posetcsf import csf
from posetcsf.listing import GraphPart, LinListing, PartListing, parse_graph, serialize_listing
from posetcsf.modular import circulate_udu, decompose_dual, functionals, reduce_listing, three_free_e_expansion
from posetcsf.symfunc import format_symfunc, m_to_e


def trace_expansion(g) -> None:
    if g.r < g.s:
        g = g.transpose()
    stage = {g.canonical(): Fraction(1)}
    r, s = g.r, g.s
    while s > 0:
        print(f"  stage ({r}, {s}): {len(stage)} graph(s)")
        nxt = {}
        for h, c in stage.items():
            f = functionals(h)
            print(f"    {c} * [{h.to_text()}]  F = ({', '.join(str(x) for x in f)})")
            if f[s]:
                print(f"      peel {c * f[s] * factorial(r) * factorial(s)} * e[{r},{s}]")
            for k in range(s):
                if f[k]:
                    h2 = circulate_udu(r, s, k).canonical()
                    nxt[h2] = nxt.get(h2, Fraction(0)) + c * f[k]
        stage = nxt
        r, s = r + 1, s - 1
    total = sum(stage.values(), Fraction(0))
    print(f"  last stage: weight {total} -> {total * factorial(r)} * e[{r}]")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graph", default="4x2:1-1,2-1,1-2,3-2,4-2")
    args = ap.parse_args()
    g = parse_graph(args.graph)
    L = PartListing((GraphPart(1, g),))

    print("graph:", g.to_text())
    print("functionals:", ", ".join(str(x) for x in functionals(g)))
    print("dual decomposition:")
    for c, w in decompose_dual(g):
        print(f"  {c}\t{serialize_listing(w)}")
    print("reduced listing:")
    for c, w in reduce_listing(LinListing.single(L)):
        print(f"  {c}\t{serialize_listing(w)}")
    print("expansion trace:")
    trace_expansion(g)
    got = three_free_e_expansion(g)
    direct = m_to_e(csf.csf_listing(L))
    print("e-expansion:", format_symfunc(got))
    print("basis change:", format_symfunc(direct), "(agree)" if got == direct else "(DIFFER)")


if __name__ == "__main__":
    main()

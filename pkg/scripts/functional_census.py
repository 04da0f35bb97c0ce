"""How many bicoloured graphs (up to isomorphism) share each functional vector."""

from __future__ import annotations

import argparse
from collections import Counter

from posetcsf.modular import functionals
from posetcsf.verify import bicoloured_graphs


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", type=int, default=3)
    ap.add_argument("--s", type=int, default=3)
    ap.add_argument("--top", type=int, default=15)
    args = ap.parse_args()
    graphs = bicoloured_graphs(args.r, args.s)
    census = Counter(functionals(g) for g in graphs)
    print(f"{len(graphs)} graphs, {len(census)} distinct functional vectors")
    for vec, count in census.most_common(args.top):
        print(f"{count:>5}  ({', '.join(str(x) for x in vec)})")


if __name__ == "__main__":
    main()

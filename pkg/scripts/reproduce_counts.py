"""Print the number of posets per class for n = 1..max_n."""

from __future__ import annotations

import argparse
import time

from posetcsf.verify import table1_counts


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=10)
    args = ap.parse_args()
    start = time.perf_counter()
    rows = table1_counts(args.max_n)
    width = max(len(k) for k in rows)
    print(f"{'n':<{width}}  " + " ".join(f"{n:>6}" for n in range(1, args.max_n + 1)))
    for label, counts in rows.items():
        print(f"{label:<{width}}  " + " ".join(f"{c:>6}" for c in counts))
    print(f"({time.perf_counter() - start:.1f}s)")


if __name__ == "__main__":
    main()

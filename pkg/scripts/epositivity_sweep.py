"""Time e-positivity sweeps over a class with each combination of search reductions."""

from __future__ import annotations

import argparse

from posetcsf.verify import check_epositivity

FLAG_SETS = ["", "split", "dual", "split,dual", "udu_dud", "split,dual,udu_dud"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--class", dest="cls", default="3p1free")
    ap.add_argument("--jobs", type=int, default=None)
    args = ap.parse_args()
    print(f"{'reductions':<20} {'checked':>8} {'skipped':>8} {'bad':>5} {'seconds':>8}")
    for flags in FLAG_SETS:
        if "udu_dud" in flags and args.cls == "all":
            continue
        rep = check_epositivity(args.n, args.cls, flags, jobs=args.jobs)
        print(f"{flags or '-':<20} {rep.checked:>8} {rep.skipped:>8} {len(rep.counterexamples):>5} {rep.seconds:>8.2f}")


if __name__ == "__main__":
    main()

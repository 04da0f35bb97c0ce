"""Command-line front end.

Exit codes: 0 success, 1 a counterexample or failed check (payload printed
as JSON), 2 usage, parse or size errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .csf import csf_listing, csf_poset
from .listing import LinListing, listing_from_json, lin_to_json, parse_graph, parse_listing
from .modular import reduce_listing, three_free_e_expansion
from .poset import Poset, PosetClass, enumerate_posets
from .symfunc import E, M, format_symfunc
from .verify import (
    check_epositivity,
    sweep_theorem1,
    sweep_theorem2,
    table1_counts,
    verify_modular_samples,
)


class UsageError(Exception):
    pass


def _read_listing(path: Optional[str], text: Optional[str]):
    if text is not None:
        return parse_listing(text)
    with open(path) as fh:
        raw = fh.read()
    return listing_from_json(raw) if raw.lstrip().startswith("{") else parse_listing(raw)


def _emit(obj, as_json: bool, text: str = None) -> None:
    if as_json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text if text is not None else json.dumps(obj, sort_keys=True))


def cmd_csf(args) -> int:
    sources = [x for x in (args.poset, args.listing, args.listing_str) if x is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --poset, --listing, --listing-str")
    if args.poset is not None:
        with open(args.poset) as fh:
            f = csf_poset(Poset.from_json(fh.read()))
    else:
        f = csf_listing(_read_listing(args.listing, args.listing_str))
    f = f.to(args.basis)
    _emit(f.to_json(), args.json, format_symfunc(f))
    return 0


def cmd_expand3free(args) -> int:
    f = three_free_e_expansion(parse_graph(args.graph))
    _emit(f.to_json(), args.json, format_symfunc(f))
    return 0


def cmd_reduce(args) -> int:
    if (args.listing is None) == (args.listing_str is None):
        raise UsageError("give exactly one of --listing, --listing-str")
    out = reduce_listing(LinListing.single(_read_listing(args.listing, args.listing_str)))
    if args.json:
        print(json.dumps(lin_to_json(out), sort_keys=True))
    else:
        for term in lin_to_json(out):
            print(f"{term['coeff']}\t{term['listing']}")
    return 0


def cmd_verify(args) -> int:
    if args.what == "modular":
        report = verify_modular_samples(args.samples, args.max_size, args.seed)
    elif args.what == "theorem1":
        report = sweep_theorem1(args.n, jobs=args.jobs)
    else:
        report = sweep_theorem2(args.max_rs, jobs=args.jobs)
    print(json.dumps(report.to_json(args.timing), sort_keys=True))
    return 0 if report.passed else 1


def cmd_enumerate(args) -> int:
    posets = enumerate_posets(args.n, args.cls)
    if args.count_only:
        print(len(posets))
    else:
        for p in posets:
            print(json.dumps(p.to_json()))
    return 0


def cmd_check_epos(args) -> int:
    report = check_epositivity(args.n, args.cls, args.reductions, jobs=args.jobs)
    print(json.dumps(report.to_json(args.timing), sort_keys=True))
    return 0 if report.passed else 1


def cmd_counts(args) -> int:
    rows = table1_counts(args.max_n)
    if args.json:
        print(json.dumps(rows))
    else:
        width = max(len(k) for k in rows)
        print(f"{'n':<{width}}  " + " ".join(f"{n:>6}" for n in range(1, args.max_n + 1)))
        for label, counts in rows.items():
            print(f"{label:<{width}}  " + " ".join(f"{c:>6}" for c in counts))
    return 0


def _class_arg(text: str) -> PosetClass:
    try:
        return PosetClass.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="posetcsf", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("csf", help="chromatic symmetric function of a poset or listing")
    p.add_argument("--poset", metavar="FILE", help="poset JSON file")
    p.add_argument("--listing", metavar="FILE", help="listing file (text grammar or JSON)")
    p.add_argument("--listing-str", metavar="TEXT")
    p.add_argument("--basis", choices=[M, E], default=M)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_csf)

    p = sub.add_parser("expand3free", help="e-expansion of a two-level poset b1{G}")
    p.add_argument("--graph", required=True, metavar="SPEC", help="e.g. 4x2:1-1,2-1,1-2,3-2,4-2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_expand3free)

    p = sub.add_parser("reduce", help="rewrite a listing into vertex-only words")
    p.add_argument("--listing", metavar="FILE")
    p.add_argument("--listing-str", metavar="TEXT")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="randomised and exhaustive identity checks")
    p.add_argument("what", choices=["modular", "theorem1", "theorem2"])
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--max-size", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=6, help="poset size for theorem1")
    p.add_argument("--max-rs", type=int, default=6, help="r+s bound for theorem2")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="posets up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="cls", type=_class_arg, default=PosetClass.ALL,
                   help="all | 3p1free | both")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check-epos", help="e-positivity over a poset class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="cls", type=_class_arg, default=PosetClass.THREE_PLUS_ONE_FREE)
    p.add_argument("--reductions", default="", help="comma list of split,dual,udu_dud")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all CPUs)")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.set_defaults(func=cmd_check_epos)

    p = sub.add_parser("counts", help="poset counts per class")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_counts)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"posetcsf: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

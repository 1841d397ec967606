"""Command-line entry point: ``fintopo {classify,check-claims,enumerate,implication-matrix}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__, plotting, report
from .claims import UnknownClaim, get_claim, run_all
from .classifiers import classify_map, classify_subset
from .documents import ParseError, SpaceDocument, ValidationError, load_space, parse_map_text, parse_subset
from .enumeration import CACHE_ENV, MAX_ENUM_N, BudgetExceeded, Mode, SearchBudget, enumerate_topologies
from .implications import MAX_MATRIX_N, implication_matrix, to_dot
from .operators import AlphaMVariant
from .space import PointMap

log = logging.getLogger("fintopo")

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_USAGE = 2

_VARIANTS = [v.value for v in AlphaMVariant]


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args) -> int:
    variant = AlphaMVariant(args.variant)
    space = load_space(args.space)
    if args.map:
        if not args.codomain:
            raise ParseError("--map needs --codomain", "<args>")
        codomain = load_space(args.codomain)
        img = parse_map_text(Path(args.map).read_text(), space, codomain, args.map)
        f = PointMap(space, codomain, img)
        doc = report.classify_map_report(f, classify_map(f, variant), variant)
    else:
        masks = [parse_subset(args.subset, space)] if args.subset is not None else list(space.subsets())
        doc = report.classify_subsets_report(space, [(m, classify_subset(space, m, variant)) for m in masks], variant)
    _emit(report.dumps(doc) if args.format == "machine" else report.classify_tsv(doc), args.output)
    return EXIT_OK


def cmd_check_claims(args) -> int:
    budget = SearchBudget(
        max_domain_n=args.max_n,
        max_codomain_n=args.max_codomain_n or args.max_n,
        max_witness_spaces=args.max_witness_spaces,
        wall_clock=args.wall_clock,
    )
    variants = _VARIANTS if args.variant == "both" else [args.variant]
    ids = args.claim or None
    if ids:
        for cid in ids:
            get_claim(cid)
    by_variant = {v: run_all(budget, v, ids, workers=args.workers) for v in variants}
    doc = report.claims_report(by_variant, budget)
    _emit(report.dumps(doc) if args.format == "machine" else report.claims_tsv(doc), args.output)
    if args.figures:
        plotting.claim_verdict_grid(doc, Path(args.figures) / "claim-verdicts.png")
    if doc["fatal_failures"]:
        log.error("implementation-bug claims violated: %s", ", ".join(doc["fatal_failures"]))
        return EXIT_FATAL
    return EXIT_OK


def cmd_enumerate(args) -> int:
    mode = Mode(args.mode)
    rows = []
    listing = {} if args.list else None
    for n in range(1, args.max_n + 1):
        try:
            cat = enumerate_topologies(n, mode, wall_clock=args.wall_clock, cache=args.cache_dir)
        except BudgetExceeded:
            rows.append({"n": n, "outcome": "budget-exceeded"})
            break
        rows.append({"n": n, "count": len(cat), "outcome": "complete"})
        if listing is not None:
            listing[str(n)] = [SpaceDocument.from_space(s).opens for s in cat]
    doc = report.enumerate_report(rows, mode.value, listing)
    _emit(report.dumps(doc) if args.format == "machine" else report.enumerate_tsv(doc), args.output)
    if args.figures:
        plotting.topology_counts(rows, mode.value, Path(args.figures) / f"topology-counts-{mode.value}.png")
    return EXIT_OK


def cmd_implication_matrix(args) -> int:
    m = implication_matrix(args.max_n, args.variant)
    if args.format == "graph":
        text = to_dot(m)
    elif args.format == "machine":
        text = report.dumps(report.matrix_report(m))
    else:
        text = report.matrix_tsv(m)
    _emit(text, args.output)
    if args.figures:
        out = Path(args.figures)
        plotting.implication_heatmap(m, out / f"implications-n{m.max_n}-{m.variant.value}.png")
        plotting.hasse_diagram(m, out / f"hasse-n{m.max_n}-{m.variant.value}.png")
    return EXIT_OK


def _bounded(lo: int, hi: int):
    def parse(text: str) -> int:
        v = int(text)
        if not lo <= v <= hi:
            raise argparse.ArgumentTypeError(f"must be in {lo}..{hi}")
        return v

    return parse


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fintopo", description=__doc__)
    p.add_argument("--version", action="version", version=f"fintopo {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats, default="table"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("-o", "--output", help="write the report here instead of stdout")

    c = sub.add_parser("classify", help="class vector of a subset, a map, or every subset of a space")
    c.add_argument("space", help="space file (text or JSON)")
    c.add_argument("--subset", help="subset literal such as '{a,c}'")
    c.add_argument("--map", help="map file with lines 'x -> y'")
    c.add_argument("--codomain", help="codomain space file for --map")
    c.add_argument("--variant", choices=_VARIANTS, default=AlphaMVariant.ALPHA_OPEN.value)
    common(c, ["table", "machine"])
    c.set_defaults(func=cmd_classify)

    k = sub.add_parser("check-claims", help="run the claim registry over the enumerated universe")
    k.add_argument("--max-n", type=_bounded(1, MAX_ENUM_N), default=3)
    k.add_argument("--max-codomain-n", type=_bounded(1, MAX_ENUM_N))
    k.add_argument("--max-witness-spaces", type=_bounded(1, 10**9))
    k.add_argument("--variant", choices=[*_VARIANTS, "both"], default="both")
    k.add_argument("--claim", action="append", help="restrict to this claim id (repeatable)")
    k.add_argument("--workers", type=int, default=1)
    k.add_argument("--wall-clock", type=float, help="seconds per claim before BudgetExceeded")
    k.add_argument("--figures", help="directory for the verdict figure")
    common(k, ["table", "machine"])
    k.set_defaults(func=cmd_check_claims)

    e = sub.add_parser("enumerate", help="count (and optionally list) topologies")
    e.add_argument("--max-n", type=_bounded(1, MAX_ENUM_N), default=4)
    e.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.LABELED.value)
    e.add_argument("--list", action="store_true", help="include every space in the report")
    e.add_argument("--cache-dir", help=f"catalog cache directory (default: ${CACHE_ENV})")
    e.add_argument("--wall-clock", type=float)
    e.add_argument("--figures", help="directory for the counts figure")
    common(e, ["table", "machine"])
    e.set_defaults(func=cmd_enumerate)

    m = sub.add_parser("implication-matrix", help="implications between set classes")
    m.add_argument("--max-n", type=_bounded(1, MAX_MATRIX_N), default=4)
    m.add_argument("--variant", choices=_VARIANTS, default=AlphaMVariant.ALPHA_OPEN.value)
    m.add_argument("--figures", help="directory for the heatmap and Hasse diagram")
    common(m, ["table", "graph", "machine"])
    m.set_defaults(func=cmd_implication_matrix)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UnknownClaim as exc:
        print(f"fintopo: unknown claim {exc.args[0]!r}", file=sys.stderr)
    except (ParseError, ValidationError, OSError) as exc:
        print(f"fintopo: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``g2census census|identities|chern|abelianize``."""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import chern, identities, report
from .census import ModelMismatch, RepresentationCensus, UnsupportedImage
from .deformation import ConsistencyFailure
from .groups import BoundExceeded, catalog_names
from .presentation import PresentationError, abelianization, builtin, hom_count_mod2, parse_presentation

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONSISTENCY = 2
EXIT_UNSUPPORTED = 3
EXIT_DEGENERATE = 4


def _load_presentation(args):
    if bool(args.builtin) == bool(args.presentation):
        raise PresentationError("give exactly one of --builtin or --presentation")
    if args.builtin:
        return builtin(args.builtin)
    with open(args.presentation) as fh:
        return parse_presentation(fh.read(), name=os.path.basename(args.presentation))


def _emit(text: str, path) -> None:
    if path:
        report.write_atomic(path, text)
    else:
        sys.stdout.write(text)


def _prune_flag(value: str, order: int) -> bool:
    if value == "auto":
        return order > 8
    return value == "on"


def cmd_census(args) -> int:
    p = _load_presentation(args)
    est = RepresentationCensus(target=args.target, jobs=args.jobs, depth=args.depth, strict=args.strict)
    est.set_params(prune=_prune_flag(args.prune, est._target_group().order))
    cache_dir = args.cache_dir or os.environ.get("G2CENSUS_CACHE")
    key = report.cache_key(est, p)
    started = time.perf_counter()
    body = report.cache_load(cache_dir, key)
    cached = body is not None
    if body is None:
        est.fit(p)
        body = report.census_report(est)
        report.cache_store(cache_dir, key, body)
    if args.strict and body["degenerate_irreducible"]:
        print(f"error: {len(body['degenerate_irreducible'])} irreducible classes have H^1 != 0; "
              "the unperturbed count is not an invariant", file=sys.stderr)
        return EXIT_DEGENERATE
    out = dict(body)
    if not args.no_timing:
        out["runtime"] = {"seconds": round(time.perf_counter() - started, 3), "jobs": args.jobs, "cache_hit": cached}
    _emit(report.dumps(out), args.report)
    irr = body["irreducible_classes"]
    print(f"{p.name}: target {body['target']['name']}, {body['raw_solutions']} solutions, "
          f"{len(body['classes'])} classes, {irr} irreducible, "
          f"{len(body['degenerate_irreducible'])} degenerate irreducible", file=sys.stderr)
    sizes = {}
    for v in body["totals"].values():
        sizes[v] = sizes.get(v, 0) + 1
    print("totals: " + (", ".join(f"{n} signature(s) with total {v}" for v, n in sorted(sizes.items())) or "none"),
          file=sys.stderr)
    return EXIT_OK


def cmd_identities(args) -> int:
    if args.trials < 1:
        raise ValueError("--trials must be >= 1")
    res = identities.run_suite(seed=args.seed, trials=args.trials)
    _emit(report.dumps(res), args.report)
    for name, r in res["checks"].items():
        status = "pass" if r["failures"] == 0 else f"FAIL ({r['failures']}/{r['trials']})"
        print(f"{name}: {status}", file=sys.stderr)
    return EXIT_OK if res["passed"] else EXIT_CONSISTENCY


def cmd_chern(args) -> int:
    rank = chern.FORMAL if args.formal else args.rank
    if rank != chern.FORMAL and not 1 <= rank <= 4:
        raise ValueError("--rank must be in 1..4")
    checks = chern.verify(rank)
    if rank == 1:
        checks["adjoint of a line bundle vanishes"] = not chern.ch_adjoint(1).kill_chern_above(1).terms
    par = chern.parity_combination(rank)
    lines = {
        "rank": str(rank),
        "ch_adjoint": str(chern.ch_adjoint(rank)),
        "parity_combination": str(par),
        "coefficient c2*p1": chern.format_rank_poly(par.coefficient("c2", "p1")),
        "coefficient c3*c1": chern.format_rank_poly(par.coefficient("c3", "c1")),
        "checks": checks,
        "passed": all(checks.values()),
    }
    _emit(report.dumps(lines), args.report)
    return EXIT_OK if lines["passed"] else EXIT_CONSISTENCY


def cmd_abelianize(args) -> int:
    p = _load_presentation(args)
    inv = abelianization(p)
    res = {"presentation": p.name, "invariant_factors": list(inv.factors), "free_rank": inv.free_rank,
           "group": str(inv), "hom_count_mod2": hom_count_mod2(p)}
    _emit(report.dumps(res), args.report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="g2census", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def source(sp):
        sp.add_argument("--builtin", help="built-in presentation: joyce-ex3, joyce-ex3-affine, t3-k3")
        sp.add_argument("--presentation", help="presentation text file")

    c = sub.add_parser("census", help="count irreducible flat classes")
    source(c)
    c.add_argument("--target", default="S4", choices=catalog_names())
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--depth", type=int, default=3, help="trace schedule word length")
    c.add_argument("--prune", choices=["on", "off", "auto"], default="auto")
    c.add_argument("--strict", action="store_true")
    c.add_argument("--report")
    c.add_argument("--cache-dir")
    c.add_argument("--no-timing", action="store_true")
    c.set_defaults(func=cmd_census)

    i = sub.add_parser("identities", help="seeded exact identity suite")
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("--trials", type=int, default=identities.DEFAULT_TRIALS)
    i.add_argument("--report")
    i.set_defaults(func=cmd_identities)

    ch = sub.add_parser("chern", help="adjoint Chern character checks")
    g = ch.add_mutually_exclusive_group(required=True)
    g.add_argument("--rank", type=int)
    g.add_argument("--formal", action="store_true")
    ch.add_argument("--report")
    ch.set_defaults(func=cmd_chern)

    a = sub.add_parser("abelianize", help="abelianization and |Hom(G, Z/2)|")
    source(a)
    a.add_argument("--report")
    a.set_defaults(func=cmd_abelianize)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConsistencyFailure as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except UnsupportedImage as exc:
        print(f"unsupported image: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (PresentationError, ModelMismatch, BoundExceeded, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

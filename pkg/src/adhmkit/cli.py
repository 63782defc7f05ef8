"""
Command line front end.

Exit codes: 0 when everything checked passes, 1 when a check or suite fails,
2 for usage errors, unreadable input and unsatisfiable requests.
"""

from __future__ import annotations

import argparse
import sys

from . import adhm
from .bar.complex import build_bar, homology, homology_report
from .bar.monoids import FiniteMonoid, MonoidModule
from .errors import AdhmKitError, ConfigInvalid
from .io import config_from_json, config_to_json, dumps, read_json, write_json
from .suites import SuiteConfig, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(args, obj):
    if args.json_out:
        write_json(args.json_out, obj)
    if not args.quiet:
        print(dumps(obj))


def cmd_gen(args) -> int:
    if args.kind == "adhm":
        cfg = adhm.random_nondegenerate(args.k, args.r, args.seed)
    else:
        cfg = adhm.random_nondegenerate_blowup(args.k, args.r, args.seed)
    _emit(args, config_to_json(cfg))
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = config_from_json(read_json(args.path))
    tol = args.tol if args.tol is not None else 1e-9
    out = {"kind": cfg.kind, "k": cfg.k, "r": cfg.r, "tol": tol,
           "residual": adhm.residual(cfg), "valid": adhm.is_valid(cfg, tol),
           "nondegenerate": adhm.nondegenerate(cfg)}
    if isinstance(cfg, adhm.AdhmConfig):
        out["stable"] = adhm.is_stable(cfg)
        out["costable"] = adhm.is_costable(cfg)
    else:
        out["surjective"] = adhm.is_surjective(cfg)
    _emit(args, out)
    return EXIT_OK if out["valid"] and out["nondegenerate"] else EXIT_FAIL


def cmd_suites(args) -> int:
    cfg = SuiteConfig.from_json(read_json(args.path)) if args.path else SuiteConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    if args.trials is not None:
        cfg.trials = args.trials
    if args.tol is not None:
        cfg.residual_tol = args.tol
    cfg = SuiteConfig.from_json(cfg.to_json())  # re-validate overrides
    report = run_suites(cfg)
    _emit(args, report.to_json())
    if args.quiet:
        return EXIT_OK if report.passed else EXIT_FAIL
    for name, res in report.results.items():
        print(f"{name}: {'pass' if res.passed else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def load_bar_input(obj) -> tuple[MonoidModule, FiniteMonoid, MonoidModule]:
    """A monoid object, optionally with ``xl`` / ``xr`` modules (default ``"point"``)."""
    if not isinstance(obj, dict):
        raise ConfigInvalid("bar input must be a JSON object")
    monoid = FiniteMonoid.from_json(obj)
    xl = MonoidModule.from_json(monoid, obj.get("xl", "point"), "right")
    xr = MonoidModule.from_json(monoid, obj.get("xr", "point"), "left")
    return xl, monoid, xr


def cmd_bar(args) -> int:
    xl, monoid, xr = load_bar_input(read_json(args.path))
    degree = args.through_degree if args.through_degree is not None else args.levels - 1
    bc = build_bar(xl, monoid, xr, args.levels)
    _emit(args, homology_report(homology(bc, degree)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-out", metavar="PATH", help="also write the JSON output here")
    common.add_argument("--quiet", action="store_true", help="print nothing on stdout")

    p = argparse.ArgumentParser(prog="adhmkit", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", parents=[common], help="draw a random nondegenerate configuration")
    g.add_argument("kind", choices=("adhm", "blowup"))
    g.add_argument("k", type=int)
    g.add_argument("r", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", parents=[common], help="validate a single configuration file")
    c.add_argument("path")
    c.add_argument("--tol", type=float)
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("suites", parents=[common], help="run property suites")
    s.add_argument("path", nargs="?", help="SuiteConfig JSON (defaults when omitted)")
    s.add_argument("--seed", type=int)
    s.add_argument("--trials", type=int)
    s.add_argument("--tol", type=float, help="override residual_tol")
    s.set_defaults(func=cmd_suites)

    b = sub.add_parser("bar", parents=[common], help="homology of a two-sided bar construction")
    b.add_argument("path", help="monoid JSON, optionally with xl / xr modules")
    b.add_argument("--levels", type=int, default=4)
    b.add_argument("--through-degree", type=int)
    b.set_defaults(func=cmd_bar)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AdhmKitError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

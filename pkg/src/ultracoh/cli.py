"""Command line: ``ultracoh run <suite> [--spec file.json] [flags] [--out dir] [--format json|csv]``.

Flags override values read from the spec file, which override suite
defaults.  Exit status: 0 all assertions pass, 1 an assertion failed,
2 usage or schema error, 3 precision exhausted.  The only environment
variable read is ULTRACOH_OUT, a default output directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import jsonschema

from . import report as rpt
from .scalars import PrecisionError
from .suites import SUITES, run_suite

OUT_ENV = "ULTRACOH_OUT"
DEFAULT_OUT = "ultracoh-reports"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3

# extra spec keys each suite accepts on top of its defaults
PAYLOAD_KEYS = {
    "cochains": {"windows"},
    "procyclic": {"action", "module"},
    "koszul": {"action", "module"},
    "homotopy": {"p", "N", "action", "level", "homotopy", "module"},
    "main-theorem": {"p", "action", "module"},
    "lie-kostant": {"instances"},
    "lie-hs": {"instances", "structure_constants", "module_matrices", "h_basis"},
    "lie-conjecture": {"instances", "structure_constants", "module_matrices", "h_basis"},
}

# (flag, spec key, type, help)
FLAGS = [
    ("--p", "p", int, "prime"),
    ("--N", "N", int, "working precision (t-adic, or p-adic for matrix groups)"),
    ("--n", "n", int, "matrix size for congruence subgroups"),
    ("--j", "j", int, "congruence level"),
    ("--d", "d", int, "number of commuting generators"),
    ("--e", "e", int, "degree of the unramified extension"),
    ("--samples", "samples", int, "sampled pairs"),
    ("--maps", "maps", int, "random maps"),
    ("--max-rank", "max_rank", int, "largest module rank"),
    ("--tables", "tables", int, "random cochain tables"),
    ("--actions", "actions", int, "random actions"),
    ("--specs", "specs", int, "random abelian specs"),
    ("--degrees", "degrees", str, "comma-separated cochain degrees"),
    ("--max-points", "max_points", int, "points sampled per cochain comparison"),
    ("--algebra", "algebra", str, "catalog algebra, e.g. sl2, sl3, heisenberg, sl2-borel"),
    ("--weight", "weight", str, "highest weight, e.g. 2 or 1,0"),
    ("--subalgebra", "subalgebra", str, "catalog subalgebra, e.g. nilradical, center, cartan"),
    ("--rep", "rep", str, "module: trivial, adjoint or a highest weight"),
]


def build_parser():
    ap = argparse.ArgumentParser(prog="ultracoh", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a verification suite")
    run.add_argument("suite", choices=sorted(SUITES))
    run.add_argument("--spec", type=Path, help="JSON experiment spec")
    run.add_argument("--seed", type=int)
    for flag, key, typ, hlp in FLAGS:
        run.add_argument(flag, dest=key, type=typ, help=hlp)
    run.add_argument("--out", type=Path, help=f"output directory (default ${OUT_ENV} or ./{DEFAULT_OUT})")
    run.add_argument("--format", choices=("json", "csv"), default="json")
    run.add_argument("--no-figures", action="store_true", help="skip the PNG figures")
    run.add_argument("--quiet", action="store_true")
    sub.add_parser("suites", help="list suites and their defaults")
    return ap


class UsageError(Exception):
    pass


def resolve_spec(suite, spec_path=None, overrides=None):
    """Merge spec file and flag overrides, validate, and return suite params."""
    spec = {}
    if spec_path is not None:
        try:
            spec = json.loads(Path(spec_path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read spec {spec_path}: {exc}") from exc
        if not isinstance(spec, dict):
            raise UsageError("spec must be a JSON object")
    spec = dict(spec)
    spec.update({k: v for k, v in (overrides or {}).items() if v is not None})
    spec.setdefault("seed", 0)
    try:
        rpt.validate_spec(spec)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise UsageError(f"schema error at {where}: {exc.message}") from exc
    if spec.get("suite", suite) != suite:
        raise UsageError(f"spec is for suite {spec['suite']!r}, not {suite!r}")
    params = {k: v for k, v in spec.items() if k not in ("suite", "schema_version")}
    _, defaults = SUITES[suite]
    if "primes" in defaults and "p" in params and "action" not in params:
        params["primes"] = [params.pop("p")]
    allowed = set(defaults) | PAYLOAD_KEYS.get(suite, set())
    extra = sorted(set(params) - allowed)
    if extra:
        raise UsageError(f"suite {suite!r} does not take {', '.join(extra)}")
    return params


def _out_dir(arg):
    if arg is not None:
        return arg
    return Path(os.environ.get(OUT_ENV) or DEFAULT_OUT)


def cmd_run(args):
    overrides = {key: getattr(args, key) for _, key, _, _ in FLAGS}
    overrides["seed"] = args.seed
    params = resolve_spec(args.suite, args.spec, overrides)
    try:
        result = run_suite(args.suite, params)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{args.suite}: {exc}") from exc
    out = _out_dir(args.out)
    figures = []
    if not args.no_figures and result.plots:
        from . import plots
        figures = [str(p) for p in plots.render(result.plots, out, args.suite)]
    report = rpt.build_report(result, figures)
    rpt.validate_report(report)
    paths = rpt.write_report(report, out, args.format)
    if not args.quiet:
        for a in report["stable"]["assertions"]:
            mark = "PASS" if a["passed"] else "FAIL"
            print(f"{mark} {a['name']} ({a['checked'] - a['failed']}/{a['checked']})")
        for key in ("reading", "dims"):
            if key in result.payload:
                print(f"{key}: {result.payload[key]}")
        print(f"wrote {', '.join(str(p) for p in paths + [Path(f) for f in figures])}")
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_suites():
    for name in sorted(SUITES):
        fn, defaults = SUITES[name]
        doc = (fn.__doc__ or "").strip().splitlines()[0]
        print(f"{name:16s} {doc}")
        print(f"{'':16s} defaults: {json.dumps(defaults, sort_keys=True)}")
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "suites":
            return cmd_suites()
        return cmd_run(args)
    except UsageError as exc:
        print(f"ultracoh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"ultracoh: {getattr(args, 'suite', '')}: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except OSError as exc:
        print(f"ultracoh: cannot write report: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

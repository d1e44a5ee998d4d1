"""``jn`` command line: sample functions, run the operators, compute seminorms, verify.

Exit codes: 0 success, 1 invalid input (one ``error: <kind>: <message>``
line on stderr), 2 a verification that did not pass.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import grid as gridmod
from . import maximal, median, verify
from .corpus import load_manifest
from .czd import cz_decompose
from .errors import JNError, ValidationError
from .grid import DyadicCube, FunctionSpec
from .seminorm import SeminormConfig, companion_norms, jn_seminorm

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 1, 2

CHECKS = (
    "good-lambda",
    "jn-inequality",
    "equivalence",
    "lemma32",
    "maximal-bound",
    "l1-bound",
    "weak-type",
    "cz-properties",
    "median-properties",
    "differentiation",
    "dp-bruteforce",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message.replace("\n", " "))


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _lambda_grid(spec: str | None):
    if spec is None:
        return None
    try:
        lo, hi, count = spec.split(":")
        return verify.geometric_grid(float(lo), float(hi), int(count))
    except ValueError:
        raise ValidationError(f"--lambda-grid expects lo:hi:count, got {spec!r}") from None


def _cube(spec: str | None, dim: int) -> DyadicCube:
    if spec is None:
        return DyadicCube(0, (0,) * dim)
    try:
        parts = [int(x) for x in spec.split(",")]
    except ValueError:
        raise ValidationError(f"--cube expects j,k[,k...], got {spec!r}") from None
    if len(parts) != dim + 1:
        raise ValidationError(f"--cube needs a level and {dim} index entries, got {spec!r}")
    return DyadicCube(parts[0], tuple(parts[1:]))


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise ValidationError(f"--{name.replace('_', '-')} is required for '{args.command}'")


def _input(args):
    _require(args, "input")
    return gridmod.load(args.input)


# ---------------------------------------------------------------------------
# subcommands

def cmd_sample(args) -> int:
    _require(args, "fn")
    params = {}
    for key in ("c", "lo", "hi", "a", "amplitude", "frequency"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    if args.seed is not None:
        params["seed"] = args.seed
    if args.values is not None:
        try:
            params["values"] = [float(v) for v in args.values.split(",")]
        except ValueError:
            raise ValidationError("--values expects comma-separated numbers") from None
    domain = None
    if args.origin is not None or args.side is not None:
        origin = [float(x) for x in (args.origin or "0").split(",")]
        domain = (tuple(origin * args.dim if len(origin) == 1 else origin), args.side or 1.0)
    spec = FunctionSpec(args.fn, params, domain, args.rule)
    f = gridmod.sample(spec, args.dim, args.depth)
    fmt = args.format or ("csv" if args.output and args.output.endswith(".csv") else "json")
    text = gridmod.dumps_csv(f) if fmt == "csv" else gridmod.dumps_json(f) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_median(args) -> int:
    f = _input(args)
    Q = _cube(args.cube, f.dim).validate(f.grid)
    s = 0.5 if args.s is None else args.s
    doc = {"cube": Q.to_dict(), "s": s, "median": median.maximal_median(f, Q, s)}
    if s <= 0.5:
        value, center = median.min_center_oscillation(f, Q, s)
        doc["min_center_oscillation"] = {"value": value, "center": center}
    if args.t is not None:
        doc["t"] = args.t
        doc["median_oscillation"] = median.median_oscillation(f, Q, s, args.t)
    _emit(canonical_json(doc), args.output)
    return EXIT_OK


def cmd_cz(args) -> int:
    f = _input(args)
    _require(args, "lam")
    t = 0.5 if args.t is None else args.t
    result = cz_decompose(f, t, args.lam)
    doc = result.to_dict()
    doc["measure"] = result.cubes.measure(f.grid)
    _emit(canonical_json(doc), args.output)
    return EXIT_OK


def cmd_maximal(args) -> int:
    f = _input(args)
    mode = args.mode or "avg"
    if mode == "avg":
        g = maximal.maximal_avg(f)
    elif mode == "median":
        g = maximal.maximal_median(f, 0.5 if args.t is None else args.t)
    else:
        raise ValidationError(f"maximal --mode must be avg or median, got {mode!r}")
    if args.format == "csv":
        _emit(gridmod.dumps_csv(g), args.output)
    else:
        _emit(gridmod.dumps_json(g) + "\n", args.output)
    return EXIT_OK


def cmd_seminorm(args) -> int:
    f = _input(args)
    p = 2.0 if args.p is None else args.p
    cfg = SeminormConfig(p, args.mode or "avg-mean", args.s, args.t)
    doc = jn_seminorm(f, cfg).to_dict()
    doc["companion_norms"] = companion_norms(f, p).to_dict()
    _emit(canonical_json(doc), args.output)
    return EXIT_OK


def _report_out(report: verify.VerificationReport, args) -> int:
    text = report.to_csv() if args.format == "csv" else canonical_json(report.to_dict())
    _emit(text, args.output)
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_verify(args) -> int:
    check = args.check
    grid = _lambda_grid(args.lambda_grid)
    if args.lam is not None:
        grid = [args.lam]
    p = 2.0 if args.p is None else args.p
    if check == "median-properties":
        report = verify.run_median_property_suite(args.seeds or 1000, (args.dim,), (args.depth,))
    elif check == "differentiation":
        report = verify.verify_differentiation(args.depth if args.depth_given else 10, args.dim)
    elif check == "dp-bruteforce":
        report = verify.verify_dp_bruteforce(args.seeds or 200)
    else:
        f = _input(args)
        if check == "good-lambda":
            t = _or(args.t, 2.0 ** -(f.dim + 1))
            K = _or(args.K, 2.0)
            report = verify.verify_good_lambda(f, p, t, K, _or(args.s, t / (2 * K**p)), grid)
        elif check == "jn-inequality":
            report = verify.verify_jn_inequality(f, p, _or(args.s, 2.0 ** -(f.dim + 3)), _or(args.r, 0.5), grid)
        elif check == "equivalence":
            report = verify.verify_equivalence(f, p, _or(args.s, 2.0 ** -(f.dim + 3)))
        elif check == "lemma32":
            report = verify.verify_lemma32(f, p, _or(args.s, 2.0 ** -(f.dim + 3)), _or(args.t, 0.5))
        elif check == "maximal-bound":
            report = verify.verify_maximal_bound(f, p)
        elif check == "l1-bound":
            report = verify.verify_l1_bound(f, p)
        elif check == "weak-type":
            report = verify.verify_weak_type(f, grid)
        else:
            t = _or(args.t, 0.5)
            report = verify.verify_cz_properties(f, t, grid or verify.default_lambda_grid(f, t, 20))
    return _report_out(report, args)


def _or(value, default):
    return default if value is None else value


def run_suite(seeds: int, dim: int, depth: int, manifest: str | None = None) -> dict:
    """Every check on the pinned corpus; returns the canonical suite document."""
    corpus = load_manifest(manifest)
    reports = [
        verify.run_median_property_suite(seeds, (dim,), (depth,)),
        verify.verify_differentiation(10, 1),
        verify.verify_dp_bruteforce(200),
        *verify.verify_cz_suite(100, 20),
        verify.run_on_corpus("weak-type", verify.verify_weak_type, corpus),
    ]
    for p in (1.5, 2.0, 4.0):
        reports.append(
            verify.run_on_corpus(
                f"jn-inequality-p{p:g}", lambda f, p=p: verify.verify_jn_inequality(f, p, 1 / 16, 0.5), corpus
            )
        )
    reports += [
        verify.run_on_corpus("good-lambda", lambda f: verify.verify_good_lambda(f, 2.0, 0.25, 2.0, 1 / 32), corpus),
        verify.run_on_corpus("equivalence", lambda f: verify.verify_equivalence(f, 2.0, 1 / 16), corpus),
        verify.run_on_corpus("lemma32", lambda f: verify.verify_lemma32(f, 2.0, 1 / 16, 0.25), corpus),
        verify.run_on_corpus("maximal-bound", lambda f: verify.verify_maximal_bound(f, 2.0), corpus),
        verify.run_on_corpus("l1-bound", lambda f: verify.verify_l1_bound(f, 2.0), corpus),
        verify.divergence_experiment(),
        verify.constants_chain(),
    ]
    return {
        "parameters": {"seeds": seeds, "dim": dim, "depth": depth, "manifest": manifest or "default"},
        "pass": all(r.passed for r in reports),
        "summary": [r.summary() for r in reports],
        "reports": [r.to_dict() for r in reports],
    }


def cmd_suite(args) -> int:
    doc = run_suite(args.seeds or 1000, args.dim, args.depth, args.manifest)
    for line in doc["summary"]:
        print(line, file=sys.stderr)
    if args.format == "csv":
        text = "".join(
            verify.VerificationReport(
                r["name"], [verify.Row(row["params"], row["lhs"], row["rhs"]) for row in r["rows"]]
            ).to_csv()
            for r in doc["reports"]
        )
    else:
        text = canonical_json(doc)
    _emit(text, args.output or "jn-suite-report.json")
    return EXIT_OK if doc["pass"] else EXIT_FAILED


COMMANDS = {
    "sample": cmd_sample,
    "median": cmd_median,
    "cz": cmd_cz,
    "maximal": cmd_maximal,
    "seminorm": cmd_seminorm,
    "verify": cmd_verify,
    "suite": cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jn", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("check", nargs="?", choices=CHECKS, help="verification to run (verify only)")
    parser.add_argument("--dim", type=int, default=1)
    parser.add_argument("--depth", type=int, default=None)
    parser.add_argument("--fn", help="catalog function name")
    parser.add_argument("--p", type=float)
    parser.add_argument("--s", type=float)
    parser.add_argument("--t", type=float)
    parser.add_argument("--r", type=float)
    parser.add_argument("--K", type=float)
    parser.add_argument("--lambda", dest="lam", type=float)
    parser.add_argument("--lambda-grid", help="lo:hi:count, geometric")
    parser.add_argument("--mode")
    parser.add_argument("--cube", help="j,k[,k...]")
    parser.add_argument("-i", "--input")
    parser.add_argument("-o", "--output")
    parser.add_argument("--seeds", type=int)
    parser.add_argument("--format", choices=("json", "csv"))
    parser.add_argument("--manifest", help="corpus manifest for 'suite'")
    sampling = parser.add_argument_group("sample parameters")
    sampling.add_argument("--c", type=float)
    sampling.add_argument("--lo", type=float)
    sampling.add_argument("--hi", type=float)
    sampling.add_argument("--a", type=float, help="power exponent")
    sampling.add_argument("--amplitude", type=float)
    sampling.add_argument("--frequency", type=float)
    sampling.add_argument("--seed", type=int)
    sampling.add_argument("--values", help="comma-separated cell values for fn=step")
    sampling.add_argument("--origin", help="root origin, comma-separated")
    sampling.add_argument("--side", type=float)
    sampling.add_argument("--rule", default="midpoint", choices=("midpoint", "exact-cell-average"))
    return parser


def dispatch(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.check is not None and args.command != "verify":
            raise ValidationError(f"unexpected argument {args.check!r} for '{args.command}'")
        if args.command == "verify" and args.check is None:
            raise ValidationError(f"verify needs a check name: {', '.join(CHECKS)}")
        args.depth_given = args.depth is not None
        if args.depth is None:
            args.depth = 4
        return COMMANDS[args.command](args)
    except JNError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()

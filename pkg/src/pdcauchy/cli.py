"""Command-line front end.

Exit codes: 0 consistent_pd / oracle yes / verify pass, 1 not_pd / oracle
no / verify fail, 2 inconclusive or unknown, 64 usage error, 65 bad spec or
unsupported input, 70 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import math
import sys
from dataclasses import replace

from . import __version__
from .checker import (CONSISTENT_PD, NOT_PD, THEOREM12_GRID, CheckConfig, CheckReport,
                      check_theorem12, check_theorem13)
from . import verify as _verify
from .distribution import Distribution
from .errors import NumericalError, PDCheckError, SpecError, UnsupportedAtom
from .monotone import GridSpec, MonotoneVerdict, Tolerance
from .oracle import NO, UNKNOWN, YES, GroundTruth, fourier_truth, quadratic_form_truth
from .specfile import distribution_records, load_spec
from .transform import AxisSample, CauchyParams, axis_derivative

EXIT_OK, EXIT_NO, EXIT_UNKNOWN = 0, 1, 2
EXIT_USAGE, EXIT_SPEC, EXIT_NUMERIC = 64, 65, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# --------------------------------------------------------------------------
# serialization


def _clean(x):
    """JSON-safe copy: complex -> [re, im], non-finite floats -> None."""
    if isinstance(x, complex):
        return [_clean(x.real), _clean(x.imag)]
    if isinstance(x, float):
        return x if math.isfinite(x) else None
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def _witness_dict(w) -> dict:
    return {"y": w.y, "s": w.s, "value": complex(w.value), "threshold": w.threshold,
            "error": w.error}


def verdict_dict(v: MonotoneVerdict) -> dict:
    return {"status": v.status, "witnesses": [_witness_dict(w) for w in v.witnesses],
            "uncertain": [_witness_dict(w) for w in v.uncertain], "tested": v.tested,
            "diagnostics": list(v.diagnostics)}


def sample_dict(s: AxisSample) -> dict:
    return {"j": s.j, "y": s.y, "s": s.s, "value": s.value, "core": s.core, "scale": s.scale,
            "error": s.error, "log_magnitude": s.log_magnitude, "phase": s.phase}


def report_dict(r: CheckReport) -> dict:
    return {"mode": r.mode, "config": r.config, "overall": r.overall,
            "verdicts": {k: verdict_dict(v) for k, v in r.verdicts.items()},
            "diagnostics": list(r.diagnostics), "details": r.details,
            "samples": [sample_dict(s) for s in r.samples]}


def _factor(n: int, s: int) -> float:
    """(2n+s)! / ((2n)! pi); inf when it overflows."""
    lf = math.lgamma(2 * n + s + 1) - math.lgamma(2 * n + 1) - math.log(math.pi)
    return math.exp(lf) if lf < 700 else math.inf


def write_samples(path: str, samples, tol: Tolerance, n: int | None) -> None:
    """CSV rows j, y, s, re, im, scale, threshold in the units of the value."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["j", "y", "s", "re", "im", "scale", "threshold"])
    for smp in samples:
        f = 1.0 if n is None else _factor(n, smp.s)
        v = smp.value if smp.value is not None else complex(math.nan, math.nan)
        w.writerow([smp.j, repr(smp.y), smp.s, repr(v.real), repr(v.imag),
                    repr(smp.scale * f), repr(tol.threshold(smp.scale) * f)])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())


def emit(doc: dict, args) -> None:
    if not args.no_meta:
        doc = dict(doc)
        doc["meta"] = {"tool": "pdcauchy", "version": __version__,
                       "created": _dt.datetime.now(_dt.timezone.utc).isoformat()}
    text = json.dumps(_clean(doc), sort_keys=True, indent=2, allow_nan=False) + "\n"
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# configuration


def _config(base: CheckConfig, args, *, default_grid: GridSpec | None = None) -> CheckConfig:
    cfg = base
    if args.a1 is not None or args.a2 is not None:
        a1, a2 = cfg.modulations
        cfg = replace(cfg, modulations=(a1 if args.a1 is None else args.a1,
                                        a2 if args.a2 is None else args.a2))
    if args.n is not None:
        cfg = replace(cfg, n=args.n if args.n == "auto" else int(args.n))
    if args.s_max is not None:
        cfg = replace(cfg, s_max=args.s_max)
    grid = default_grid or cfg.grid
    if args.y_min is not None or args.y_max is not None or args.grid_points is not None:
        grid = GridSpec(grid.y_min if args.y_min is None else args.y_min,
                        grid.y_max if args.y_max is None else args.y_max,
                        grid.count if args.grid_points is None else args.grid_points,
                        grid.spacing)
    cfg = replace(cfg, grid=grid)
    if args.tol_rel is not None or args.tol_abs is not None:
        cfg = replace(cfg, tol=Tolerance(cfg.tol.rel if args.tol_rel is None else args.tol_rel,
                                         cfg.tol.abs if args.tol_abs is None else args.tol_abs))
    return cfg


def _load(args) -> dict:
    try:
        spec = load_spec(args.spec)
    except OSError as exc:
        raise UsageError(f"cannot read spec {args.spec!r}: {exc.strerror or exc}") from exc
    spec["options"].setdefault("seed", 0)
    if args.seed is not None:
        spec["options"]["seed"] = args.seed
    return spec


def _overall_code(overall: str) -> int:
    return {CONSISTENT_PD: EXIT_OK, NOT_PD: EXIT_NO}.get(overall, EXIT_UNKNOWN)


# --------------------------------------------------------------------------
# subcommands


def cmd_check(args, spec) -> int:
    F: Distribution = spec["distribution"]
    cfg = _config(spec["config"], args)
    rep = check_theorem13(F, cfg, jobs=args.jobs)
    doc = report_dict(rep)
    doc["distribution"] = distribution_records(F)
    if args.dump_samples:
        write_samples(args.dump_samples, rep.samples, cfg.tol, rep.details["n_effective"])
    emit(doc, args)
    return _overall_code(rep.overall)


def cmd_charfun(args, spec) -> int:
    f: Distribution = spec["distribution"]
    base = spec["config"]
    default = None if "grid" in spec["check"] else THEOREM12_GRID
    cfg = _config(base, args, default_grid=default)
    if cfg.grid.spacing != "linear":
        cfg = replace(cfg, grid=replace(cfg.grid, spacing="linear"))
    opts = spec["options"]
    rep = check_theorem12(f, cfg, k_max=args.k_max if args.k_max is not None else opts.get("k_max", 6),
                          strict=not args.unnormalized and opts.get("strict", True))
    doc = report_dict(rep)
    doc["distribution"] = distribution_records(f)
    if args.dump_samples:
        write_samples(args.dump_samples, rep.samples, cfg.tol, None)
    emit(doc, args)
    return _overall_code(rep.overall)


def _combine(ft: GroundTruth, qt: GroundTruth) -> str:
    if NO in (ft.pd, qt.pd):
        return NO
    return YES if ft.pd == YES else UNKNOWN


def cmd_oracle(args, spec) -> int:
    F: Distribution = spec["distribution"]
    opts = spec["options"]
    cfg = _config(spec["config"], args)
    try:
        ft = fourier_truth(F)
    except UnsupportedAtom as exc:
        ft = GroundTruth(UNKNOWN, str(exc))
    trials = args.trials if args.trials is not None else opts.get("trials", 256)
    qt = quadratic_form_truth(F, trials, opts["seed"], cfg.tol)
    pd = _combine(ft, qt)
    emit({"mode": "oracle", "pd": pd, "fourier": ft.to_dict(), "quadratic": qt.to_dict(),
          "trials": trials, "seed": opts["seed"], "tol": cfg.tol.to_dict(),
          "distribution": distribution_records(F)}, args)
    return {YES: EXIT_OK, NO: EXIT_NO}.get(pd, EXIT_UNKNOWN)


def cmd_transform(args, spec) -> int:
    F: Distribution = spec["distribution"]
    cfg = _config(spec["config"], args)
    params: CauchyParams = cfg.params_for(F)
    companion = F.abs_companion()
    samples = [axis_derivative(F, params, j, y, s, companion=companion)
               for j in (1, 2)
               for y in cfg.grid.mirrored()[::-1] + cfg.grid.points()
               for s in range(cfg.s_max + 1)]
    if args.dump_samples:
        write_samples(args.dump_samples, samples, cfg.tol, params.n)
    emit({"mode": "transform", "config": cfg.to_dict(), "n_effective": params.n,
          "distribution": distribution_records(F),
          "samples": [sample_dict(s) for s in samples]}, args)
    return EXIT_OK


def cmd_verify(args, spec=None) -> int:
    name = args.suite
    if name is None and spec is not None:
        name = spec["options"].get("suite")
    names = list(_verify.SUITES) if name in (None, "all") else [name]
    if any(n not in _verify.SUITES for n in names):
        raise UsageError(f"unknown suite {name!r}; choose from all, {', '.join(_verify.SUITES)}")
    results = _verify.run_suites(names)
    passed = all(r.passed for r in results)
    emit({"mode": "verify", "passed": passed, "suites": [r.to_dict() for r in results]}, args)
    return EXIT_OK if passed else EXIT_NO


def cmd_run(args, spec) -> int:
    mode = spec["mode"]
    if mode == "theorem12":
        return cmd_charfun(args, spec)
    if mode == "oracle":
        return cmd_oracle(args, spec)
    if mode == "verify":
        return cmd_verify(args, spec)
    return cmd_check(args, spec)


COMMANDS = {"check": cmd_check, "charfun": cmd_charfun, "oracle": cmd_oracle,
            "transform": cmd_transform, "verify": cmd_verify, "run": cmd_run}


def _n_arg(text: str):
    if text == "auto":
        return text
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--n takes 'auto' or a natural number") from None
    if v < 0:
        raise argparse.ArgumentTypeError("--n must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--report", metavar="PATH", help="write the JSON report here instead of stdout")
    g.add_argument("--dump-samples", metavar="PATH", help="write axis samples as CSV")
    g.add_argument("--seed", type=int, help="seed for randomized trials (default 0)")
    g.add_argument("--jobs", type=int, default=1, help="worker threads for grid sweeps")
    g.add_argument("--s-max", type=int, help="highest derivative order")
    g.add_argument("--y-min", type=float)
    g.add_argument("--y-max", type=float)
    g.add_argument("--grid-points", type=int)
    g.add_argument("--tol-rel", type=float)
    g.add_argument("--tol-abs", type=float)
    g.add_argument("--a1", type=float, help="first modulation")
    g.add_argument("--a2", type=float, help="second modulation")
    g.add_argument("--n", type=_n_arg, help="half-order n, or 'auto'")
    g.add_argument("--no-meta", action="store_true", help="omit the timestamped meta header")

    p = _Parser(prog="pdcauchy", description="Positive-definiteness checks via Cauchy transforms.")
    p.add_argument("--version", action="version", version=f"pdcauchy {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("check", parents=[common], help="two-modulation Cauchy transform test")
    c.add_argument("spec")
    c = sub.add_parser("charfun", parents=[common], help="Poisson transform test for a function")
    c.add_argument("spec")
    c.add_argument("--unnormalized", action="store_true", help="skip the f(0) = 1 requirement")
    c.add_argument("--k-max", type=int, help="highest difference order (default 6)")
    c = sub.add_parser("oracle", parents=[common], help="independent ground truth")
    c.add_argument("spec")
    c.add_argument("--trials", type=int, help="random test functions to try (default 256)")
    c = sub.add_parser("transform", parents=[common], help="dump axis derivatives over the grid")
    c.add_argument("spec")
    c = sub.add_parser("verify", parents=[common], help="run numerical self-check suites")
    c.add_argument("--suite", help=f"one of all, {', '.join(_verify.SUITES)}")
    c = sub.add_parser("run", parents=[common], help="dispatch on the spec's mode field")
    c.add_argument("spec")
    c.add_argument("--unnormalized", action="store_true")
    c.add_argument("--k-max", type=int)
    c.add_argument("--trials", type=int)
    c.add_argument("--suite")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        spec = _load(args) if getattr(args, "spec", None) is not None else None
        return COMMANDS[args.command](args, spec)
    except UsageError as exc:
        print(f"pdcauchy: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"pdcauchy: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (SpecError, PDCheckError, ValueError) as exc:
        print(f"pdcauchy: invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except SystemExit as exc:
        # --help and --version
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())

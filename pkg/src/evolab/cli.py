"""Command-line driver: ``evolab <run|verify|transform|render>``.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 terminal
geometric event (collapse, missing involute, ...).
"""

from __future__ import annotations

import argparse
import inspect
import json
import math
import sys
from dataclasses import dataclass, field

from . import generators, io, svg
from .dynamics import TRANSFORMS, estimate_period, iterate, rotation_similarity, transform_by_name
from .errors import EvolabError
from .involute import a_involute_family, p_involute_family

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EVENT = 0, 1, 2, 3

FAMILIES = {"p_involute_family": p_involute_family, "a_involute_family": a_involute_family}


class UsageError(Exception):
    pass


@dataclass
class ExperimentConfig:
    name: str = "experiment"
    input: str | None = None  # path to a polygon file
    gen: str | None = None  # generator spec such as "random-ngon:6"
    seed: int = 0
    transform: str = "p_evolute"
    steps: int = 100
    outputs: dict = field(default_factory=dict)  # {"csv": path, "jsonl": path, "svg": path}
    tolerances: dict = field(default_factory=dict)

    def validate(self):
        if (self.input is None) == (self.gen is None):
            raise UsageError("give exactly one of an input file or a generator")
        if self.transform not in TRANSFORMS:
            raise UsageError(f"unknown transform {self.transform!r}; expected one of {list(TRANSFORMS)}")
        if not isinstance(self.steps, int) or self.steps < 0:
            raise UsageError("steps must be a non-negative integer")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise UsageError("seed must be an unsigned 64-bit integer")
        unknown = set(self.outputs) - {"csv", "jsonl", "svg"}
        if unknown:
            raise UsageError(f"unknown outputs {sorted(unknown)}")
        return self

    @classmethod
    def from_file(cls, path) -> ExperimentConfig:
        with open(path) as fh:
            data = json.load(fh)
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise UsageError(f"unknown config fields {sorted(extra)}")
        return cls(**data)


def _load(cfg_input, gen, seed):
    try:
        if cfg_input is not None:
            return io.read_polygon(cfg_input)
        return generators.from_spec(gen, seed)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from exc


def run(cfg: ExperimentConfig, out=None) -> int:
    out = out or sys.stdout
    cfg.validate()
    P = _load(cfg.input, cfg.gen, cfg.seed)
    trace = iterate(cfg.transform, P, cfg.steps)
    if "period" in cfg.tolerances:
        trace.period_estimate = estimate_period(trace.steps, float(cfg.tolerances["period"]))
    summary = {
        "name": cfg.name,
        "seed": cfg.seed,
        "transform": cfg.transform,
        "n": P.n,
        "steps_done": len(trace.steps) - 1,
        "classification": trace.classification,
        "period_estimate": trace.period_estimate,
        "event": trace.event,
        "event_step": trace.event_step,
        "mean_log_scale": (sum(trace.scale_log) / len(trace.scale_log)) if trace.scale_log else None,
    }
    if len(trace.steps) >= 2:
        angle, resid = rotation_similarity(trace.steps[-2], trace.steps[-1])
        summary["rotation_per_step"] = angle
        summary["rotation_residual"] = resid
        if angle is not None:
            summary["rotation_per_step_over_pi"] = angle / math.pi
    if "csv" in cfg.outputs:
        io.write_trace_csv(cfg.outputs["csv"], trace, cfg.seed)
    if "jsonl" in cfg.outputs:
        io.write_trace_jsonl(cfg.outputs["jsonl"], trace, cfg.seed)
    if "svg" in cfg.outputs:
        shown = trace.steps[-2:] if len(trace.steps) > 1 else trace.steps
        svg.write_svg(cfg.outputs["svg"], shown, markers=True)
    print(io.dumps(summary), file=out)
    return EXIT_EVENT if trace.event is not None else EXIT_OK


def verify(name: str, seed: int, trials: int | None, out=None, csv_path=None, tol=None) -> int:
    from . import verify as checks

    out = out or sys.stdout

    if name == "all":
        keys = list(checks.CHECKS)
    elif name.isdigit() and int(name) in checks.CHECKS:
        keys = [int(name)]
    elif name in checks.NAMES:
        keys = [checks.NAMES[name]]
    else:
        raise UsageError(f"unknown check {name!r}; expected a number 1-14, one of {sorted(checks.NAMES)} or 'all'")
    failed = False
    for key in keys:
        fn = checks.CHECKS[key]
        params = inspect.signature(fn).parameters
        kwargs = {}
        if trials is not None and "trials" in params:
            kwargs["trials"] = trials
        if tol is not None:
            kwargs["tol"] = tol
        res = fn(seed=seed, **kwargs)
        print(res.line(), file=out)
        print("   " + io.dumps(res.details), file=out)
        failed |= not res.passed
        if csv_path and key == 11:
            from .involute import MODULUS, orbit_histogram, pedal_orbit

            g = generators.rng(seed)
            x0 = [int(v) for v in g.integers(0, MODULUS, 3)]
            io.write_histogram_csv(csv_path, orbit_histogram(pedal_orbit(x0, 100_000)), seed)
    return EXIT_FAIL if failed else EXIT_OK


def transform(args, out=None) -> int:
    out = out or sys.stdout
    P = _load(args.input, args.gen, args.seed)
    if args.transform in FAMILIES:
        fam = FAMILIES[args.transform](P)
        print(io.dumps({"seed": args.seed, "family": io.family_to_dict(fam)}), file=out)
        return EXIT_EVENT if fam.kind == "none" else EXIT_OK
    if args.transform not in TRANSFORMS:
        raise UsageError(f"unknown transform {args.transform!r}")
    Q = P
    for _ in range(args.steps):
        Q = transform_by_name(args.transform)(Q)
    print(io.dumps({"seed": args.seed, "input": P, "output": Q}), file=out)
    if args.csv:
        io.write_polygon_csv(args.csv, Q, args.seed)
    if args.svg:
        svg.write_svg(args.svg, [P, Q], markers=True)
    return EXIT_OK


def render(args, out=None) -> int:
    out = out or sys.stdout
    P = _load(args.input, args.gen, args.seed)
    polys = [P]
    if args.overlay:
        if args.overlay not in TRANSFORMS:
            raise UsageError(f"unknown transform {args.overlay!r}")
        polys.append(transform_by_name(args.overlay)(P))
    doc = svg.render_svg(polys, markers=args.markers, arrows=args.arrows)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(doc + "\n")
    else:
        print(doc, file=out)
    return EXIT_OK


def _add_source(p):
    p.add_argument("--input", help="polygon file (.json with alpha/p or vertices, or .csv)")
    p.add_argument("--gen", help="generator spec, e.g. random-ngon:6, random-zero-qp:5, equiangular:8")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (unsigned 64-bit)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evolab", description="Discrete evolutes and involutes of polygons.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="iterate a transform and write a trace")
    _add_source(p)
    p.add_argument("--config", help="JSON experiment config; when given, the other run flags are ignored")
    p.add_argument("--transform", default="p_evolute", choices=TRANSFORMS)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--tol", type=float, help="period-detection tolerance")
    p.add_argument("--csv")
    p.add_argument("--jsonl")
    p.add_argument("--svg")

    p = sub.add_parser("verify", help="run one numerical check, or all of them")
    p.add_argument("check", help="check name or number, or 'all'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int)
    p.add_argument("--tol", type=float, help="override the check's tolerance (exploration only)")
    p.add_argument("--csv", help="histogram output for the ergodic-map check")

    p = sub.add_parser("transform", help="apply a transform or build an involute family")
    _add_source(p)
    p.add_argument("--transform", required=True, help=f"one of {list(TRANSFORMS) + list(FAMILIES)}")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--csv")
    p.add_argument("--svg")

    p = sub.add_parser("render", help="draw a polygon as SVG")
    _add_source(p)
    p.add_argument("--overlay", help="also draw the image under this transform")
    p.add_argument("--markers", action="store_true")
    p.add_argument("--arrows", action="store_true")
    p.add_argument("--svg")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if args.command == "run":
            if args.config:
                cfg = ExperimentConfig.from_file(args.config)
            else:
                outputs = {k: getattr(args, k) for k in ("csv", "jsonl", "svg") if getattr(args, k)}
                tolerances = {"period": args.tol} if args.tol is not None else {}
                cfg = ExperimentConfig(input=args.input, gen=args.gen, seed=args.seed, transform=args.transform,
                                       steps=args.steps, outputs=outputs, tolerances=tolerances)
            return run(cfg)
        if args.command == "verify":
            return verify(args.check, args.seed, args.trials, csv_path=args.csv, tol=args.tol)
        if args.command == "transform":
            if (args.input is None) == (args.gen is None):
                raise UsageError("give exactly one of --input or --gen")
            return transform(args)
        if (args.input is None) == (args.gen is None):
            raise UsageError("give exactly one of --input or --gen")
        return render(args)
    except UsageError as exc:
        print(f"evolab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TypeError, json.JSONDecodeError) as exc:
        print(f"evolab: error: invalid config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EvolabError as exc:
        print(f"evolab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_EVENT


if __name__ == "__main__":
    sys.exit(main())

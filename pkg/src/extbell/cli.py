"""Command-line front end.

Subcommands: ``eval``, ``maximize``, ``classical``, ``scan`` and ``sample``.
Angles are radians unless ``--degrees`` is given. Exit status is 0 on
success, 2 on bad usage and 1 if a computed result breaks a proven bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .bell import BOUND_ATOL, qbcp
from .correlations import correlation, estimate_correlation, sample_outcomes
from .localmodel import TableKind, classical_max_search
from .optimizer import (
    OptimizationProblem,
    OptimizerConfig,
    ScanAxis,
    build_configuration,
    landscape_scan,
    maximize_qbcp,
    parameter_names,
)
from .states import PairFamily

FAMILIES = [f.value for f in PairFamily]
OPTIMUM_CEILING = 2.0 + 1e-9


class InvariantError(RuntimeError):
    """A library result fell outside a bound it is guaranteed to respect."""


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for key, value in d.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, name + "_"))
        elif isinstance(value, (list, tuple)):
            out.update({f"{name}_{i + 1}": v for i, v in enumerate(value)})
        else:
            out[name] = value
    return out


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    flat = _flatten(report)
    keys = sorted(flat)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(keys)
    writer.writerow([_fmt(flat[k]) for k in keys])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_output(p: argparse.ArgumentParser, formats=True) -> None:
    if formats:
        p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", help="write to this file instead of stdout")


def _add_state(p: argparse.ArgumentParser, directions: str = "abc") -> None:
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--eta", type=float, default=0.0)
    for d in directions:
        p.add_argument(
            f"--{d}",
            type=_float_list,
            required=True,
            metavar="THETA,PHI",
            help=f"direction {d}: 'theta,phi' for spins, 'phi' for photons",
        )
    p.add_argument("--degrees", action="store_true", help="read all angles in degrees")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extbell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate the Bell correlation probability")
    _add_state(p)
    _add_output(p)

    p = sub.add_parser("maximize", help="search for the largest violation")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--fix-state", type=_float_list, metavar="XI,ETA")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--starts", type=_positive_int, default=OptimizerConfig.n_starts)
    p.add_argument("--degrees", action="store_true")
    _add_output(p)

    p = sub.add_parser("classical", help="verify the local-realistic bound")
    p.add_argument("--table", choices=[k.value for k in TableKind], required=True)
    p.add_argument("--samples", type=_positive_int, default=100_000)
    p.add_argument("--seed", type=int, default=7)
    _add_output(p)

    p = sub.add_parser("scan", help="tabulate P_B over one or two parameters (CSV)")
    _add_state(p)
    p.add_argument("--param", action="append", required=True)
    p.add_argument("--from", dest="start", type=float, action="append", required=True)
    p.add_argument("--to", dest="stop", type=float, action="append", required=True)
    p.add_argument("--steps", type=_positive_int, action="append", required=True)
    _add_output(p, formats=False)

    p = sub.add_parser("sample", help="Monte Carlo outcome counts for directions a, b")
    _add_state(p, directions="ab")
    p.add_argument("--shots", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=42)
    _add_output(p)
    return parser


def _angle(args, value: float) -> float:
    return math.radians(value) if args.degrees else value


def _params(parser, args, directions: str) -> dict:
    family = PairFamily(args.family)
    params = {"xi": _angle(args, args.xi), "eta": _angle(args, args.eta)}
    for d in directions:
        values = [_angle(args, v) for v in getattr(args, d)]
        if family.is_photon:
            if len(values) != 1:
                parser.error(f"--{d} takes a single azimuth for photon families")
            params[f"phi_{d}"] = values[0]
        else:
            if len(values) != 2:
                parser.error(f"--{d} takes 'theta,phi' for spin families")
            params[f"theta_{d}"], params[f"phi_{d}"] = values
    return params


def cmd_eval(parser, args) -> dict:
    ev = qbcp(*build_configuration(args.family, _params(parser, args, "abc")))
    if ev.p_b_local > 1.0 + BOUND_ATOL or not -1.0 - BOUND_ATOL <= ev.p_b <= 2.0 + BOUND_ATOL:
        raise InvariantError(f"bound violated: p_b={ev.p_b!r}, p_b_local={ev.p_b_local!r}")
    return ev.as_dict()


def cmd_maximize(parser, args) -> dict:
    family = PairFamily(args.family)
    if args.fix_state is not None:
        if len(args.fix_state) != 2:
            parser.error("--fix-state takes 'xi,eta'")
        xi, eta = (_angle(args, v) for v in args.fix_state)
        problem = OptimizationProblem(family, False, xi, eta)
    else:
        problem = OptimizationProblem(family)
    result = maximize_qbcp(problem, OptimizerConfig(n_starts=args.starts, seed=args.seed))
    if result.max_evaluated > OPTIMUM_CEILING:
        raise InvariantError(f"evaluation exceeded 2: {result.max_evaluated!r}")
    report = result.as_dict()
    report["family"] = family.value
    report["seed"] = args.seed
    return report


def cmd_classical(parser, args) -> dict:
    result = classical_max_search(TableKind(args.table), seed=args.seed, samples=args.samples)
    if result.best_value > 1.0 + BOUND_ATOL:
        raise InvariantError(f"classical value exceeded 1: {result.best_value!r}")
    return {
        "max_found": result.best_value,
        "witness_populations": list(result.witness.n),
        "samples": result.samples,
        "vertices_checked": result.vertices_checked,
        "table": args.table,
    }


def cmd_scan(parser, args) -> str:
    family = PairFamily(args.family)
    lengths = {len(args.param), len(args.start), len(args.stop), len(args.steps)}
    if len(lengths) != 1:
        parser.error("each --param needs its own --from, --to and --steps")
    allowed = parameter_names(family, True)
    axes = []
    for name, start, stop, steps in zip(args.param, args.start, args.stop, args.steps):
        if name not in allowed:
            parser.error(f"unknown parameter {name!r}; choose from {', '.join(allowed)}")
        axes.append(ScanAxis(name, _angle(args, start), _angle(args, stop), steps))
    result = landscape_scan(family, _params(parser, args, "abc"), axes)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*result.names, "p_b"])
    for row in result.rows():
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def cmd_sample(parser, args) -> dict:
    params = _params(parser, args, "ab")
    state, a, b, _ = build_configuration(args.family, params)
    counts = sample_outcomes(state, a, b, args.shots, args.seed)
    return {
        "counts": {"pp": counts[0], "pm": counts[1], "mp": counts[2], "mm": counts[3]},
        "p_hat": estimate_correlation(counts),
        "std_error": 1.0 / math.sqrt(args.shots),
        "p_exact": correlation(state, a, b).p_total,
        "shots": args.shots,
        "seed": args.seed,
    }


COMMANDS = {
    "eval": cmd_eval,
    "maximize": cmd_maximize,
    "classical": cmd_classical,
    "scan": cmd_scan,
    "sample": cmd_sample,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = COMMANDS[args.command](parser, args)
    except InvariantError as exc:
        print(f"extbell: invariant failure: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"extbell: {exc}", file=sys.stderr)
        return 2
    text = report if isinstance(report, str) else _render(report, args.format)
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())

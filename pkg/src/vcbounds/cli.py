"""Command-line surface: bound tables, comparison sweeps, crossover windows,
Monte Carlo verification runs, and growth-value tables.

Every file output is deterministic (floats are shortest round-trip decimals)
and accompanied by a sidecar manifest recording the command line, seeds,
artifact version, and the SHA-256 of the emitted data, so any number can be
traced back to its inputs.  Exit codes: 0 success, 2 usage, 3 I/O error,
4 unsupported configuration.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import os
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .deviation_bounds import (
    DEFAULT_BE_CONSTANT,
    VARIANTS,
    BoundBreakdown,
    BoundQuery,
    crossover_window,
    hoeffding_vc,
    refined_vc,
)
from .errors import SizeLimitError, UnsupportedClassError
from .growth_functions import growth_exact, sauer_bound
from .hypothesis_classes import (
    HypothesisClass,
    halfspaces,
    intervals,
    rays,
    std_gaussian,
    uniform01,
)
from .simulation import MCConfig, estimate_Bn, verify_bound

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_UNSUPPORTED = 4

_CLASS_CHOICES = ("rays", "intervals", "halfplanes")
_KNOWN_VC_DIMENSION = {"rays": 2, "intervals": 2}


class UsageError(ValueError):
    """Flag combination that argparse alone cannot reject."""


def _fmt(x: float) -> str:
    """Shortest round-trip decimal for binary64; keeps outputs diffable."""
    return repr(float(x))


def _make_class(name: str, dim: int) -> HypothesisClass:
    if name == "rays":
        return rays()
    if name == "intervals":
        return intervals()
    return halfspaces(dim)


def _growth_value(cls_name: str, cls: HypothesisClass, n: int, mode: str) -> float:
    if mode == "exact":
        return float(growth_exact(cls, n))
    d = _KNOWN_VC_DIMENSION.get(cls_name, cls.dimension + 1)
    if mode == "sauer":
        return float(sauer_bound(n, d).sum_form)
    # mode == "paper-n2": the loose quadratic ceiling stated for intervals
    if cls_name != "intervals":
        raise UsageError("--growth paper-n2 applies to the intervals class only")
    return float(n) * float(n)


def _parse_range(spec: str, kind: str) -> list[float]:
    """Grid spec: single value, comma list, or start:stop:step (inclusive)."""
    conv = int if kind == "int" else float
    try:
        if "," in spec:
            return [conv(tok) for tok in spec.split(",") if tok.strip() != ""]
        if ":" in spec:
            parts = spec.split(":")
            if len(parts) != 3:
                raise ValueError
            start, stop, step = (conv(parts[0]), conv(parts[1]), conv(parts[2]))
            if step <= 0 or stop < start:
                raise ValueError
            count = int((stop - start) / step + 1e-9) + 1
            return [conv(start + i * step) for i in range(count)]
        return [conv(spec)]
    except (TypeError, ValueError):
        raise UsageError(f"cannot parse range spec {spec!r}") from None


def _write_manifest(out_path: Path, args_list: list[str], config: dict, seeds: list[int], elapsed: float) -> None:
    digest = hashlib.sha256(out_path.read_bytes()).hexdigest()
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "artifact_version": __version__,
        "command": args_list,
        "config": config,
        "base_seeds": seeds,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "elapsed_seconds": elapsed,
        "outputs": [{"path": out_path.name, "sha256": digest}],
    }
    out_path.with_name(out_path.name + ".manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )


def _bound_pair(n: int, epsilon: float, m: float, constant: float, variant: str) -> tuple[BoundBreakdown, BoundBreakdown]:
    q = BoundQuery(n=n, epsilon=epsilon, growth_value=m, be_constant=constant, variant=variant)
    return hoeffding_vc(q), refined_vc(q)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_bound(args, argv: list[str]) -> int:
    if (args.m is None) == (args.cls is None):
        raise UsageError("exactly one of --m or --class is required")
    if args.m is not None:
        if args.m < 1:
            raise UsageError("--m must be >= 1")
        m = float(args.m)
    else:
        cls = _make_class(args.cls, args.dim)
        m = _growth_value(args.cls, cls, args.n, args.growth)
    classical, refined = _bound_pair(args.n, args.eps, m, args.constant, args.variant)
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "params": {"n": args.n, "epsilon": args.eps, "m": m, "constant": args.constant, "variant": args.variant},
            "classical": _breakdown_dict(classical),
            "refined": _breakdown_dict(refined),
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK
    print(f"n={args.n} eps={_fmt(args.eps)} m={_fmt(m)} C={_fmt(args.constant)} variant={args.variant}")
    print(f"{'bound':<12}{'total':>14}{'raw':>14}{'normal term':>14}{'error term':>14}")
    for name, b in (("classical", classical), ("refined", refined)):
        print(
            f"{name:<12}{b.clamped_total:>14.6g}{b.raw_total:>14.6g}"
            f"{b.normal_tail_term:>14.6g}{b.be_term:>14.6g}"
        )
    return EXIT_OK


def _breakdown_dict(b: BoundBreakdown) -> dict:
    return {
        "normal_tail_term": b.normal_tail_term,
        "be_term": b.be_term,
        "raw_total": b.raw_total,
        "clamped_total": b.clamped_total,
        "log_normal_tail_term": b.log_normal_tail_term,
    }


def _cmd_compare(args, argv: list[str]) -> int:
    ns = [int(v) for v in _parse_range(args.n_range, "int")]
    eps_grid = _parse_range(args.eps_range, "float")
    if not ns or not eps_grid:
        raise UsageError("empty grid")
    if args.cls is not None and args.m is not None:
        raise UsageError("give at most one of --m and --class")
    cls = _make_class(args.cls, args.dim) if args.cls is not None else None

    start = time.perf_counter()
    buf = io.StringIO()
    buf.write("n,epsilon,m,classical,refined_total,refined_normal_term,refined_be_term,winner\n")
    for n in ns:
        if cls is not None:
            m = _growth_value(args.cls, cls, n, args.growth)
        else:
            m = float(args.m) if args.m is not None else 1.0
        for eps in eps_grid:
            classical, refined = _bound_pair(n, eps, m, args.constant, args.variant)
            winner = "refined" if refined.raw_total < classical.raw_total else "classical"
            buf.write(
                f"{n},{_fmt(eps)},{_fmt(m)},{_fmt(classical.clamped_total)},"
                f"{_fmt(refined.clamped_total)},{_fmt(refined.normal_tail_term)},"
                f"{_fmt(refined.be_term)},{winner}\n"
            )
    payload = buf.getvalue()
    if args.out is None:
        sys.stdout.write(payload)
        return EXIT_OK
    out_path = Path(args.out)
    out_path.write_text(payload)
    _write_manifest(
        out_path,
        argv,
        {
            "n_range": args.n_range,
            "eps_range": args.eps_range,
            "m": args.m,
            "class": args.cls,
            "constant": args.constant,
            "variant": args.variant,
            "growth": args.growth,
        },
        [],
        time.perf_counter() - start,
    )
    return EXIT_OK


def _cmd_crossover(args, argv: list[str]) -> int:
    windows = crossover_window(args.n, args.constant, args.variant)
    if not windows:
        print("empty")
        return EXIT_OK
    for w in windows:
        print(f"({w.lower:.6g}, {w.upper:.6g}) sign_outside=({w.sign_left:+d}, {w.sign_right:+d})")
    return EXIT_OK


def _cmd_simulate(args, argv: list[str]) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    cls = _make_class(args.cls, args.dim)
    dist = uniform01() if args.dist == "uniform01" else std_gaussian(args.dim)
    cfg = MCConfig(
        trials=args.trials,
        base_seed=args.seed,
        worker_count=args.workers,
        confidence_level=args.confidence,
    )
    start = time.perf_counter()
    est = estimate_Bn(cls, dist, args.n, args.eps, cfg)
    m = float(growth_exact(cls, args.n))
    classical, refined = _bound_pair(args.n, args.eps, m, args.constant, args.variant)
    report = verify_bound(est, [classical, refined])
    doc = {
        "schema_version": SCHEMA_VERSION,
        "params": {
            "class": args.cls,
            "distribution": args.dist,
            "dimension": args.dim,
            "n": args.n,
            "epsilon": args.eps,
            "trials": args.trials,
            "base_seed": args.seed,
            "constant": args.constant,
            "variant": args.variant,
            "growth_value": m,
        },
        "estimate": {
            "successes": est.successes,
            "trials": est.trials,
            "p_hat": est.p_hat,
            "ci_low": est.ci_low,
            "ci_high": est.ci_high,
            "confidence_level": est.confidence_level,
        },
        "bounds": [
            {"name": "classical", **_breakdown_dict(classical)},
            {"name": "refined", **_breakdown_dict(refined)},
        ],
        "verdicts": [
            {"name": name, "status": chk.status, "margin": chk.margin}
            for name, chk in zip(("classical", "refined"), report.checks)
        ],
        # deterministic provenance; timing and the raw command line live in
        # the sidecar manifest so this document is byte-stable across workers
        "manifest": {"artifact_version": __version__, "base_seeds": [args.seed]},
    }
    payload = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out is None:
        sys.stdout.write(payload)
        return EXIT_OK
    out_path = Path(args.out)
    out_path.write_text(payload)
    _write_manifest(
        out_path,
        argv,
        doc["params"],
        [args.seed],
        time.perf_counter() - start,
    )
    return EXIT_OK


def _cmd_growth(args, argv: list[str]) -> int:
    rs = [int(v) for v in _parse_range(args.r_range, "int")]
    if not rs:
        raise UsageError("empty grid")
    cls = _make_class(args.cls, args.dim)
    rows = [(r, growth_exact(cls, r)) for r in rs]
    if args.format == "csv":
        print("r,growth")
        for r, g in rows:
            print(f"{r},{g}")
    else:
        print(f"{'r':>6}{'growth':>16}")
        for r, g in rows:
            print(f"{r:>6}{g:>16}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_bound_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--constant", type=float, default=DEFAULT_BE_CONSTANT, help="normal-approximation constant C")
    p.add_argument("--variant", choices=VARIANTS, default="paper")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vcbounds", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"vcbounds {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="evaluate classical and refined bounds at one grid point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--m", type=float, default=None, help="growth value (mutually exclusive with --class)")
    p.add_argument("--class", dest="cls", choices=_CLASS_CHOICES, default=None)
    p.add_argument("--dim", type=int, default=2, help="ambient dimension for halfplanes")
    p.add_argument("--growth", choices=("exact", "sauer", "paper-n2"), default="exact")
    _add_bound_flags(p)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("compare", help="sweep the two bounds over an (n, eps) grid to CSV")
    p.add_argument("--n-range", required=True, help="value, comma list, or start:stop:step")
    p.add_argument("--eps-range", required=True)
    p.add_argument("--m", type=float, default=None, help="growth value (default 1)")
    p.add_argument("--class", dest="cls", choices=_CLASS_CHOICES, default=None)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--growth", choices=("exact", "sauer", "paper-n2"), default="exact")
    _add_bound_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("crossover", help="epsilon window where the refined bound wins (m-independent)")
    p.add_argument("--n", type=int, required=True)
    _add_bound_flags(p)
    p.set_defaults(func=_cmd_crossover)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of the uniform deviation, checked against bounds")
    p.add_argument("--class", dest="cls", choices=_CLASS_CHOICES, required=True)
    p.add_argument("--dist", choices=("uniform01", "gaussian"), default="uniform01")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--workers",
        type=int,
        default=int(os.environ.get("VCBOUNDS_WORKERS", "1")),
        help="trial partitions; the result is worker-count independent (env: VCBOUNDS_WORKERS)",
    )
    p.add_argument("--confidence", type=float, default=0.999)
    _add_bound_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("growth", help="growth values of a class over a range of r")
    p.add_argument("--class", dest="cls", choices=_CLASS_CHOICES, required=True)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--r-range", required=True)
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.set_defaults(func=_cmd_growth)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedClassError, SizeLimitError) as exc:
        print(f"unsupported configuration: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())

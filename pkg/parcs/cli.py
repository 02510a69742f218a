"""
Command-line entry point.

Subcommands: constants-sweep, phase-transition, aric-check, recover, report.
Every run writes only inside --out: its CSV/JSON/SVG outputs, manifest.json
(latest run), the append-only manifests.jsonl, the DuckDB ledger and
logs/parcs.log.

Exit codes: 0 on success, 1 on usage or validation errors, 2 on any other failure.
"""

import argparse
import hashlib
import json
import logging
import math
import sys
import time
import uuid
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import yaml
from dotenv import dotenv_values

from experiments.constants_sweep import constants_sweep
from experiments.phase_transition import (
    ExperimentConfig,
    run_phase_transition,
    transition_trend_fraction,
)
from experiments.plotting import plot_constants_svg, plot_phase_grid_svg

from . import __version__
from .aric import aric_profile, recovery_sufficient, symmetric_ric
from .config import Config
from .constants import ConditionMode, diagonal_bounds, measurement_condition_report, verify_bound_chains
from .database import DuckDBClient
from .exceptions import ParcsError, ValidationError
from .measurement import (
    EntryDistribution,
    SamplingMode,
    assemble,
    load_ensemble,
    read_vector_csv,
    save_ensemble,
    write_vector_csv,
)
from .monitoring.logger import get_logger, setup_logger
from .monitoring.metrics import MetricsCollector
from .profiles import FAMILIES, build_profiles
from .recovery import ALGORITHMS, SolverConfig, relative_error, solve_bpdn, success
from .transforms import BasisKind, basis_from_string

logger = get_logger(__name__)

BASES = tuple(kind.value for kind in BasisKind)
RANDOM_FAMILIES = ("global", "rademacher")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
DEFAULT_LOG_LEVEL = "INFO"
LOG_PACKAGES = ("parcs", "experiments")

# Files in --out that are bookkeeping, not outputs
UNTRACKED = {"manifest.json", "manifests.jsonl", "ledger.duckdb", "ledger.duckdb.wal"}


class UsageError(ValidationError):
    """Invalid flag combination detected after parsing."""


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that exits with status 1 on usage errors."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class RunManifest:
    """Provenance record of one CLI run."""

    subcommand: str
    argv: List[str]
    parameters: Dict[str, Any]
    seed: Optional[int]
    version: str = __version__
    run_id: str = field(default_factory=lambda: uuid.uuid4().hex[:12])
    created_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    wall_clock: float = 0.0
    outputs: Dict[str, str] = field(default_factory=dict)
    metrics: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def write(self, out_dir: Path) -> Path:
        """Write manifest.json and append to manifests.jsonl."""
        record = self.to_dict()
        path = out_dir / "manifest.json"
        path.write_text(json.dumps(record, indent=2, sort_keys=True, default=str), encoding="utf-8")
        with open(out_dir / "manifests.jsonl", "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True, default=str) + "\n")
        return path


@dataclass
class CommandOutcome:
    """What a subcommand hands back for the manifest and ledger."""

    seed: Optional[int]
    phase_cells: Optional[pd.DataFrame] = None


# ---------------------------------------------------------------------------
# Argument types


def _int_list(text: str) -> Tuple[int, ...]:
    try:
        values = tuple(int(v) for v in str(text).replace(" ", "").split(",") if v)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from e
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _grid(text: str) -> Tuple[int, int]:
    values = _int_list(text)
    if len(values) == 1:
        return values[0], values[0]
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"grid is R or R,C, got '{text}'")
    return values[0], values[1]


def _as_bool(text: Any) -> bool:
    if isinstance(text, bool):
        return text
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got '{text}'")


# ---------------------------------------------------------------------------
# Parser


def _add_common(parser: argparse.ArgumentParser, default_out: str) -> None:
    parser.add_argument("--config", help="YAML (.yaml/.yml) or key=value file; flags override it")
    parser.add_argument("--out", default=default_out, help="Output directory")
    parser.add_argument("--seed", type=int, default=None, help="Master seed")
    parser.add_argument("--threads", type=int, default=None, help="Worker cap (default: all cores)")
    parser.add_argument("--plot", action="store_true", help="Render SVG figures from the CSVs")
    parser.add_argument("--log-level", choices=LOG_LEVELS, default=None)


def _add_generation(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=FAMILIES, default="global")
    parser.add_argument("--basis", choices=BASES, default="fourier")
    parser.add_argument("--circulant", action="store_true", help="Circulant profiles")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="parcs",
        description="Parallel-acquisition compressed sensing experiments",
    )
    parser.add_argument("--version", action="version", version=f"parcs {__version__}")
    parser.add_argument("--replay", metavar="MANIFEST", help="Re-run the argv recorded in a manifest")
    parser.add_argument("--replay-out", metavar="DIR", help="Output directory for --replay")
    sub = parser.add_subparsers(dest="subcommand", parser_class=_ArgumentParser)

    # constants-sweep
    cs = sub.add_parser("constants-sweep", help="Squared constants against C")
    _add_common(cs, "runs/constants-sweep")
    _add_generation(cs)
    cs.set_defaults(family="partitioned")
    cs.add_argument("--C", dest="C", type=_int_list, default=(1, 2, 4, 8, 16), help="Sensor counts, e.g. 1,2,4")
    cs.add_argument("--n", type=int, default=256)
    cs.add_argument("--trials", type=int, default=1, help="Draws averaged per C for random families")

    # phase-transition
    pt = sub.add_parser("phase-transition", help="Empirical phase-transition grids")
    _add_common(pt, "runs/phase-transition")
    _add_generation(pt)
    pt.add_argument("--n", type=int, default=64)
    pt.add_argument("--grid", dest="grid_resolution", type=_grid, default=(16, 16), help="R or R,C")
    pt.add_argument("--trials", type=int, default=10)
    pt.add_argument("--tol", type=float, default=1e-3)
    pt.add_argument("--C", dest="C_list", type=_int_list, default=(1, 2, 4))
    pt.add_argument("--mode", choices=("distinct", "identical", "block-diagonal"), default="distinct")
    pt.add_argument("--entry-dist", choices=[d.value for d in EntryDistribution], default="gaussian")
    pt.add_argument("--fresh-ensemble-per-trial", type=_as_bool, default=True, metavar="BOOL")
    pt.add_argument("--algorithm", choices=ALGORITHMS, default="admm")
    pt.add_argument("--full", action="store_true", help="Full protocol: n=128, 50x50 grid, 20 trials")

    # aric-check
    ac = sub.add_parser("aric-check", help="Empirical ARICs of an ensemble")
    _add_common(ac, "runs/aric-check")
    _add_generation(ac)
    ac.add_argument("--ensemble", help="Ensemble container (otherwise one is generated)")
    ac.add_argument("--mode", choices=[m.value for m in SamplingMode], default="distinct")
    ac.add_argument("--row-counts", type=_int_list, default=None, help="Per-sensor rows for distinct-varied")
    ac.add_argument("--C", type=int, default=2)
    ac.add_argument("--m", type=int, default=8)
    ac.add_argument("--n", type=int, default=16)
    ac.add_argument("--entry-dist", choices=[d.value for d in EntryDistribution], default="gaussian")
    ac.add_argument("--orders", type=_int_list, default=(1, 2))
    ac.add_argument("--method", choices=("auto", "exhaustive", "sampled"), default="auto")
    ac.add_argument("--trials", type=int, default=100_000, help="Random draws per order when sampling")
    ac.add_argument("--save-ensemble", action="store_true", help="Also write ensemble.bin")

    # recover
    rc = sub.add_parser("recover", help="Noise-constrained l1 recovery")
    _add_common(rc, "runs/recover")
    rc.add_argument("--ensemble", required=True, help="Ensemble container")
    rc.add_argument("--measurements", required=True, help="Vector CSV (index, real, imag)")
    rc.add_argument("--truth", help="Ground-truth vector CSV for error reporting")
    rc.add_argument("--eta", type=float, default=0.0)
    rc.add_argument("--tol", type=float, default=1e-3)
    rc.add_argument("--algorithm", choices=ALGORITHMS, default="admm")
    rc.add_argument("--max-iterations", type=int, default=None)
    rc.add_argument("--primal-tol", type=float, default=None)
    rc.add_argument("--feasibility-tol", type=float, default=None)

    # report
    rp = sub.add_parser("report", help="Constants, bound chains and measurement conditions")
    _add_common(rp, "runs/report")
    _add_generation(rp)
    rp.set_defaults(family="partitioned")
    rp.add_argument("--C", type=int, default=4)
    rp.add_argument("--n", type=int, default=256)
    rp.add_argument("--s", type=int, default=10)
    rp.add_argument("--delta", type=float, default=0.5)
    rp.add_argument("--eps", type=float, default=0.01)
    rp.add_argument("--condition", choices=[c.value for c in ConditionMode], default=ConditionMode.DISTINCT.value)

    return parser


def _subparser(parser: argparse.ArgumentParser, name: str) -> argparse.ArgumentParser:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[name]
    raise KeyError(name)


def load_config_file(path: str) -> Dict[str, Any]:
    """Read a YAML file or a key=value file into a flat mapping."""
    file_path = Path(path)
    if not file_path.is_file():
        raise ValidationError(f"config file not found: {path}")
    if file_path.suffix.lower() in (".yaml", ".yml"):
        with open(file_path, encoding="utf-8") as fh:
            values = yaml.safe_load(fh) or {}
        if not isinstance(values, dict):
            raise ValidationError(f"{path}: expected a mapping at the top level")
        return values
    return {k: v for k, v in dotenv_values(file_path).items() if v is not None}


def _config_defaults(parser: argparse.ArgumentParser, values: Dict[str, Any]) -> Dict[str, Any]:
    """Map config keys onto parser destinations, as strings argparse will convert."""
    lookup: Dict[str, argparse.Action] = {}
    for action in parser._actions:
        lookup[action.dest] = action
        for option in action.option_strings:
            lookup[option.lstrip("-").replace("-", "_")] = action

    defaults: Dict[str, Any] = {}
    for key, value in values.items():
        action = lookup.get(str(key).replace("-", "_"))
        if action is None or action.dest in ("config", "help"):
            raise ValidationError(f"unknown config key '{key}'")
        if isinstance(action, argparse._StoreTrueAction):
            defaults[action.dest] = _as_bool(value)
        elif isinstance(value, (list, tuple)):
            defaults[action.dest] = ",".join(str(v) for v in value)
        elif value is None:
            defaults[action.dest] = None
        else:
            defaults[action.dest] = str(value).lower() if isinstance(value, bool) else str(value)
    return defaults


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        sub = _subparser(parser, args.subcommand)
        sub.set_defaults(**_config_defaults(sub, load_config_file(args.config)))
        args = parser.parse_args(argv)
    return args


# ---------------------------------------------------------------------------
# Helpers


def _write_csv(df: pd.DataFrame, path: Path) -> Path:
    df.to_csv(path, index=False, float_format="%.17g", encoding="utf-8")
    return path


def _write_json(payload: Dict[str, Any], path: Path) -> Path:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=str), encoding="utf-8")
    return path


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def _output_digests(out_dir: Path) -> Dict[str, str]:
    digests = {}
    for path in sorted(out_dir.rglob("*")):
        rel = path.relative_to(out_dir)
        if path.is_file() and rel.parts[0] != "logs" and rel.name not in UNTRACKED:
            digests[rel.as_posix()] = _sha256(path)
    return digests


def _require_seed(args: argparse.Namespace, why: str) -> int:
    if args.seed is None:
        raise UsageError(f"--seed is required {why}")
    return int(args.seed)


def _parameters(args: argparse.Namespace) -> Dict[str, Any]:
    skip = {"subcommand", "replay", "replay_out", "handler"}
    return {
        k: list(v) if isinstance(v, tuple) else v
        for k, v in sorted(vars(args).items())
        if k not in skip
    }


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_constants_sweep(args: argparse.Namespace, out: Path, metrics: MetricsCollector) -> CommandOutcome:
    seed = 0
    if args.family in RANDOM_FAMILIES:
        seed = _require_seed(args, f"for the random family '{args.family}'")

    df = constants_sweep(
        args.family, args.basis, args.C, args.n, seed=seed, trials=args.trials, circulant=args.circulant, metrics=metrics
    )
    csv_path = _write_csv(df, out / "constants.csv")
    if args.plot:
        plot_constants_svg(csv_path, out / "constants.svg")

    print(df.to_csv(index=False, float_format="%.17g"), end="")
    return CommandOutcome(seed=args.seed)


def _cmd_phase_transition(args: argparse.Namespace, out: Path, metrics: MetricsCollector) -> CommandOutcome:
    seed = _require_seed(args, "for phase-transition")
    if args.full:
        args.n, args.grid_resolution, args.trials = 128, (50, 50), 20

    cfg = ExperimentConfig(
        n=args.n,
        grid_resolution=args.grid_resolution,
        trials=args.trials,
        tol=args.tol,
        C_list=args.C_list,
        family=args.family,
        basis=args.basis,
        mode=args.mode,
        circulant=args.circulant,
        seed=seed,
        entry_dist=args.entry_dist,
        fresh_ensemble_per_trial=args.fresh_ensemble_per_trial,
        algorithm=args.algorithm,
        workers=args.threads,
    )
    # Sidecar copy of the resolved config
    with open(out / "experiment_config.yaml", "w", encoding="utf-8") as fh:
        yaml.safe_dump({k: v for k, v in cfg.to_dict().items() if k != "workers"}, fh, sort_keys=True)

    grids = run_phase_transition(cfg, metrics)
    cells = pd.concat([grids[C].to_frame() for C in cfg.C_list], ignore_index=True)
    curves = pd.concat([grids[C].curve_frame() for C in cfg.C_list], ignore_index=True)
    grid_csv = _write_csv(cells, out / "phase_grid.csv")
    _write_csv(curves, out / "transition_curve.csv")

    if len(cfg.C_list) > 1:
        ordered = sorted(cfg.C_list)
        trend = transition_trend_fraction([grids[C].transition for C in ordered])
        metrics.set_gauge("transition_trend_fraction", trend)
        print(f"transition non-decreasing in C for {trend:.3f} of comparable columns")

    if args.plot:
        plot_phase_grid_svg(grid_csv, out)

    return CommandOutcome(seed=seed, phase_cells=cells)


def _cmd_aric_check(args: argparse.Namespace, out: Path, metrics: MetricsCollector) -> CommandOutcome:
    seed = args.seed
    if args.ensemble:
        ensemble = load_ensemble(args.ensemble)
    else:
        seed = _require_seed(args, "when aric-check generates its ensemble")
        U = basis_from_string(args.basis, args.n)
        p = build_profiles(
            args.family, args.C, args.n, seed=np.random.SeedSequence(seed, spawn_key=(args.C,)), circulant=args.circulant
        )
        ensemble = assemble(
            SamplingMode(args.mode), p, U, args.m, EntryDistribution(args.entry_dist), seed, row_counts=args.row_counts
        )
        if args.save_ensemble:
            save_ensemble(ensemble, out / "ensemble.bin")

    N = ensemble.n
    sampled = args.method == "sampled" or (
        args.method == "auto" and any(math.comb(N, s) > Config.ARIC_EXHAUSTIVE_GUARD for s in args.orders)
    )
    if sampled and seed is None:
        seed = _require_seed(args, "for sampled ARIC estimation")

    start = time.perf_counter()
    estimates = aric_profile(
        ensemble.matrix, args.orders, method=args.method, trials=args.trials, seed=seed, workers=args.threads
    )
    metrics.record_timer("aric_profile", time.perf_counter() - start)

    rows = []
    for est in estimates:
        delta, t = symmetric_ric(est) if est.alpha_s + est.beta_s > 0 else (float("nan"), float("nan"))
        rows.append(
            {
                "s": est.s,
                "alpha_s": est.alpha_s,
                "beta_s": est.beta_s,
                "ratio": est.ratio,
                "sufficient": recovery_sufficient(est),
                "method": est.method.value,
                "supports_checked": est.supports_checked,
                "symmetric_delta": delta,
                "rescale_t": t,
            }
        )
    df = pd.DataFrame(rows)
    _write_csv(df, out / "aric.csv")
    print(df[["s", "alpha_s", "beta_s", "ratio", "sufficient"]].to_csv(index=False, float_format="%.17g"), end="")
    return CommandOutcome(seed=seed)


def _cmd_recover(args: argparse.Namespace, out: Path, metrics: MetricsCollector) -> CommandOutcome:
    ensemble = load_ensemble(args.ensemble)
    y = read_vector_csv(args.measurements)

    overrides = {
        k: v
        for k, v in (
            ("max_iterations", args.max_iterations),
            ("primal_tol", args.primal_tol),
            ("feasibility_tol", args.feasibility_tol),
        )
        if v is not None
    }
    cfg = SolverConfig(eta=args.eta, algorithm=args.algorithm, **overrides)
    result = solve_bpdn(ensemble.matrix, y, cfg, metrics)

    write_vector_csv(result.x_hat, out / "x_hat.csv")
    diagnostics: Dict[str, Any] = {
        "iterations": result.iterations,
        "final_feasibility_gap": result.final_feasibility_gap,
        "objective": result.objective,
        "converged": result.converged,
        "eta": args.eta,
        "eta_effective": result.eta_effective,
        "algorithm": result.algorithm,
    }
    if args.truth:
        x = read_vector_csv(args.truth)
        diagnostics["relative_error"] = relative_error(x, result.x_hat)
        diagnostics["success"] = success(x, result.x_hat, args.tol)

    _write_json(diagnostics, out / "recovery.json")
    print(json.dumps(diagnostics, indent=2, sort_keys=True))
    return CommandOutcome(seed=args.seed)


def _cmd_report(args: argparse.Namespace, out: Path, metrics: MetricsCollector) -> CommandOutcome:
    seed = args.seed
    if args.family in RANDOM_FAMILIES:
        seed = _require_seed(args, f"for the random family '{args.family}'")

    U = basis_from_string(args.basis, args.n)
    profile_seed = np.random.SeedSequence(seed, spawn_key=(args.C,)) if seed is not None else None
    p = build_profiles(args.family, args.C, args.n, seed=profile_seed, circulant=args.circulant)

    report = measurement_condition_report(p, U, args.s, args.delta, args.eps, ConditionMode(args.condition))
    chains = verify_bound_chains(p, U)
    payload = {
        "conditions": report.to_dict(),
        "bound_chains": [asdict(check) for check in chains.checks],
        "bound_chains_hold": chains.all_hold,
        "diagonal_bounds": diagonal_bounds(p, U),
    }
    _write_json(payload, out / "report.json")

    print(f"required m = {report.required_m:.6g} ({report.per_sensor_rows:.6g} rows per sensor)")
    print(f"bound chains hold: {chains.all_hold}")
    return CommandOutcome(seed=seed)


COMMANDS: Dict[str, Callable[[argparse.Namespace, Path, MetricsCollector], CommandOutcome]] = {
    "constants-sweep": _cmd_constants_sweep,
    "phase-transition": _cmd_phase_transition,
    "aric-check": _cmd_aric_check,
    "recover": _cmd_recover,
    "report": _cmd_report,
}


# ---------------------------------------------------------------------------
# Entry point


def _replay_argv(manifest_path: str, out: Optional[str]) -> List[str]:
    path = Path(manifest_path)
    if not path.is_file():
        raise ValidationError(f"manifest not found: {manifest_path}")
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
        argv = [str(a) for a in manifest["argv"]]
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise ValidationError(f"{manifest_path} is not a run manifest ({e})") from e

    if out is not None:
        if "--out" in argv:
            argv[argv.index("--out") + 1] = out
        else:
            argv += ["--out", out]
    return argv


def _run(argv: List[str]) -> int:
    args = parse_args(argv)
    if args.replay:
        return _run(_replay_argv(args.replay, args.replay_out))
    if not args.subcommand:
        build_parser().print_usage(sys.stderr)
        print("parcs: error: a subcommand is required", file=sys.stderr)
        return 1

    ok, problems = Config.validate()
    if not ok:
        raise ValidationError(f"invalid configuration: {'; '.join(problems)}")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    log_file = str(out / "logs" / "parcs.log")
    _route_file_logs(log_file, args.log_level or DEFAULT_LOG_LEVEL)

    try:
        return _execute(args, argv, out)
    finally:
        _detach_file_logs()


def _route_file_logs(log_file: str, level: str) -> None:
    """Send file logs to log_file only, whatever PARCS_LOGS_DIR says."""
    _detach_file_logs()
    for package in LOG_PACKAGES:
        setup_logger(package, log_file=log_file, level=level)


def _detach_file_logs() -> None:
    for package in LOG_PACKAGES:
        package_logger = logging.getLogger(package)
        for handler in list(package_logger.handlers):
            if isinstance(handler, RotatingFileHandler):
                package_logger.removeHandler(handler)
                handler.close()


def _execute(args: argparse.Namespace, argv: List[str], out: Path) -> int:
    metrics = MetricsCollector()
    start = time.perf_counter()
    logger.info(f"parcs {args.subcommand} -> {out}")

    outcome = COMMANDS[args.subcommand](args, out, metrics)

    manifest = RunManifest(
        subcommand=args.subcommand,
        argv=list(argv),
        parameters=_parameters(args),
        seed=outcome.seed,
        wall_clock=time.perf_counter() - start,
        outputs=_output_digests(out),
        metrics=metrics.get_all_metrics(),
    )
    manifest.write(out)

    with DuckDBClient(str(out / "ledger.duckdb")) as ledger:
        ledger.insert_run(manifest.to_dict())
        if outcome.phase_cells is not None:
            ledger.insert_phase_cells(manifest.run_id, outcome.phase_cells)
        stats = ledger.get_database_stats()

    logger.info(
        f"Ledger {stats['database_path']}: {stats['runs_count']} run(s), "
        f"{stats['phase_cells_count']} phase cell(s)"
    )

    logger.info(f"Run {manifest.run_id} finished in {manifest.wall_clock:.2f}s")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        Exit code
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        return _run(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else (0 if e.code is None else 1)
    except ValidationError as e:
        logger.error(f"Validation error: {e}")
        print(f"parcs: error: {e}", file=sys.stderr)
        return 1
    except ParcsError as e:
        logger.error(f"Run failed: {e}")
        print(f"parcs: failed: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        logger.exception(f"Unexpected failure: {e}")
        print(f"parcs: failed: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

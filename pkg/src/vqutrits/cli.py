"""Command-line interface.

Subcommands
-----------
preset <name>   figure preset curves to CSV (fig2a ... fig8b)
sweep           Cartesian (gamma0, theta, omega) grid to CSV
validate        RK4-oracle cross-check over the default grid
steady          long-time negativity report for one parameter set

Common flags: --out (default stdout), --format csv, --config FILE,
--jobs N.  A config file holds flat ``key = value`` lines mirroring the
long flag names; precedence is CLI > config > defaults.  Exit codes:
0 success, 1 validation failure, 2 bad arguments or config.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import nullcontext

from .model import InitialState, ModelError, named_initial_state, validate
from .sweep import (
    PRESET_NAMES,
    SweepSpec,
    UnknownPresetError,
    report_cell_issues,
    run_preset,
    run_sweep,
    run_validation,
    steady_report,
    write_csv,
    write_steady_csv,
    write_sweep_csv,
    write_validation_csv,
)

__all__ = ["main"]


def _float_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty value list")
    return values


def _init_state(text: str) -> tuple[str, InitialState]:
    """Named state, or four comma-separated complex c1a,c1b,c2a,c2b."""
    name = text.strip()
    if name in ("maximal", "partial", "product"):
        return name, named_initial_state(name)
    parts = [tok.strip() for tok in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            f"init must be maximal|partial|product or c1a,c1b,c2a,c2b, got {text!r}"
        )
    try:
        c1a, c1b, c2a, c2b = (complex(tok) for tok in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unparseable complex amplitudes: {text!r}")
    return "custom", InitialState(c1a=c1a, c1b=c1b, c2a=c2a, c2b=c2b)


def _add_common(parser: argparse.ArgumentParser) -> dict:
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--format", default="csv", choices=["csv"],
                        help="output format (csv only)")
    parser.add_argument("--config", default=None,
                        help="flat key=value config file; CLI flags win")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker threads for grid cells")
    return {"out": str, "format": str, "config": str, "jobs": int}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="vqutrits",
        description="Entanglement dynamics of two V-type atoms in a lossy cavity",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    converters: dict[str, dict] = {}

    p_preset = sub.add_parser("preset", help="run one figure preset")
    p_preset.add_argument("name", help=f"one of {', '.join(PRESET_NAMES)}")
    converters["preset"] = _add_common(p_preset)

    p_sweep = sub.add_parser("sweep", help="run a parameter grid")
    p_sweep.add_argument("--gamma0", type=_float_list, default=(0.1,),
                         help="comma-separated gamma0 values (kappa units)")
    p_sweep.add_argument("--theta", type=_float_list, default=(0.0,),
                         help="comma-separated SGI values in [-1, 1]")
    p_sweep.add_argument("--omega", type=_float_list, default=(0.0,),
                         help="comma-separated dipole-dipole shifts (kappa units)")
    p_sweep.add_argument("--init", type=_init_state, default=("maximal", named_initial_state("maximal")),
                         help="maximal|partial|product or c1a,c1b,c2a,c2b")
    p_sweep.add_argument("--t-end", type=float, default=50.0,
                         help="trajectory end time (1/kappa units)")
    p_sweep.add_argument("--points", type=int, default=2001,
                         help="grid points per trajectory")
    converters["sweep"] = {
        "gamma0": _float_list, "theta": _float_list, "omega": _float_list,
        "init": _init_state, "t_end": float, "points": int,
        **_add_common(p_sweep),
    }

    p_val = sub.add_parser("validate", help="cross-check oracle vs closed form")
    p_val.add_argument("--dt", type=float, default=1e-3,
                       help="RK4 step (1/kappa units)")
    converters["validate"] = {"dt": float, **_add_common(p_val)}

    p_steady = sub.add_parser("steady", help="long-time negativity report")
    p_steady.add_argument("--gamma0", type=float, default=0.1,
                          help="atomic relaxation rate (kappa units), > 0")
    p_steady.add_argument("--theta", type=float, required=True,
                          help="SGI value in [-1, 1]")
    p_steady.add_argument("--omega", type=float, default=0.0,
                          help="dipole-dipole shift (kappa units)")
    p_steady.add_argument("--init", type=_init_state, required=True,
                          help="maximal|partial|product or c1a,c1b,c2a,c2b")
    converters["steady"] = {
        "gamma0": float, "theta": float, "omega": float, "init": _init_state,
        **_add_common(p_steady),
    }
    return parser, converters


def _scan_config_path(argv: list[str]) -> str | None:
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def _load_config(path: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = line.split("=", 1)
            entries[key.strip().replace("-", "_")] = value.strip()
    return entries


def _explicit_flags(argv: list[str]) -> set[str]:
    flags = set()
    for tok in argv:
        if tok.startswith("--"):
            flags.add(tok[2:].split("=", 1)[0].replace("-", "_"))
    return flags


def _apply_config(args, argv: list[str], converters: dict) -> None:
    if args.config is None:
        return
    entries = _load_config(args.config)
    known = converters[args.command]
    explicit = _explicit_flags(argv)
    for key, raw in entries.items():
        if key in ("config", "command"):
            raise ValueError(f"config may not set {key!r}")
        if key not in known or not hasattr(args, key):
            raise ValueError(
                f"config key {key!r} is not a flag of {args.command!r}"
            )
        if key in explicit:
            continue  # CLI wins
        setattr(args, key, known[key](raw))


def _open_out(path: str | None):
    if path is None:
        return nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8", newline="")


def _cmd_preset(args) -> int:
    try:
        trajectories = run_preset(args.name)
    except UnknownPresetError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    with _open_out(args.out) as out:
        write_csv(trajectories, out)
    return 0


def _cmd_sweep(args) -> int:
    init_label, init = args.init
    spec = SweepSpec(
        gamma0s=args.gamma0,
        thetas=args.theta,
        omegas=args.omega,
        init=init,
        init_label=init_label,
        t_end=args.t_end,
        n_points=args.points,
    )
    result = run_sweep(spec, jobs=args.jobs)
    failures = report_cell_issues(result)
    with _open_out(args.out) as out:
        write_sweep_csv(result, out)
    return 1 if failures else 0


def _cmd_validate(args) -> int:
    cells = run_validation(dt=args.dt, jobs=args.jobs)
    with _open_out(args.out) as out:
        write_validation_csv(cells, out)
    bad = [c for c in cells if not c.passed]
    if bad:
        print(f"validation failed for {len(bad)} of {len(cells)} cells",
              file=sys.stderr)
        return 1
    return 0


def _cmd_steady(args) -> int:
    init_label, init = args.init
    from .model import ModelParams

    params = ModelParams(gamma0=args.gamma0, theta=args.theta,
                         omega_dd=args.omega)
    try:
        validate(params, init)
        row = steady_report(params, init, init_label)
    except ModelError as exc:
        print(f"validation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not row.pop("tail_ok"):
        print(
            f"warning: trajectory tail gap {row['tail_gap']:.3g} "
            f"exceeds the 0.01 sanity gate",
            file=sys.stderr,
        )
    row.pop("tail_gap")
    with _open_out(args.out) as out:
        write_steady_csv([row], out)
    return 0


_COMMANDS = {
    "preset": _cmd_preset,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
    "steady": _cmd_steady,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, converters = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _apply_config(args, argv, converters)
    except (OSError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](args)
    except ModelError as exc:
        print(f"validation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())

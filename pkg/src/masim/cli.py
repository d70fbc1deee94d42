"""Command-line front end.

Subcommands:
  run       run an experiment from a config file
  preset    run a named figure-style experiment design
  brute     run a config with the exhaustive oracle forced into the methods
  validate  check a config file and report the resolved sweep

Exit codes: 0 success, 2 configuration error, 3 runtime numeric failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .errors import ConfigError, MasimError, UnknownPreset
from .harness import (ExperimentConfig, emit_csv, emit_trace_csv, figure_presets,
                      load_config, preset_note, run_experiment, validate_config)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="masim",
        description="Movable-antenna placement optimization on a sampling grid")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_options(p):
        p.add_argument("--seed", type=int, default=None, help="master seed override")
        p.add_argument("--out", default=None, help="output path base override")
        p.add_argument("--workers", type=int, default=None,
                       help="parallel realization workers")
        p.add_argument("--timing", action="store_true",
                       help="record wall-clock times (breaks byte-identical reruns)")
        p.add_argument("--no-plot", action="store_true",
                       help="skip the summary figure")

    p_run = sub.add_parser("run", help="run an experiment from a config file")
    p_run.add_argument("--config", required=True)
    add_run_options(p_run)

    p_preset = sub.add_parser("preset", help="run a named experiment design")
    p_preset.add_argument("--name", required=True,
                          choices=["fig2", "fig3", "fig4", "fig5"])
    p_preset.add_argument("--realizations", type=int, default=None)
    p_preset.add_argument("--full-scale", action="store_true",
                          help="restore 1000 realizations")
    add_run_options(p_preset)

    p_brute = sub.add_parser("brute",
                             help="run a config with the exhaustive oracle included")
    p_brute.add_argument("--config", required=True)
    add_run_options(p_brute)

    p_val = sub.add_parser("validate", help="check a config file")
    p_val.add_argument("--config", required=True)
    return parser


def _apply_overrides(cfg: ExperimentConfig, args) -> ExperimentConfig:
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    if getattr(args, "out", None) is not None:
        cfg = replace(cfg, output=args.out)
    if getattr(args, "workers", None) is not None:
        cfg = replace(cfg, workers=args.workers)
    if getattr(args, "timing", False):
        cfg = replace(cfg, record_timing=True)
    out_dir = os.environ.get("MASIM_OUTPUT_DIR")
    if out_dir:
        cfg = replace(cfg, output=os.path.join(out_dir, os.path.basename(cfg.output)))
    return cfg


def _execute(cfg: ExperimentConfig, make_plot: bool, title: str = "") -> None:
    table = run_experiment(cfg)
    runs_path, summary_path = emit_csv(table, cfg.output)
    written = [runs_path, summary_path]
    if "proposed" in cfg.methods:
        written.append(emit_trace_csv(table, cfg.output))
    if make_plot:
        from .plotting import render_summary
        written.append(render_summary(table, cfg.output, title=title))
    for row in table.summary():
        print(f"{row.sweep_var}={row.sweep_value:g} {row.method}: "
              f"mean {row.mean_utility:.6g} (std {row.std_utility:.3g}, "
              f"n={row.realizations})")
    for path in written:
        print(f"wrote {path}")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            cfg = load_config(args.config)
            sweep = validate_config(cfg)
            print(f"config OK: scenario={cfg.scenario}, users={cfg.users}, "
                  f"antennas={cfg.antennas}, methods={','.join(cfg.methods)}")
            print(f"sweep {sweep[0].var}: " +
                  ", ".join(f"{p.value:g} (points={p.num_points})" for p in sweep))
            return EXIT_OK

        if args.command == "run" or args.command == "brute":
            cfg = load_config(args.config)
            if args.command == "brute" and "brute_force" not in cfg.methods:
                cfg = replace(cfg, methods=cfg.methods + ("brute_force",))
            cfg = _apply_overrides(cfg, args)
            _execute(cfg, make_plot=not args.no_plot)
            return EXIT_OK

        if args.command == "preset":
            realizations = 1000 if args.full_scale else 200
            if args.realizations is not None:
                realizations = args.realizations
            try:
                cfg = figure_presets(args.name, realizations=realizations)
            except UnknownPreset as exc:
                raise ConfigError(str(exc)) from exc
            cfg = _apply_overrides(cfg, args)
            _execute(cfg, make_plot=not args.no_plot, title=preset_note(args.name))
            return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MasimError as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())

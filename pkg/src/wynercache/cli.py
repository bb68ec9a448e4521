"""Command line front end: simulate, sweep and transcript subcommands.

Configuration comes from an optional JSON document plus flag overrides; exact
rationals cross the boundary as "p/q" strings.  Exit status is 0 only when
every invariant suite the run exercises passes (2 for configuration errors).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import WynercacheError
from .experiment import (
    RunConfig,
    default_gamma_grid,
    default_mt_list,
    run_simulation,
    transcript_text,
    verify_grid_points,
    write_fig3_csv,
    write_fig4_csv,
)
from .network import parse_rational


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="JSON config; flags override fields")
    parser.add_argument("--scheme", choices=["cached", "nocache-A", "nocache-B", "memory-share"])
    parser.add_argument("--k", type=int, help="number of transmitter/receiver pairs")
    parser.add_argument("--gamma", help="cache fraction as p/q")
    parser.add_argument("--x", type=int, help="scheme parameter for the no-cache schedules")
    parser.add_argument("--n", type=int, help="library size (default K)")
    parser.add_argument("--f", type=int, help="file size in bits (default scheme dependent)")
    parser.add_argument("--seed", type=int, help="channel/payload seed (default 0)")
    parser.add_argument(
        "--window",
        choices=["interior", "full"],
        help="measurement window: edge-free interior (default) or every receiver",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wynercache",
        description="Exact cache-aided cooperative transmission experiments "
        "on the two-neighbor linear interference network",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one delivery end to end and verify it")
    _add_run_flags(sim)
    sim.add_argument("--out", type=Path, help="directory for result.json (stdout otherwise)")
    sim.add_argument("--transcript", action="store_true", help="also emit the slot dump")

    sweep = sub.add_parser("sweep", help="emit fig3.csv / fig4.csv tradeoff tables")
    sweep.add_argument("--config", type=Path)
    sweep.add_argument("--mt", type=int, nargs="+", help="backhaul loads (default 1 2 3)")
    sweep.add_argument("--gamma-grid", nargs="+", help="cache fractions as p/q strings")
    sweep.add_argument("--x-max", type=int, default=64, help="envelope parameter range")
    sweep.add_argument("--out", type=Path, default=Path("."))
    sweep.add_argument(
        "--verify-grid",
        action="store_true",
        help="simulate the full-DoF knots and check they reach puDoF 1",
    )

    trans = sub.add_parser("transcript", help="print the slot-by-slot signal dump")
    _add_run_flags(trans)
    trans.add_argument("--max-tx", type=int, help="limit printed transmitters")
    return parser


def _load_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if getattr(args, "config", None):
        data = json.loads(Path(args.config).read_text())
    for key in ("scheme", "k", "gamma", "x", "n", "f", "seed", "window"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    config = RunConfig.from_dict(data)
    return config.validated()


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _load_config(args)
    result = run_simulation(config)
    record = json.dumps(result.record(), indent=2, sort_keys=True)
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "result.json").write_text(record + "\n")
        if args.transcript:
            (args.out / "transcript.txt").write_text(transcript_text(config))
    else:
        print(record)
        if args.transcript:
            print(transcript_text(config), end="")
    if not result.passed:
        failed = sorted(name for name, ok in result.invariants.items() if not ok)
        print(f"FAILED invariants: {', '.join(failed)}", file=sys.stderr)
        for slot, rx, reason in result.failures[:20]:
            print(f"  slot={slot} receiver={rx} reason={reason}", file=sys.stderr)
        return 1
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    data: dict = {}
    if args.config:
        data = json.loads(Path(args.config).read_text())
    mt_list = args.mt or data.get("mt") or default_mt_list()
    if args.gamma_grid is not None:
        grid = sorted({parse_rational(g) for g in args.gamma_grid})
    elif "gamma_grid" in data:
        grid = sorted({parse_rational(g) for g in data["gamma_grid"]})
    else:
        grid = default_gamma_grid()
    if not mt_list or not grid:
        print("sweep needs a nonempty load list and gamma grid", file=sys.stderr)
        return 2
    args.out.mkdir(parents=True, exist_ok=True)
    write_fig3_csv(args.out / "fig3.csv", mt_list, grid)
    write_fig4_csv(args.out / "fig4.csv", mt_list, grid, args.x_max)
    if args.verify_grid:
        checks = verify_grid_points(mt_list)
        for name, ok in sorted(checks.items()):
            print(f"verify {name}: {'pass' if ok else 'FAIL'}")
        if not all(checks.values()):
            return 1
    return 0


def _cmd_transcript(args: argparse.Namespace) -> int:
    config = _load_config(args)
    print(transcript_text(config, args.max_tx), end="")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_transcript(args)
    except WynercacheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

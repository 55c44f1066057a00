"""``ramsey-allee`` command line entry point."""

import argparse
import sys

from ..errors import RamseyAlleeError
from .commands import COMMANDS
from .config import load_config, override


def build_parser():
    p = argparse.ArgumentParser(
        prog="ramsey-allee",
        description="Ramsey growth model with Allee-effect labour: simulation, bounds, "
                    "steady states, shooting, sweeps and figure data.")
    p.add_argument("command", choices=list(COMMANDS))
    p.add_argument("--config", required=True, help="scenario document (key = value lines)")
    p.add_argument("--out", default=".", help="output directory (default: current)")
    p.add_argument("--svg", action="store_true", help="also write SVG plots")
    p.add_argument("--t-end", type=float, default=None, help="override solver.t_end")
    p.add_argument("--rtol", type=float, default=None, help="override solver.rtol")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for sweep (results keep grid order)")
    return p


def _report(command, result):
    s = result.summary
    if command == "steady-state":
        for row in s["rows"]:
            name, case, *nums = row
            if name.startswith("D_"):
                print(f"{name} = {nums[-1]:.10g}")
            else:
                print(f"{name}: {case} n_inf={nums[0]:.6g} k_inf={nums[1]:.10g} "
                      f"c_inf={nums[2]:.10g} x_inf={nums[3]:.10g} z_inf={nums[4]:.10g}")
    elif command == "shoot":
        print(f"c0 = {s['c0']!r}")
    elif command == "bounds":
        print(f"sandwich violations: {s['sandwich_violations']}")
    elif command == "reproduce-figures":
        for label, tag in s["termination"].items():
            print(f"{label}: {tag}")
        print(f"blow-up time: {s['blow_up_time']:.6g}")
    if "termination" in s and isinstance(s["termination"], str):
        print(f"termination: {s['termination']}")
    for path in result.files:
        print(f"wrote {path}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = override(load_config(args.config), t_end=args.t_end, rtol=args.rtol)
        run = COMMANDS[args.command]
        if args.command == "sweep":
            result = run(cfg, args.out, args.svg, jobs=max(1, args.jobs))
        else:
            result = run(cfg, args.out, args.svg)
    except (RamseyAlleeError, OSError) as exc:
        print(f"ramsey-allee {args.command}: error: {exc}", file=sys.stderr)
        return 1
    _report(args.command, result)
    return 0


if __name__ == "__main__":
    sys.exit(main())

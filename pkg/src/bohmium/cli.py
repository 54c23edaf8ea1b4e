"""Command-line front end for the scenario runner.

Examples:
    bohmium --list
    bohmium --scenario fig3-lissajous --out out/fig3
    bohmium --scenario fig6-flcn --out out/fig6 --t-end 20000
    bohmium --config out/fig3/summary.json --out out/fig3-again
    bohmium --scenario fig9-isotropic-sweep --out out/fig9 --workers 4

On failure a machine-readable error.json is written to the output
directory (and echoed on stderr) and the exit status is nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import BohmiumError, ConfigParse, UnknownScenario
from .scenarios import (get_scenario, list_scenarios, load_config_file,
                        run_scenario)


def _parse_tol(text):
    if text is None:
        return None
    parts = text.split(":")
    try:
        rtol = float(parts[0])
        atol = float(parts[1]) if len(parts) > 1 else rtol * 1e-2
    except ValueError:
        raise ConfigParse(f"--tol expects RTOL or RTOL:ATOL, got {text!r}")
    return (rtol, atol)


def build_parser():
    p = argparse.ArgumentParser(
        prog="bohmium",
        description="Bohmian trajectories of two entangled coherent-state qubits")
    p.add_argument("--list", action="store_true", help="list available scenarios")
    p.add_argument("--scenario", help="scenario name from the registry")
    p.add_argument("--config", help="configuration file (.json or .ini)")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--seed", type=int, default=None, help="Monte-Carlo seed override")
    p.add_argument("--precision", choices=["standard", "extended"], default=None)
    p.add_argument("--tol", default=None, metavar="RTOL[:ATOL]",
                   help="integrator tolerance override")
    p.add_argument("--t-end", type=float, default=None, dest="t_end",
                   help="integration end time override")
    p.add_argument("--workers", type=int, default=None,
                   help="sweep worker processes (default: BOHMIUM_THREADS or 1)")
    return p


def _fail(args, exc, code):
    payload = {"error": {"type": type(exc).__name__, "message": str(exc),
                         "module": type(exc).__module__}}
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text, file=sys.stderr)
    try:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "error.json").write_text(text + "\n")
    except OSError:
        pass
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.list:
        rows = list_scenarios()
        width = max(len(r[0]) for r in rows)
        for name, runtime_class, desc in rows:
            print(f"{name:<{width}}  [{runtime_class:<6}]  {desc}")
        return 0
    if not args.scenario and not args.config:
        build_parser().print_usage()
        print("error: provide --scenario, --config or --list", file=sys.stderr)
        return 2
    try:
        if args.config:
            scn = load_config_file(args.config)
        else:
            scn = get_scenario(args.scenario)
        summary = run_scenario(scn, out_dir=args.out, seed=args.seed,
                               t_end=args.t_end, tol=_parse_tol(args.tol),
                               precision=args.precision, workers=args.workers)
    except UnknownScenario as exc:
        return _fail(args, exc, 2)
    except ConfigParse as exc:
        return _fail(args, exc, 3)
    except BohmiumError as exc:
        return _fail(args, exc, 4)
    print(f"{summary['scenario']}: wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

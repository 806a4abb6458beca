"""Command line entry point.

Exit codes: 0 success, 1 invalid input, 2 no convergence at the horizon,
3 an invariant check failed (or was ambiguous).
"""
import argparse
import json
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import io
from .exceptions import HorizonReachedWithoutConvergence, NotApplicable, ParseError, ValidationError
from .single_topic import single_topic_minf, single_topic_winf, single_topic_yinf

EXIT_OK, EXIT_INVALID, EXIT_NO_CONVERGENCE, EXIT_INVARIANT = 0, 1, 2, 3


def _overrides(args):
    out = {}
    if args.horizon is not None:
        out["horizon"] = args.horizon
    if args.tol is not None:
        out["tol_conv"] = args.tol
    if args.sign_eps is not None:
        out["sign_eps"] = args.sign_eps
    return out


def _load(path):
    if path in io.FIXTURES and not Path(path).exists():
        return io.load_fixture(path)
    return io.load_scenario(path)


def _print_checks(report):
    width = max(len(k) for k in report.property_results)
    for name, status in report.property_results.items():
        print(f"{name:<{width}}  {status}")


def _run_one(scenario, out_dir, overrides):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HorizonReachedWithoutConvergence)
        return io.run(scenario, out_dir, **overrides)


def cmd_simulate(args):
    scenario = _load(args.scenario)
    out = Path(args.out) if args.out else Path(f"{scenario.name}_run")
    report = _run_one(scenario, out, _overrides(args))
    state = "converged" if report.converged else "NOT converged"
    print(f"{scenario.name}: {state} after {report.steps} steps (lock time {report.lock_time})")
    print(f"wrote {out}/trajectory.csv, influence.csv, summary.json, graph.dot")
    return report.exit_code


def cmd_check(args):
    scenario = _load(args.scenario)
    report = _run_one(scenario, args.out, _overrides(args))
    _print_checks(report)
    return report.exit_code


def cmd_closed_form(args):
    scenario = _load(args.scenario)
    if scenario.Y0.shape[1] != 1:
        raise NotApplicable(f"closed form needs a single topic, scenario has m = {scenario.Y0.shape[1]}")
    y0, theta, eps = scenario.Y0[:, 0], scenario.theta, scenario.config.sign_eps
    payload = {
        "name": scenario.name,
        "W_inf_signs": single_topic_winf(y0, eps).astype(int).tolist(),
        "M_inf": single_topic_minf(y0, theta, eps).tolist(),
        "y_inf": single_topic_yinf(y0, theta, eps).tolist(),
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_export_dot(args):
    sys.stdout.write(io.export_dot(args.run_dir))
    return EXIT_OK


def cmd_sweep(args):
    scenarios = [_load(p) for p in args.scenarios]
    out = Path(args.out)
    overrides = _overrides(args)
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        futures = [pool.submit(_run_one, s, out / s.name, overrides) for s in scenarios]
        reports = [f.result() for f in futures]
    code = EXIT_OK
    for r in reports:
        print(f"{r.name}: converged={r.converged} steps={r.steps} all_pass={r.all_pass}")
        code = max(code, r.exit_code)
    return code


def build_parser():
    parser = argparse.ArgumentParser(
        prog="homophily-fj",
        description="Signed Friedkin-Johnsen opinion dynamics with homophily-driven influence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_numeric(p):
        p.add_argument("--horizon", type=int, default=None, help="maximum number of steps")
        p.add_argument("--tol", type=float, default=None, help="convergence tolerance")
        p.add_argument("--sign-eps", type=float, default=None, help="zero band for sign evaluation")

    p = sub.add_parser("simulate", help="run a scenario and write CSV/JSON/DOT outputs")
    p.add_argument("scenario", help="scenario JSON file (or a bundled fixture name)")
    p.add_argument("--out", default=None, help="output directory (default: <name>_run)")
    add_numeric(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("closed-form", help="closed-form single-topic limit")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("check", help="run the invariant suite; exit 0 iff all pass")
    p.add_argument("scenario")
    p.add_argument("--out", default=None, help="also write run files here")
    add_numeric(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("export-dot", help="regenerate graph.dot from a run directory")
    p.add_argument("run_dir")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("sweep", help="run several scenarios concurrently")
    p.add_argument("scenarios", nargs="+")
    p.add_argument("--out", required=True, help="parent directory; one subdirectory per scenario")
    p.add_argument("--workers", type=int, default=4)
    add_numeric(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, ParseError, NotApplicable, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

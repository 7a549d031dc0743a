"""
Command line interface.

Subcommands: generate, run, analyze and validate-schedule. Exit codes are 0
on success, 2 on usage or input errors and 3 on numerical failures.
"""

# Copyright (C) 2026 ifbs developers

import argparse
import glob
import json
import logging
import os
import sys

from .analysis import ReferenceSolution
from .exceptions import ConvergenceError
from .exceptions import NumericalError
from .experiment import analyze_trace
from .experiment import Experiment
from .experiment import parse_schedule
from .experiment import read_config
from .problems import generate_instance
from .problems import read_instance
from .problems import write_instance
from .solvers import SolverTrace
from .solvers import validate


logger = logging.getLogger(__name__)


EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _print_json(data):
    print(json.dumps(data, indent=2, sort_keys=True))


def cmd_generate(args):
    if args.sparsity > args.n:
        raise ValueError("sparsity must be <= n; got sparsity={}, n={}."
                         .format(args.sparsity, args.n))

    instance = generate_instance(args.m, args.n, args.sparsity, args.std,
                                 args.rho, args.seed)
    write_instance(instance, args.out)

    _print_json(instance.digest())


def cmd_run(args):
    config = read_config(args.config)
    if args.output is not None:
        config.output = args.output

    experiment = Experiment.from_config(config, verbose=args.verbose > 0)

    if args.verbose:
        experiment.describe()

    experiment.run()
    experiment.save(config.output)

    _print_json(experiment.comparison())


def cmd_analyze(args):
    instance_path = args.instance or os.path.join(args.trace_dir,
                                                  "instance.bin")
    instance = read_instance(instance_path)
    reference = ReferenceSolution.load(os.path.join(args.trace_dir,
                                                    "reference.npz"))

    if args.labels:
        labels = args.labels
    else:
        paths = sorted(glob.glob(os.path.join(args.trace_dir, "*.csv")))
        labels = [os.path.splitext(os.path.basename(p))[0] for p in paths]

    if not labels:
        raise ValueError("No traces found in {}.".format(args.trace_dir))

    results = {}
    for label in labels:
        base = os.path.join(args.trace_dir, label)

        with open(base + ".json") as f:
            summary = json.load(f)

        trace = SolverTrace.from_csv(base + ".csv", summary)
        if os.path.exists(base + "_snapshots.npz"):
            trace.load_snapshots(base + "_snapshots.npz")

        analysis = analyze_trace(instance, reference, trace,
                                 args.e_threshold, args.window_fraction)
        for message in analysis["messages"]:
            logger.warning("%s: %s", label, message)

        with open(base + "_analysis.json", "w") as f:
            json.dump(analysis, f, indent=2, sort_keys=True)

        results[label] = analysis

    _print_json(results)


def cmd_validate_schedule(args):
    instance = read_instance(args.instance) if args.instance else None

    if args.lipschitz_constant is not None:
        L = args.lipschitz_constant
    elif instance is not None:
        L = instance.lipschitz_constant
    else:
        raise ValueError("validate-schedule requires --lipschitz-constant or "
                         "--instance.")

    schedule = parse_schedule(args.schedule, instance, args.l_e)
    report = validate(schedule, args.horizon, L)

    _print_json(report.to_dict())


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ifbs",
        description="Inertial forward-backward splitting experiments on "
                    "l1-regularized least squares.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="increase verbosity (-v info, -vv debug)")

    subparsers = parser.add_subparsers(dest="command", required=True)

    p = subparsers.add_parser("generate", help="generate a random instance")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sparsity", type=int, required=True)
    p.add_argument("--std", type=float, default=0.1)
    p.add_argument("--rho", type=float, default=1.0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = subparsers.add_parser("run", help="run an experiment configuration")
    p.add_argument("config")
    p.add_argument("--output", default=None,
                   help="output directory, overrides the configuration")
    p.set_defaults(func=cmd_run)

    p = subparsers.add_parser("analyze", help="analyze the traces of a run")
    p.add_argument("trace_dir")
    p.add_argument("--instance", default=None,
                   help="instance file (default: <trace_dir>/instance.bin)")
    p.add_argument("--labels", nargs="*", default=None)
    p.add_argument("--e-threshold", type=float, default=1e-4)
    p.add_argument("--window-fraction", type=float, default=0.5)
    p.set_defaults(func=cmd_analyze)

    p = subparsers.add_parser("validate-schedule",
                              help="check a schedule specification")
    p.add_argument("schedule")
    p.add_argument("--horizon", type=int, default=1000)
    p.add_argument("--lipschitz-constant", type=float, default=None)
    p.add_argument("--instance", default=None)
    p.add_argument("--l-e", type=float, default=None)
    p.set_defaults(func=cmd_validate_schedule)

    return parser


def main(argv=None):
    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose,
                                                      logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(name)s %(levelname)s "
                               "%(message)s")

    try:
        args.func(args)
    except (ConvergenceError, NumericalError) as e:
        logger.error("%s", e)
        return EXIT_NUMERICAL
    except (ValueError, TypeError, OSError) as e:
        logger.error("%s", e)
        return EXIT_USAGE

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

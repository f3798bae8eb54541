#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import argparse
import sys
from typing import List, Optional

import yaml

import boundlur.commands  # noqa: F401 registers the subcommands
from boundlur.commands import EXIT_USAGE
from boundlur.config import Config, get_config
from boundlur.core.logging import logger
from boundlur.core.registry import registry

# command line flag -> config key, per subcommand
FLAG_KEYS = {
    "verify": {"tolerance": "VERIFY.TOLERANCE", "seed": "SEED"},
    "sweep": {
        "a_min": "SWEEP.A_MIN",
        "a_max": "SWEEP.A_MAX",
        "steps": "SWEEP.STEPS",
        "p_noise": "SWEEP.P_NOISE",
        "out": "SWEEP.OUT",
        "workers": "SWEEP.NUM_WORKERS",
    },
    "optimize": {"tol": "OPTIMIZE.TOL"},
    "state": {
        "a": "STATE.A",
        "p_noise": "STATE.P_NOISE",
        "format": "STATE.FORMAT",
        "out": "STATE.OUT",
    },
    "noise": {"a": "NOISE.A"},
}


def _add_opts(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "opts",
        default=None,
        nargs=argparse.REMAINDER,
        help="Modify config options from command line",
    )


def get_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boundlur",
        description="Local uncertainty violation of 3x3 bound entangled "
        "states",
    )
    parser.add_argument(
        "--config",
        type=str,
        default=None,
        help="comma separated list of yaml config files",
    )
    parser.add_argument(
        "--log-file",
        type=str,
        default=None,
        help="also write diagnostics to this file",
    )
    parser.add_argument(
        "--quiet", action="store_true", help="only log warnings and errors"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    verify = subparsers.add_parser("verify", help="run the invariant checks")
    verify.add_argument("--tolerance", type=float, default=None)
    verify.add_argument("--seed", type=int, default=None)
    _add_opts(verify)

    sweep = subparsers.add_parser("sweep", help="violation curve over a")
    sweep.add_argument("--a-min", type=float, default=None)
    sweep.add_argument("--a-max", type=float, default=None)
    sweep.add_argument("--steps", type=int, default=None)
    sweep.add_argument("--p-noise", type=float, default=None)
    sweep.add_argument(
        "--out", type=str, default=None, help="CSV path, '-' for stdout"
    )
    sweep.add_argument("--workers", type=int, default=None)
    _add_opts(sweep)

    optimize = subparsers.add_parser(
        "optimize", help="maximum of the violation over a"
    )
    optimize.add_argument("--tol", type=float, default=None)
    _add_opts(optimize)

    state = subparsers.add_parser("state", help="export a density matrix")
    state.add_argument("--a", type=float, default=None)
    state.add_argument("--p-noise", type=float, default=None)
    state.add_argument("--format", choices=("csv", "json"), default=None)
    state.add_argument("--out", type=str, default=None)
    _add_opts(state)

    noise = subparsers.add_parser(
        "noise", help="noise threshold and flip check"
    )
    noise.add_argument("--a", type=float, default=None)
    _add_opts(noise)

    return parser


def build_config(args: argparse.Namespace) -> Config:
    r"""Defaults, then YAML files, then trailing opts, then flags."""
    opts = list(args.opts or [])
    for flag, key in FLAG_KEYS[args.command].items():
        value = getattr(args, flag)
        if value is not None:
            opts.extend([key, value])
    if args.log_file is not None:
        opts.extend(["LOG_FILE", args.log_file])
    return get_config(args.config, opts)


def main(argv: Optional[List[str]] = None) -> int:
    parser = get_parser()
    args = parser.parse_args(argv)
    logger.set_verbosity(args.quiet)

    try:
        config = build_config(args)
    except (AssertionError, KeyError, ValueError, yaml.YAMLError) as e:
        logger.error("invalid configuration: {}".format(e))
        return EXIT_USAGE
    except OSError as e:
        logger.error("cannot read configuration: {}".format(e))
        return EXIT_USAGE

    if config.LOG_FILE:
        try:
            logger.add_filehandler(config.LOG_FILE)
        except OSError as e:
            logger.error("cannot open log file: {}".format(e))
            return EXIT_USAGE

    try:
        return registry.get_command(args.command)(config)
    except (AssertionError, ValueError) as e:
        # values of keys without a flag are only checked where they are used
        logger.error("invalid configuration: {}".format(e))
        return EXIT_USAGE
    finally:
        logger.close_filehandlers()


if __name__ == "__main__":
    sys.exit(main())

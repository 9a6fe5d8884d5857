#
# SPDX-License-Identifier: Apache-2.0
"""Run the CAPE invariant checks and report pass/fail per check."""
import argparse
import logging
import os
import sys
import textwrap

from cape.cli import options
from cape.core import config as c_config
from cape.core import constants
from cape.core import manager as c_manager
from cape.core import utils

LOG = logging.getLogger()


def _init_extensions():
    from cape.core import extension_loader as ext_loader

    return ext_loader.MANAGER


def _get_profile(config):
    profile = {}
    profile["include"] = set(config.get_option("tests") or [])
    profile["exclude"] = set(config.get_option("skips") or [])
    return profile


def _log_info(args, profile):
    inc = ",".join([t for t in sorted(profile["include"])]) or "None"
    exc = ",".join([t for t in sorted(profile["exclude"])]) or "None"
    LOG.info("profile include checks: %s", inc)
    LOG.info("profile exclude checks: %s", exc)
    LOG.info("cli include checks: %s", args.tests)
    LOG.info("cli exclude checks: %s", args.skips)


def main():
    """cape invariant suite CLI."""
    # bring our logging stuff up as early as possible
    options.init_logger(options.early_log_level())
    extension_mgr = _init_extensions()

    # now do normal startup
    parser = argparse.ArgumentParser(
        prog="cape",
        description="CAPE - invariant checks for continuous augmented "
        "positional embeddings",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "-c",
        "--configfile",
        dest="config_file",
        action="store",
        default=None,
        type=str,
        help="optional config file to use for selecting checks and "
        "overriding defaults",
    )
    parser.add_argument(
        "-t",
        "--tests",
        dest="tests",
        action="store",
        default=None,
        type=str,
        help="comma-separated list of check IDs to run",
    )
    parser.add_argument(
        "-s",
        "--skip",
        dest="skips",
        action="store",
        default=None,
        type=str,
        help="comma-separated list of check IDs to skip",
    )
    parser.add_argument(
        "--filter",
        dest="name_filter",
        action="store",
        default=None,
        type=str,
        help="only run checks with this tag or name; a glob pattern "
        "such as '*shift*' matches names and tags",
    )
    output_format = (
        "screen"
        if (
            sys.stdout.isatty()
            and os.getenv("NO_COLOR") is None
            and os.getenv("TERM") != "dumb"
        )
        else "txt"
    )
    parser.add_argument(
        "-f",
        "--format",
        dest="output_format",
        action="store",
        default=output_format,
        help="specify output format",
        choices=sorted(extension_mgr.formatter_names),
    )
    parser.add_argument(
        "-o",
        "--output",
        dest="output_file",
        action="store",
        nargs="?",
        type=argparse.FileType("w", encoding="utf-8"),
        default=sys.stdout,
        help="write report to filename",
    )
    parser.add_argument(
        "--seed",
        dest="seed",
        action="store",
        default=None,
        help="64-bit seed every check stream derives from (default: "
        f"config seed, then {constants.SEED_ENV}, then 0)",
    )
    parser.add_argument(
        "--self-test-negative",
        dest="negative",
        action="store_true",
        help="inject a sign fault; the suite must then fail",
    )
    options.add_common_arguments(parser)
    parser.set_defaults(negative=False)

    check_info = [
        f"{a[0]}\t{a[1].name}" for a in extension_mgr.checks_by_id.items()
    ]
    check_list = "\n\t".join(sorted(check_info))
    dedent_text = textwrap.dedent(
        """
    Exit status is 0 when every selected check passes, 1 when any check
    fails and 2 on usage or configuration errors.

    The following checks were discovered and loaded:
    ------------------------------------------------
    """
    )
    parser.epilog = dedent_text + f"\t{check_list}"

    # setup work - parse arguments, and initialize CheckManager
    args = parser.parse_args()

    try:
        c_conf = c_config.CapeConfig(config_file=args.config_file)
    except utils.ConfigError as e:
        LOG.error(e)
        sys.exit(constants.EXIT_USAGE)

    # if the log format string was set in the options, reinitialize
    if c_conf.get_option("log_format"):
        log_format = c_conf.get_option("log_format")
        options.init_logger(log_level=logging.DEBUG, log_format=log_format)

    options.apply_log_level(args)

    try:
        profile = _get_profile(c_conf)
        _log_info(args, profile)

        profile["include"].update(args.tests.split(",") if args.tests else [])
        profile["exclude"].update(args.skips.split(",") if args.skips else [])
        extension_mgr.validate_profile(profile)
        seed = utils.resolve_seed(args.seed, c_conf.seed)
    except (utils.CapeError, ValueError) as e:
        LOG.error(e)
        sys.exit(constants.EXIT_USAGE)

    c_mgr = c_manager.CheckManager(
        c_conf,
        seed=seed,
        debug=args.debug,
        quiet=args.quiet,
        profile=profile,
        name_filter=args.name_filter,
        negative=args.negative,
    )

    if args.output_format != "json":
        if args.config_file:
            LOG.info("using config: %s", args.config_file)

        LOG.info(
            "running on Python %d.%d.%d with seed %d",
            sys.version_info.major,
            sys.version_info.minor,
            sys.version_info.micro,
            seed,
        )

    if not c_mgr.c_cs.get_checks():
        LOG.error("No checks would be run, please check the selection.")
        sys.exit(constants.EXIT_USAGE)

    if args.negative:
        LOG.warning("negative self-test: a sign fault is injected")

    # run the selected checks
    c_mgr.run_checks()

    # trigger output of results by CheckManager
    c_mgr.output_results(args.output_file, args.output_format)

    if c_mgr.failures_count() > 0:
        sys.exit(constants.EXIT_FAILURE)
    else:
        sys.exit(constants.EXIT_OK)


if __name__ == "__main__":
    main()

import os
import sys

import yaml

from trisub import Config
from trisub.job import Trace


## EXPORTED METHODS #################################################################


def add_dump_parsers(subparsers):
    # 'trisub dump' can have associated sub-commands which can have different args
    parser_dump = subparsers.add_parser("dump", help="Dump objects to stdout")
    subparsers_dump = parser_dump.add_subparsers(
        title="dump_command", dest="dump_command"
    )
    subparsers_dump.required = True
    _add_dump_trace_parser(subparsers_dump)
    _add_dump_config_parser(subparsers_dump)


def dump(args):
    """Execute the 'trisub dump' commands. """
    if args.dump_command == "trace":
        _dump_trace(args)
    elif args.dump_command == "config":
        _dump_config(args)
    else:
        raise ValueError("unknown dump command {}".format(args.dump_command))


def _config_file(source: str) -> str:
    if os.path.isdir(source):
        return os.path.join(source, "config.yaml")
    return source


### DUMP TRACE ######################################################################


def _add_dump_trace_parser(subparsers_dump):
    parser_dump_trace = subparsers_dump.add_parser(
        "trace",
        help="Dump the trace of a run folder to stdout as CSV (default) or YAML.",
    )
    parser_dump_trace.add_argument(
        "source", help="A run folder or a trace file.", nargs="?", default="."
    )
    parser_dump_trace.add_argument(
        "--event",
        "-e",
        type=str,
        help="Only include entries of this event (e.g., census_completed).",
    )
    parser_dump_trace.add_argument(
        "--job_id", type=str, help="Only include entries of this job."
    )
    parser_dump_trace.add_argument(
        "--keys",
        "-k",
        nargs="*",
        type=str,
        help="Columns to include in the CSV output (default: all).",
    )
    parser_dump_trace.add_argument(
        "--yaml",
        action="store_const",
        const=True,
        default=False,
        help="Dump YAML instead of CSV.",
    )
    parser_dump_trace.add_argument(
        "--no-header",
        action="store_const",
        const=True,
        default=False,
        help="Exclude column names (header) from the CSV file.",
    )


def _dump_trace(args):
    """Execute the 'dump trace' command."""
    tracefile = args.source
    if os.path.isdir(tracefile):
        tracefile = os.path.join(tracefile, "trace.yaml")
    if not os.path.isfile(tracefile):
        raise ValueError("No trace file found at {}".format(os.path.abspath(tracefile)))

    filter_dict = {}
    if args.event:
        filter_dict["event"] = args.event
    if args.job_id:
        filter_dict["job_id"] = args.job_id
    trace = Trace(tracefile)
    if args.yaml:
        for entry in trace.filter(filter_dict):
            print(yaml.dump(entry, width=float("inf"), default_flow_style=True).strip())
        return

    df = trace.to_dataframe(filter_dict)
    if args.keys:
        missing = [key for key in args.keys if key not in df.columns]
        if missing:
            raise KeyError("keys not found in trace: {}".format(", ".join(missing)))
        df = df[args.keys]
    df.to_csv(sys.stdout, index=False, header=not args.no_header)


### DUMP CONFIG ########################################################################


def _add_dump_config_parser(subparsers_dump):
    parser_dump_config = subparsers_dump.add_parser(
        "config", help=("Dump a configuration")
    )
    parser_dump_config.add_argument(
        "source",
        help="A path to either a config file or a run folder.",
        nargs="?",
        default=".",
    )
    parser_dump_config.add_argument(
        "--minimal",
        "-m",
        default=False,
        action="store_const",
        const=True,
        help="Only dump configuration options different from the default "
        "configuration (default)",
    )
    parser_dump_config.add_argument(
        "--raw",
        "-r",
        default=False,
        action="store_const",
        const=True,
        help="Dump the config as is",
    )
    parser_dump_config.add_argument(
        "--full",
        "-f",
        default=False,
        action="store_const",
        const=True,
        help="Add all values from the default configuration before dumping the config",
    )
    parser_dump_config.add_argument(
        "--include",
        "-i",
        type=str,
        nargs="*",
        help="List of keys to include (separated by space). "
        "All subkeys are also included. Cannot be used with --raw.",
    )
    parser_dump_config.add_argument(
        "--exclude",
        "-x",
        type=str,
        nargs="*",
        help="List of keys to exclude (separated by space). "
        "All subkeys are also excluded. Applied after --include. "
        "Cannot be used with --raw.",
    )


def _matches_prefix(key: str, prefixes) -> bool:
    prefix = key
    while True:
        if prefix in prefixes:
            return True
        last_dot_index = prefix.rfind(".")
        if last_dot_index < 0:
            return False
        prefix = prefix[:last_dot_index]


def config_options_to_dump(config: Config, minimal=True, include=None, exclude=None):
    """Flattened options of `config`, optionally only the non-default ones."""
    options = Config.flatten(config.options)
    if minimal:
        default_options = Config.flatten(Config().options)
        options = {
            key: value
            for key, value in options.items()
            if key not in default_options or default_options[key] != value
        }
    if include:
        options = {k: v for k, v in options.items() if _matches_prefix(k, set(include))}
    if exclude:
        options = {
            k: v for k, v in options.items() if not _matches_prefix(k, set(exclude))
        }
    return options


def _dump_config(args):
    """Execute the 'dump config' command."""
    if not (args.raw or args.full or args.minimal):
        args.minimal = True

    if args.raw + args.full + args.minimal != 1:
        raise ValueError("Exactly one of --raw, --full, or --minimal must be set")

    if args.raw and (args.include or args.exclude):
        raise ValueError(
            "--include and --exclude cannot be used with --raw "
            "(use --full or --minimal instead)."
        )

    config_file = _config_file(args.source)
    if args.raw:
        with open(config_file, "r") as f:
            print(f.read(), end="")
        return

    config = Config()
    config.load(config_file)
    options = config_options_to_dump(config, args.minimal, args.include, args.exclude)
    result = Config(load_default=False)
    result.set_all(options, create=True)
    print(yaml.dump(result.options), end="")

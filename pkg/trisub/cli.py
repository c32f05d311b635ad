#!/usr/bin/env python
import argparse
import datetime
import json
import os
import sys
import traceback
from typing import List, Optional

import yaml

from trisub import Config
from trisub.catalog import (
    FamilyId,
    FamilyMatch,
    IsoscelesContinuum,
    TrivialMode,
    classify,
    family_angle_sup,
    family_matches,
    family_tuple,
    trivial_class,
    trivial_solutions,
)
from trisub.census import ScanSettings, census, format_headline, read_census
from trisub.cyclotomic import ceva_difference_mp, ceva_holds_exact
from trisub.exact import (
    CevaTuple,
    format_rational,
    make_tuple,
    parse_angles,
    parse_rational,
)
from trisub.job import Job
from trisub.misc import get_git_revision_short_hash, parse_bool
from trisub.render import embed, render_svg
from trisub.util.dump import add_dump_parsers, dump

#: exit codes
EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INTERNAL = 4

#: subcommands that run a job, with their job type
JOB_COMMANDS = {
    "enumerate-z": "census",
    "recurse": "explore",
    "theorem-check": "theorem_check",
    "oracle": "oracle",
}


def argparse_bool_type(v):
    "Type for argparse that correctly treats Boolean values"
    try:
        return parse_bool(v)
    except ValueError:
        raise argparse.ArgumentTypeError("Boolean value expected.")


def _fmt(values) -> str:
    return ",".join(format_rational(v) for v in values)


def create_parser(config: Config):
    # create parser for config
    parser_conf = argparse.ArgumentParser(add_help=False)
    for key, value in Config.flatten(config.options).items():
        argtype = type(value)
        if argtype == bool:
            argtype = argparse_bool_type
        elif argtype == list:
            argtype = str
        parser_conf.add_argument("--" + key, type=argtype, metavar="VALUE")

    # create main parsers and subparsers
    parser = argparse.ArgumentParser("trisub")
    subparsers = parser.add_subparsers(title="command", dest="command")
    subparsers.required = True

    # pure commands
    p = subparsers.add_parser("verify", help="Exactly check the Ceva condition")
    p.add_argument("--tuple", required=True, help="u,v,w,x,y,z (degrees, p/q)")
    p.add_argument(
        "--oracle",
        action="store_true",
        help="Also print the 50-digit difference of the two sine products",
    )

    p = subparsers.add_parser("trivial", help="List trivial subdivisions")
    p.add_argument("--triangle", required=True, help="a,b,c (degrees, p/q)")
    p.add_argument("--mode", choices=["int", "rat"], default="int")

    p = subparsers.add_parser("families", help="Family subdivisions and bounds")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--triangle", help="List family subdivisions of a,b,c")
    group.add_argument(
        "--bounds", action="store_true", help="Print the family angle bounds"
    )
    group.add_argument("--family", help="Print the member of a family (needs --t)")
    p.add_argument("--t", help="Family parameter (p/q)")

    p = subparsers.add_parser("classify", help="Classify a subdivision")
    p.add_argument("--tuple", required=True, help="u,v,w,x,y,z (degrees, p/q)")

    p = subparsers.add_parser("counts", help="Print the census headline numbers")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--from", dest="source", help="Read a census output folder")

    p = subparsers.add_parser("render", help="Render a subdivision as SVG")
    p.add_argument("--tuple", required=True, help="u,v,w,x,y,z (degrees, p/q)")
    p.add_argument("--out", required=True, help="Output SVG file")
    p.add_argument("--canvas", type=int, default=config.get("render.canvas"))
    p.add_argument("--margin", type=float, default=config.get("render.margin"))
    p.add_argument("--font-size", type=int, default=config.get("render.font_size"))

    # job commands
    p = subparsers.add_parser(
        "enumerate-z", help="Run the Z-degree census", parents=[parser_conf]
    )
    p.add_argument("--threads", type=int, help="Number of worker processes")
    p.add_argument("--out", help="Output folder")

    p = subparsers.add_parser(
        "recurse", help="Explore recursive subdivisions", parents=[parser_conf]
    )
    p.add_argument("--triangle", help="a,b,c (degrees, p/q)")
    p.add_argument("--strategy", choices=["avoid-bisector", "exhaustive"])
    p.add_argument("--max-depth", type=int)
    p.add_argument("--child-model", choices=["cevian", "full", "both"])
    p.add_argument("--out", help="Output folder (default: print tree to stdout)")

    p = subparsers.add_parser(
        "theorem-check",
        help="Check that family triangles reach marginal triangles",
        parents=[parser_conf],
    )
    p.add_argument("--family", help="2a, 2b, 2c or 2d (default: all)")
    p.add_argument("--samples", help="Comma-separated sample values (p/q)")
    p.add_argument(
        "--small-angle", help="Largest smallest-angle of a checked triangle (p/q)"
    )
    p.add_argument("--out", help="Output folder")

    p = subparsers.add_parser(
        "oracle",
        help="Compare the exact check with a high-precision evaluation",
        parents=[parser_conf],
    )
    p.add_argument("--samples", type=int, help="Number of random Z-degree tuples")
    p.add_argument("--out", help="Output folder")

    p = subparsers.add_parser(
        "start", help="Run the job of a configuration file", parents=[parser_conf]
    )
    p.add_argument("config", type=str, nargs="?")
    p.add_argument("--folder", "-f", type=str, help="Output folder to use")

    add_dump_parsers(subparsers)
    return parser


# -- PURE COMMANDS ---------------------------------------------------------------------


def _tuple(s: str) -> CevaTuple:
    return make_tuple(*parse_angles(s, 6))


def _verify(args) -> int:
    t = _tuple(args.tuple)
    holds = ceva_holds_exact(t)
    print("EXACT-TRUE" if holds else "EXACT-FALSE")
    if args.oracle:
        print("difference={}".format(ceva_difference_mp(t)))
    return EXIT_OK if holds else EXIT_FALSE


def _continuum_text(c: IsoscelesContinuum) -> str:
    uvw = [""] * 3
    i = c.free_index
    j = c.sigma[i]
    uvw[i] = "p"
    uvw[j] = "{}-p".format(format_rational(c.upper))
    uvw[3 - i - j] = format_rational(c.fixed)
    xyz = [uvw[s] for s in c.sigma]
    return "trivial-ii p in (0,{}): {}".format(
        format_rational(c.upper), ",".join(uvw + xyz)
    )


def _trivial(args) -> int:
    tri = parse_angles(args.triangle, 3)
    solutions = trivial_solutions(tri, TrivialMode(args.mode))
    for t in solutions.tuples:
        print("{} {}".format(_fmt(t), trivial_class(t).label))
    for c in solutions.continua:
        print(_continuum_text(c))
    return EXIT_OK


def _match_text(m: FamilyMatch) -> str:
    return "{} t={} {}".format(m.label, format_rational(m.t), _fmt(m.subdivision))


def _families(args) -> int:
    if args.bounds:
        for key, bounds in family_angle_sup().items():
            name = bounds.family.label if bounds.family else "all"
            print(
                "{} sup={} ({}) inf={} ({})".format(
                    name,
                    format_rational(bounds.sup.value),
                    "attained" if bounds.sup.attained else "not attained",
                    format_rational(bounds.inf.value),
                    "attained" if bounds.inf.attained else "not attained",
                )
            )
    elif args.family:
        if args.t is None:
            raise ValueError("--family requires --t")
        print(_fmt(family_tuple(FamilyId.parse(args.family), parse_rational(args.t))))
    else:
        for m in family_matches(parse_angles(args.triangle, 3)):
            print(_match_text(m))
    return EXIT_OK


def _classify(args) -> int:
    t = _tuple(args.tuple)
    result = classify(t)
    if isinstance(result, FamilyMatch):
        print("{} t={}".format(result.label, format_rational(result.t)))
    else:
        print(result.label)
    return EXIT_OK


def _counts(args) -> int:
    if args.source:
        counts = read_census(args.source).headline()
    else:
        if args.threads < 1:
            raise ValueError("--threads must be positive")
        counts = census(args.threads, ScanSettings()).headline()
    print(format_headline(counts))
    return EXIT_OK


def _render(args) -> int:
    t = _tuple(args.tuple)
    render_svg(
        embed(t),
        args.out,
        canvas=args.canvas,
        margin=args.margin,
        font_size=args.font_size,
    )
    return EXIT_OK


# -- JOB COMMANDS ----------------------------------------------------------------------


def _apply_command_options(config: Config, args):
    """Translate the short options of job subcommands to configuration keys."""
    command = args.command
    if command in JOB_COMMANDS:
        config.set("job.type", JOB_COMMANDS[command])
    if command == "enumerate-z" and args.threads is not None:
        config.set("job.threads", args.threads)
    elif command == "recurse":
        if args.triangle is not None:
            parse_angles(args.triangle, 3)
            config.set("recursion.triangle", args.triangle)
        if args.strategy is not None:
            config.set("recursion.strategy", args.strategy.replace("-", "_"))
        if args.max_depth is not None:
            config.set("recursion.max_depth", args.max_depth)
        if args.child_model is not None:
            config.set("recursion.child_model", args.child_model)
    elif command == "theorem-check":
        if args.family is not None:
            config.set("theorem_check.family", FamilyId.parse(args.family).value)
        if args.samples is not None:
            config.set("theorem_check.samples", args.samples)
        if args.small_angle is not None:
            config.set("theorem_check.small_angle", args.small_angle)
    elif command == "oracle" and args.samples is not None:
        config.set("oracle.integer_samples", args.samples)


def _default_folder(name: str) -> str:
    return os.path.join(
        "local",
        "experiments",
        datetime.datetime.now().strftime("%Y%m%d-%H%M%S") + "-" + name,
    )


def _run_job(config: Config, args) -> int:
    # overwrite configuration with command line arguments
    keys = set(Config.flatten(config.options).keys())
    for key, value in vars(args).items():
        if key in keys and value is not None:
            config.set(key, value)
    _apply_command_options(config, args)

    if args.command == "start":
        config.folder = args.folder or _default_folder(
            os.path.splitext(os.path.basename(args.config or "trisub"))[0]
        )
    elif args.out:
        config.folder = args.out
    elif args.command == "enumerate-z":
        config.folder = _default_folder("census")
    if config.folder:
        if not config.init_folder():
            config.save(os.path.join(config.folder, "config.yaml"))
    if args.command == "recurse" and not config.folder:
        config.echo = False

    # catch errors to log them
    try:
        if config.folder:
            config.log("Using folder: {}".format(config.folder))
        config.log("Configuration:", echo=False)
        config.log(yaml.dump(config.options), prefix="  ", echo=False)
        config.log(
            "git commit: {}".format(get_git_revision_short_hash()),
            prefix="  ",
            echo=False,
        )
        job = Job.create(config)
        result = job.run()
    except BaseException:
        config.log(traceback.format_exc(), echo=False)
        raise

    job_type = config.get("job.type")
    if job_type == "explore" and not config.folder:
        print(json.dumps(result.to_dict(), indent=1))
    if job_type == "theorem_check":
        return EXIT_OK if all(r.success for r in result) else EXIT_FALSE
    if job_type == "oracle":
        return EXIT_OK if result.success else EXIT_FALSE
    return EXIT_OK


PURE_COMMANDS = {
    "verify": _verify,
    "trivial": _trivial,
    "families": _families,
    "classify": _classify,
    "counts": _counts,
    "render": _render,
}


def main(argv: Optional[List[str]] = None) -> int:
    # default config
    config = Config()

    # now parse the arguments
    parser = create_parser(config)
    args = parser.parse_args(argv)

    try:
        if args.command == "dump":
            dump(args)
            return EXIT_OK
        if args.command in PURE_COMMANDS:
            return PURE_COMMANDS[args.command](args)
        if args.command == "start" and args.config:
            print("Loading configuration {}...".format(args.config))
            config.load(args.config)
        return _run_job(config, args)
    except (ValueError, KeyError) as e:
        print("error: {}".format(_message(e)), file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as e:
        print("error: {}".format(_message(e)), file=sys.stderr)
        return EXIT_RESOURCE
    except AssertionError as e:
        print("error: internal: {}".format(_message(e)), file=sys.stderr)
        return EXIT_INTERNAL


def _message(e: BaseException) -> str:
    # KeyError quotes its message
    text = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
    return " ".join(str(text).split())


if __name__ == "__main__":
    sys.exit(main())

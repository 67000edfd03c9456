"""The `estimate` command: Core-SVP costs for one or all parameter sets."""

import argparse
import json
import sys

from . import params, report


def build_parser():
    parser = argparse.ArgumentParser(
        prog="estimate",
        description="Core-SVP security estimates for the compact-gadget "
                    "signature parameter sets")
    parser.add_argument("--paramset",
                        help="single set to estimate (default: all built-ins)")
    parser.add_argument("--json", action="store_true",
                        help="machine-readable output")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        names = [args.paramset] if args.paramset else None
        if names:
            params.get_row(names[0])      # fail fast on unknown names
        entries = report.report_tables(names)
    except KeyError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    if args.json:
        print(json.dumps(entries, indent=2))
    else:
        print(report.format_table(entries))
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Recompute the two-squares example over GF(5) and diff it against the stored fixture."""

import argparse
import sys

from edgecodes.cli import cmd_reproduce_paper, render_rows


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", default="table", choices=["table", "csv", "json"])
    args = ap.parse_args()
    rows, ok = cmd_reproduce_paper()
    sys.stdout.write(render_rows(rows, ["table", "quantity", "d", "value", "computed", "match"], args.format))
    print("all cells match" if ok else "MISMATCH", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

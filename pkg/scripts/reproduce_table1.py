"""Numeric version of the bounds table for m = 6..30 (CSV on stdout).

    python scripts/reproduce_table1.py [--legacy-table] [--m-range 6..30]
"""
import argparse
import sys

from thetaspan import bounds, io


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-range", default="6..30")
    ap.add_argument("--legacy-table", action="store_true")
    args = ap.parse_args(argv)
    lo, hi = map(int, args.m_range.split(".."))
    rows = [bounds.bounds_record(m, args.legacy_table).row() for m in range(lo, hi + 1)]
    sys.stdout.write(io.to_csv(rows, io.BOUNDS_COLUMNS))


if __name__ == "__main__":
    main()

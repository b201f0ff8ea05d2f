#!/usr/bin/env python3
"""Generic plotter for the CSV/JSON tables the rsl tool emits.

The binaries have no plotting dependency; this stub turns any emitted table
into a quick figure.  Examples:

    rsl count --emin 10 --emax 100 --step 0.1 --out count.csv
    python3 tools/plot.py count.csv --x E --y n_exact n_smooth

    rsl stats --input zeros.csv --kind pair --out pair.csv
    python3 tools/plot.py pair.csv --x x --y r2 reference

With --y omitted, every non-x column is drawn.  Use --steps for staircase
columns and --save to write a file instead of opening a window.
"""

import argparse
import csv
import json
import sys


def load_table(path):
    if path.endswith(".json"):
        with open(path) as f:
            rows = json.load(f)
        if not rows:
            sys.exit(f"{path}: empty table")
        columns = list(rows[0].keys())
        data = {c: [float(r[c]) for r in rows] for c in columns}
        return columns, data
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        columns = reader.fieldnames or []
        rows = list(reader)
    if not columns or not rows:
        sys.exit(f"{path}: empty table")
    data = {c: [float(r[c]) for r in rows] for c in columns}
    return columns, data


def main():
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("table", help="CSV or JSON table written by the rsl tool")
    ap.add_argument("--x", default=None, help="x column (default: first column)")
    ap.add_argument("--y", nargs="*", default=None,
                    help="y columns (default: every other column)")
    ap.add_argument("--steps", action="store_true", help="draw as staircases")
    ap.add_argument("--logy", action="store_true")
    ap.add_argument("--save", default=None, help="write the figure to this file")
    args = ap.parse_args()

    columns, data = load_table(args.table)
    x_col = args.x or columns[0]
    if x_col not in data:
        sys.exit(f"no column '{x_col}' (have: {', '.join(columns)})")
    y_cols = args.y or [c for c in columns if c != x_col]
    missing = [c for c in y_cols if c not in data]
    if missing:
        sys.exit(f"no column '{missing[0]}' (have: {', '.join(columns)})")

    try:
        import matplotlib
        if args.save:
            matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is not installed; install it or point any other "
                 "plotter at the table (plain CSV with a header row)")

    fig, ax = plt.subplots(figsize=(8, 5))
    for c in y_cols:
        if args.steps:
            ax.step(data[x_col], data[c], where="post", label=c)
        else:
            ax.plot(data[x_col], data[c], label=c)
    if args.logy:
        ax.set_yscale("log")
    ax.set_xlabel(x_col)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    if args.save:
        fig.savefig(args.save, dpi=150)
        print(f"wrote {args.save}")
    else:
        plt.show()


if __name__ == "__main__":
    main()

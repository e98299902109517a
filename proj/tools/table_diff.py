#!/usr/bin/env python3
"""Compare two result tables cell by cell.

The '#' metadata preamble is ignored by default (pass --strict to include it),
so tables produced from the same config with different output paths or thread
counts can be checked for equality, and --rtol allows a numeric tolerance when
comparing runs that are expected to agree only statistically.
"""
import argparse
import csv
import math
import sys


def load(path, strict):
    meta, rows = [], []
    with open(path, newline="") as f:
        for line in f:
            if line.startswith("#"):
                meta.append(line.rstrip("\n"))
            else:
                rows.append(line)
    parsed = list(csv.reader(rows))
    return (meta if strict else []), parsed


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("a")
    ap.add_argument("b")
    ap.add_argument("--rtol", type=float, default=0.0,
                    help="relative tolerance for numeric cells (default: exact)")
    ap.add_argument("--strict", action="store_true",
                    help="also require identical metadata preambles")
    args = ap.parse_args()

    meta_a, rows_a = load(args.a, args.strict)
    meta_b, rows_b = load(args.b, args.strict)
    bad = 0
    if meta_a != meta_b:
        print("metadata differs")
        bad += 1
    if len(rows_a) != len(rows_b):
        print(f"row count differs: {len(rows_a)} vs {len(rows_b)}")
        sys.exit(1)
    for i, (ra, rb) in enumerate(zip(rows_a, rows_b)):
        if len(ra) != len(rb):
            print(f"row {i}: width differs")
            bad += 1
            continue
        for j, (ca, cb) in enumerate(zip(ra, rb)):
            if ca == cb:
                continue
            try:
                fa, fb = float(ca), float(cb)
                if math.isclose(fa, fb, rel_tol=args.rtol, abs_tol=0.0):
                    continue
            except ValueError:
                pass
            print(f"row {i} col {j}: {ca!r} != {cb!r}")
            bad += 1
    if bad:
        print(f"{bad} difference(s)")
        sys.exit(1)
    print("tables match")


if __name__ == "__main__":
    main()

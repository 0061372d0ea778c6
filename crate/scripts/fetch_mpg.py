#!/usr/bin/env python3
"""Normalise the 82-vehicle mileage data into the CSV layout the tests expect.

The source table (mpg, sp, wt, hp, vol per vehicle) is distributed at
http://academic.uprm.edu/eacuna/datos.html. Download it by hand, then run

    scripts/fetch_mpg.py path/to/download [--url URL] [-o crates/cli/tests/data/mpg.csv]

Whitespace- or comma-separated input with a header row is accepted; column
names are lower-cased. Passing --url fetches the file first.
"""

import argparse
import csv
import io
import re
import sys
import urllib.request
from pathlib import Path

REQUIRED = ("mpg", "wt", "sp")


def parse(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    split = (lambda ln: next(csv.reader([ln]))) if "," in lines[0] else str.split
    header = [h.strip().strip('"').lower() for h in split(lines[0])]
    rows = [[f.strip().strip('"') for f in split(ln)] for ln in lines[1:]]
    return header, [r for r in rows if len(r) == len(header)]


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("source", nargs="?", help="downloaded data file")
    ap.add_argument("--url", help="fetch the data file from this URL instead")
    default_out = Path(__file__).resolve().parent.parent / "crates/cli/tests/data/mpg.csv"
    ap.add_argument("-o", "--output", type=Path, default=default_out)
    args = ap.parse_args()

    if args.url:
        with urllib.request.urlopen(args.url, timeout=30) as resp:
            text = resp.read().decode("utf-8", "replace")
    elif args.source:
        text = Path(args.source).read_text()
    else:
        ap.error("give a source file or --url")

    header, rows = parse(text)
    missing = [c for c in REQUIRED if c not in header]
    if missing:
        sys.exit(f"missing columns {missing}; found {header}")
    keep = [i for i, h in enumerate(header) if re.fullmatch(r"[a-z]+", h)]
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header[i] for i in keep)
    for r in rows:
        w.writerow(r[i] for i in keep)
    args.output.parent.mkdir(parents=True, exist_ok=True)
    args.output.write_text(out.getvalue())
    print(f"wrote {len(rows)} rows to {args.output}")
    if len(rows) != 82:
        print(f"warning: expected 82 vehicles, got {len(rows)}", file=sys.stderr)


if __name__ == "__main__":
    main()

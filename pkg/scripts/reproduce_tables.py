"""Regenerate instances and print one of the six result tables.

    python3 scripts/reproduce_tables.py 1 --count 40 --csv table1.csv
    python3 scripts/reproduce_tables.py 6 --sizes 25x75,50x150
"""

import argparse
import sys
import time

from mpgsd.bench import TABLE_SIZES, bench, format_table, generated, rows_to_csv, table_tasks


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("table", type=int, choices=range(1, 7))
    ap.add_argument("--count", type=int, default=40, help="instances per size")
    ap.add_argument("--seed", type=int, default=0, help="seed of the first instance of every size")
    ap.add_argument("--sizes", help="comma separated NxM list (default: the full grid)")
    ap.add_argument("--max-nodes", type=int, default=None, help="skip sizes with more nodes")
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--csv", help="also write the rows as CSV")
    args = ap.parse_args(argv)

    sizes = TABLE_SIZES
    if args.sizes:
        sizes = [tuple(int(x) for x in s.split("x")) for s in args.sizes.split(",")]
    if args.max_nodes:
        sizes = [(n, m) for n, m in sizes if n + m <= args.max_nodes]
    kind, tasks = table_tasks(args.table)
    rows = []
    for n, m in sizes:
        t = time.perf_counter()
        instances = generated(n, m, kind, args.count, args.seed)
        new = bench(instances, tasks, workers=args.workers)
        rows.extend(new)
        print(format_table(new), f"\n  ({time.perf_counter() - t:.1f}s incl. generation)", flush=True)
    if args.csv:
        with open(args.csv, "w") as f:
            f.write(rows_to_csv(rows))
    return 0


if __name__ == "__main__":
    sys.exit(main())

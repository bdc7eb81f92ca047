"""Scan small graphs for the edge bound on k-critical, k-AT-critical or AT-irreducible graphs.

Example: python3 scripts/edge_bound_scan.py --mode at-critical -k 5 --n-max 7
"""
import argparse
import json
import time

from atlab import Limits
from atlab.bounds import MODES, scan_edge_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mode", choices=MODES, default="at-critical")
    ap.add_argument("-k", type=int, default=5)
    ap.add_argument("--n-max", type=int, default=7)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--at-critical-vertices", type=int, default=Limits().at_critical_vertices,
                    help="raise the AT-criticality cap (slow beyond 7)")
    ap.add_argument("--jsonl", help="write one record per qualifying graph to this file")
    args = ap.parse_args()

    limits = Limits(at_critical_vertices=args.at_critical_vertices,
                    reduction_vertices=max(args.n_max, Limits().reduction_vertices),
                    enumerate_vertices=max(args.n_max, Limits().enumerate_vertices))
    k = None if args.mode == "irreducible" else args.k
    start = time.perf_counter()
    report = scan_edge_bound(k, args.n_max, args.mode, limits, jobs=args.jobs)
    elapsed = time.perf_counter() - start

    for r in report.records:
        flag = "ok" if r.ok else "VIOLATION"
        print(f"{r.graph6:<12} n={r.n} 2m={2 * r.m:<3} bound={float(r.bound):8.4f} {flag} {r.extra or ''}")
    s = report.summary()
    print(f"examined {s['examined']}, qualifying {s['qualifying']}, excluded {s['excluded']}, "
          f"violations {s['violations']} ({elapsed:.1f}s)")
    if args.jsonl:
        with open(args.jsonl, "w") as fh:
            for r in report.records:
                fh.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")
    raise SystemExit(1 if report.violations else 0)


if __name__ == "__main__":
    main()

"""Audit the sigma bound over Gallai trees T_k and the sigma + tau implication over small graphs."""
import argparse
from fractions import Fraction

from atlab.bounds import alpha, audit_sigma_bound, audit_sigma_tau
from atlab.enumeration import enumerate_gallai_trees, enumerate_graphs


def sigma_bound(n_max, ks):
    for k in ks:
        worst = None
        count = 0
        for T in enumerate_gallai_trees(n_max, k):
            a = audit_sigma_bound(T, k)
            count += 1
            if not a.ok:
                print(f"  FAIL k={k} edges={T.edges}")
            slack = a.sigma - a.required
            if worst is None or slack < worst[0]:
                worst = (slack, T)
        print(f"T_{k}, n <= {n_max}: {count} trees, tightest slack {worst[0]} on {worst[1].edges}")


def sigma_tau(n_max):
    statuses = {}
    for n in range(4, n_max + 1):
        for G in enumerate_graphs(n):
            d = G.min_degree
            if d < 3:
                continue
            top = d + 1 - Fraction(2, d)
            for c in (0, 1, alpha(d + 1), top / 2, top):
                a = audit_sigma_tau(G, d + 1, c)
                statuses[a.status] = statuses.get(a.status, 0) + 1
    for status, count in sorted(statuses.items()):
        print(f"sigma+tau audit, n <= {n_max}: {status}: {count}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--k", type=int, nargs="+", default=[5, 6])
    args = ap.parse_args()
    sigma_bound(args.n_max, args.k)
    sigma_tau(min(args.n_max, 7))


if __name__ == "__main__":
    main()

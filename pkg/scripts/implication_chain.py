"""Check f-AT => online f-choosable => f-choosable on all graphs up to a given order.

Pairs whose reduced list-colouring instance exceeds the palette cap are counted, not checked.
"""
import argparse
import itertools
import time

from atlab import CapExceeded, Limits
from atlab.enumeration import enumerate_graphs
from atlab.games import ChoosabilitySolver, PaintGame
from atlab.orientation import is_f_at


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--palette", type=int, default=Limits().palette)
    args = ap.parse_args()
    game = PaintGame()
    choose = ChoosabilitySolver(Limits(palette=args.palette))
    for n in range(1, args.n_max + 1):
        start = time.perf_counter()
        pairs = at = checked = capped = bad = 0
        for G in enumerate_graphs(n):
            for f in itertools.product(*[range(1, d + 2) for d in G.degrees]):
                pairs += 1
                if is_f_at(G, f) is None:
                    continue
                at += 1
                if not game.wins(G, f):
                    bad += 1
                    print(f"  f-AT but not online: {G.edges} f={f}")
                    continue
                try:
                    ok = choose.is_f_choosable(G, f)
                except CapExceeded:
                    capped += 1
                    continue
                checked += 1
                if not ok:
                    bad += 1
                    print(f"  online but not choosable: {G.edges} f={f}")
        print(f"n={n}: {pairs} pairs, {at} f-AT, {checked} choosability checks, {capped} over the cap, "
              f"{bad} violations ({time.perf_counter() - start:.1f}s)")


if __name__ == "__main__":
    main()

"""Recompute the average-degree column of Table 1 and print it beside the earlier bounds."""
from atlab.bounds import TABLE1_HISTORY, critical_c, g_bound, table1_here_column

COLUMNS = ("Gallai", "Kriv", "KS", "KY", "KS-list")


def main():
    here = table1_here_column()
    print("k".ljust(4) + "".join(c.rjust(10) for c in COLUMNS + ("Here", "exact c")))
    for k, row in TABLE1_HISTORY.items():
        cells = [row[c] or "---" for c in COLUMNS]
        value = str(here[k]) if k in here else "---"
        c = str(critical_c(k)) if k >= 5 else "---"
        print(str(k).ljust(4) + "".join(x.rjust(10) for x in cells + [value, c]))
    print()
    print("exact g_k(1, c_k) for the recomputed rows:")
    for k in here:
        print(f"  k={k:>2}  {g_bound(k, 1, critical_c(k))}")


if __name__ == "__main__":
    main()

"""A small slope distribution table, one row per weight.

Sweeps q = 3 over both type classes for weights up to 40 and prints the
slope multisets, the style of table used to eyeball slope behaviour as
the weight grows.

Run from the repository root:  PYTHONPATH=src python demos/slope_table.py
"""

from drinfeld_hecke import analyze
from drinfeld_hecke.errors import InvalidWeightType, ZeroSpace


def main():
    q = 3
    print(f"q = {q}: slopes of Atkin eigenvalues by weight and type")
    print(f"{'k':>4} {'m':>3} {'n':>3} {'old':>4} {'new':>4}  slopes (slope x mult)")
    for k in range(2, 41):
        for m in (1, 2):
            try:
                rep = analyze(q, k, m)
            except (InvalidWeightType, ZeroSpace):
                continue
            slopes = " ".join(f"{s}x{mult}" for s, mult in rep.slopes.entries)
            if rep.zero_count:
                slopes = f"0x{rep.zero_count} " + slopes
            print(
                f"{k:>4} {rep.params.m:>3} {rep.params.n:>3} "
                f"{rep.dim_old:>4} {rep.dim_new:>4}  {slopes}"
            )


if __name__ == "__main__":
    main()

"""From the Atkin matrix to slopes, step by step.

Shows the characteristic polynomial of U = MD for one space, the points
(i, val_t of the X^i coefficient), the lower convex hull, and the slope
multiset read off the hull segments.

Run from the repository root:  PYTHONPATH=src python demos/newton_polygon_walk.py
"""

from drinfeld_hecke import build_operators, decompose_weight, newton_polygon
from drinfeld_hecke.fppoly import poly_is_zero, poly_to_string, t_valuation
from drinfeld_hecke.hecke import atkin_charpoly


def main():
    q, k, m = 5, 18, 1
    wp = decompose_weight(q, k, m)
    ops = build_operators(wp)
    cp = atkin_charpoly(ops)
    print(f"q={q}, k={k}, m={wp.m}: n = {wp.n}, charpoly of U = MD in X over F_{wp.p}[t]")
    for i, c in enumerate(cp.coeffs):
        tag = "" if not poly_is_zero(c) else "   (zero)"
        print(f"  X^{i}: {poly_to_string(c)}{tag}")

    print("\npoints (i, val_t a_i) feeding the lower hull:")
    for i, c in enumerate(cp.coeffs):
        if not poly_is_zero(c):
            print(f"  ({i}, {t_valuation(c)})")

    sm = newton_polygon(cp)
    print(f"\nzero eigenvalues: {sm.zero_count}")
    for s, mult in sm.entries:
        print(f"  slope {s} with multiplicity {mult}")
    print(f"total accounted: {sm.total()} of n = {wp.n}")


if __name__ == "__main__":
    main()

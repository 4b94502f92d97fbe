"""Walk through one cusp form space end to end.

Builds the operator matrices for q = 3, k = 6, m = 1 (a three dimensional
space with one level-one form), prints them, and runs the full analysis.

Run from the repository root:  PYTHONPATH=src python demos/single_space.py
"""

from drinfeld_hecke import analyze, build_operators, decompose_weight
from drinfeld_hecke.fppoly import poly_to_string
from drinfeld_hecke.hecke import induced_level1_hecke, level_one_kernel
from drinfeld_hecke.ratfn import rf_to_string


def show_matrix(name, pm):
    print(f"{name} =")
    for row in pm.entries:
        print("   [" + ", ".join(poly_to_string(e) for e in row) + "]")


def main():
    q, k, m = 3, 6, 1
    wp = decompose_weight(q, k, m)
    print(f"q={q}, k={k}, type m={wp.m}  ->  j={wp.j}, n={wp.n}, s={wp.s}")
    print(f"exponent symmetry: s_i + s_(n+1-i) = {wp.k} for all i\n")

    ops = build_operators(wp)
    show_matrix("M  (binomial block)", ops.m)
    show_matrix("A  (sign involution)", ops.a)
    show_matrix("D  (diagonal t^s_i)", ops.d)
    show_matrix("F  (Fricke core, true involution is t^(m-k) F)", ops.fricke)
    show_matrix("U = M D  (Atkin)", ops.atkin)
    show_matrix("T = I + M A  (trace)", ops.trace)

    lvl1 = level_one_kernel(ops)
    print(f"\nlevel-one forms inside level t: Ker(MA), dimension {lvl1.dim}")
    lam = induced_level1_hecke(ops)
    print("induced level-one Hecke matrix on Ker(MA):")
    for row in lam:
        print("   [" + ", ".join(rf_to_string(x) for x in row) + "]")

    rep = analyze(q, k, m)
    print(f"\noldforms: {rep.dim_old}   newforms: {rep.dim_new}   total: {rep.params.n}")
    print(f"Hecke operator injective on level one: {rep.tt_injective}")
    print(f"direct sum (determinant criterion):    {rep.direct_sum}")
    print(f"direct sum (dimension crosscheck):     {rep.direct_sum_crosscheck}")
    print(f"direct-sum determinant t-valuation:    {rep.dirsum_det_tvaluation}")
    slopes = ", ".join(f"{s} (x{mult})" for s, mult in rep.slopes.entries)
    print(f"slopes of Atkin eigenvalues: {slopes}; zero eigenvalues: {rep.zero_count}")
    print(f"identity suite all green: {all(v is not False for v in rep.identities.values())}")


if __name__ == "__main__":
    main()

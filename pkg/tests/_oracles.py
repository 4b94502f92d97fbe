"""Independent brute-force oracles for the test suite.

Deliberately naive and separate from the package internals: dict-based
polynomials, Pascal's triangle, Leibniz determinants by permutation
expansion.  Used to freeze expected values and to cross-check the fast
paths on small inputs.
"""

from itertools import permutations


def pascal_binomial(n, k, p):
    """C(n, k) mod p via the additive triangle recurrence."""
    if k < 0 or k > n:
        return 0
    row = [1]
    for _ in range(n):
        row = [1] + [(row[i] + row[i + 1]) % p for i in range(len(row) - 1)] + [1]
    return row[k] % p


def dpoly(items, p):
    return {e: c % p for e, c in items.items() if c % p}


def dadd(a, b, p):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return dpoly(out, p)


def dmul(a, b, p):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return dpoly(out, p)


def dscale(c, a, p):
    return dpoly({e: c * x for e, x in a.items()}, p)


def from_array(arr):
    return {int(i): int(c) for i, c in enumerate(arr) if c}


def to_sorted_items(d):
    return tuple(sorted(d.items()))


def leibniz_det(mat, p):
    """Determinant of a matrix of dict-polys by permutation expansion."""
    n = len(mat)
    det = {}
    for perm in permutations(range(n)):
        sign = 1
        pl = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if pl[i] > pl[j]:
                    sign = -sign
        term = {0: sign % p}
        for i in range(n):
            term = dmul(term, mat[i][perm[i]], p)
        det = dadd(det, term, p)
    return det


def leibniz_charpoly(mat, p):
    """det(X I - mat) for dict-poly entries; coefficients keyed (xdeg, tdeg)."""
    n = len(mat)
    big = [
        [
            {(1, 0): 1} if i == j else {}
            for j in range(n)
        ]
        for i in range(n)
    ]
    for i in range(n):
        for j in range(n):
            for e, c in mat[i][j].items():
                key = (0, e)
                cur = big[i][j].get(key, 0)
                big[i][j][key] = (cur - c) % p
            big[i][j] = {k: v % p for k, v in big[i][j].items() if v % p}
    det = {}
    for perm in permutations(range(n)):
        sign = 1
        pl = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if pl[i] > pl[j]:
                    sign = -sign
        term = {(0, 0): sign % p}
        for i in range(n):
            nxt = {}
            for (x1, t1), c1 in term.items():
                for (x2, t2), c2 in big[i][perm[i]].items():
                    key = (x1 + x2, t1 + t2)
                    nxt[key] = nxt.get(key, 0) + c1 * c2
            term = {k: v % p for k, v in nxt.items() if v % p}
        for k, v in term.items():
            det[k] = det.get(k, 0) + v
    return {k: v % p for k, v in det.items() if v % p}

"""Tiny GF(p^r) implementation for the specialization oracle.

Elements are integers 0 .. p^r - 1 encoding coefficient vectors in base
p against a fixed irreducible polynomial (lexicographically first monic
irreducible of the requested degree).  Small enough that exhaustive
checks are instant; only used by tests.
"""

from functools import lru_cache


def _poly_from_int(x, p, r):
    out = []
    for _ in range(r):
        out.append(x % p)
        x //= p
    return out


def _int_from_poly(cs, p):
    out = 0
    for c in reversed(cs):
        out = out * p + c
    return out


def _polymulmod(a, b, modulus, p):
    prod = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                prod[i + j] = (prod[i + j] + ca * cb) % p
    r = len(modulus) - 1
    for i in range(len(prod) - 1, r - 1, -1):
        c = prod[i]
        if c:
            for j in range(r + 1):
                prod[i - r + j] = (prod[i - r + j] - c * modulus[j]) % p
    return [c % p for c in prod[:r]] + [0] * max(0, r - len(prod))


def _is_irreducible(modulus, p):
    # x^(p^i) mod modulus must differ from x for 0 < i < r and equal it
    # at i = r; complete for prime r, hence for the r <= 3 used here
    r = len(modulus) - 1
    x = [0, 1] + [0] * (r - 2) if r >= 2 else [1]
    cur = list(x)
    for i in range(1, r + 1):
        acc = [1] + [0] * (r - 1)
        e = p
        base = cur
        while e:
            if e & 1:
                acc = _polymulmod(acc, base, modulus, p)
            base = _polymulmod(base, base, modulus, p)
            e >>= 1
        cur = acc
        if i < r and cur == x:
            return False
    return cur == x


@lru_cache(maxsize=None)
class GF:
    """Finite field with p^r elements; elements are ints in [0, p^r)."""

    def __init__(self, p, r):
        self.p = p
        self.r = r
        self.order = p ** r
        if r == 1:
            self.modulus = None
        else:
            for tail in range(p ** r):
                mod = _poly_from_int(tail, p, r) + [1]
                if _is_irreducible(mod, p):
                    self.modulus = mod
                    break
            else:  # pragma: no cover
                raise RuntimeError("no irreducible polynomial found")

    def add(self, a, b):
        pa = _poly_from_int(a, self.p, self.r)
        pb = _poly_from_int(b, self.p, self.r)
        return _int_from_poly([(x + y) % self.p for x, y in zip(pa, pb)], self.p)

    def sub(self, a, b):
        pa = _poly_from_int(a, self.p, self.r)
        pb = _poly_from_int(b, self.p, self.r)
        return _int_from_poly([(x - y) % self.p for x, y in zip(pa, pb)], self.p)

    def mul(self, a, b):
        if self.r == 1:
            return a * b % self.p
        pa = _poly_from_int(a, self.p, self.r)
        pb = _poly_from_int(b, self.p, self.r)
        return _int_from_poly(_polymulmod(pa, pb, self.modulus, self.p), self.p)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError
        return self.pow(a, self.order - 2)

    def pow(self, a, e):
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out


def poly_eval_gf(coeffs, tau, gf: GF):
    """Evaluate an F_p[t] coefficient array at t = tau in GF."""
    acc = 0
    for c in reversed(list(coeffs)):
        acc = gf.add(gf.mul(acc, tau), int(c) % gf.p)
    return acc


def matrix_rank_gf(rows, gf: GF):
    """Rank of a matrix over GF by plain Gaussian elimination."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = gf.inv(mat[row][col])
        mat[row] = [gf.mul(inv, x) for x in mat[row]]
        for r in range(nrows):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [gf.sub(x, gf.mul(f, y)) for x, y in zip(mat[r], mat[row])]
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank

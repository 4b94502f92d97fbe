"""Exact linear algebra over F_p[t] and F_p(t).

Matrices carry dense polynomial entries plus an optional global Laurent
scale t^e, so operators with negative prefactors stay fraction free.
Determinants use Bareiss elimination; characteristic polynomials use the
division-free Samuelson bordered expansion, which avoids the exact
divisions that dominate bivariate elimination and never divides by an
integer (characteristic p safe).  Kernels and subspace arithmetic run
over the fraction field F_p(t) with Gauss-Jordan reduction after
monomial content stripping.

A Subspace is a reduced column echelon basis: pivot rows strictly
increasing, pivot entries 1, pivot rows cleared from the other columns.
The form is canonical, so subspace equality is syntactic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import fppoly as fq
from .errors import DimensionMismatch, NonExactDivision, NotInvariant, NotMonic
from .fppoly import (
    poly,
    poly_add,
    poly_eq,
    poly_exact_div,
    poly_is_zero,
    poly_mul,
    poly_neg,
    poly_one,
    poly_scale,
    poly_shift,
    poly_sub,
    poly_zero,
    t_valuation,
)
from .ratfn import (
    RatFn,
    ratfn_reduce,
    rf_add,
    rf_div,
    rf_eq,
    rf_from_poly,
    rf_is_zero,
    rf_mul,
    rf_one,
    rf_scale_poly,
    rf_sub,
    rf_zero,
)

__all__ = [
    "PolyMatrix",
    "poly_matrix",
    "identity_matrix",
    "monomial_identity",
    "const_matrix",
    "matrix_from_const",
    "mat_add",
    "mat_sub",
    "mat_mul",
    "mat_eq",
    "mat_is_zero",
    "bareiss_det",
    "BivarPoly",
    "bivar",
    "bivar_eq",
    "charpoly",
    "charpoly_graded",
    "charpoly_colscaled",
    "colscaled_to_bivar",
    "det_shift_minus_square",
    "SlopeMultiset",
    "newton_polygon",
    "Subspace",
    "zero_subspace",
    "full_subspace",
    "echelonize",
    "subspace_eq",
    "subspace_dim",
    "subspace_contains",
    "reduce_against",
    "subspace_sum",
    "subspace_intersect",
    "kernel_basis",
    "preimage",
    "matvec",
    "restrict_operator",
    "rank",
]


# ---------------------------------------------------------------------------
# polynomial matrices


@dataclass(frozen=True, eq=False)
class PolyMatrix:
    """Square matrix of F_p[t] entries representing the operator t^scale * entries."""

    n: int
    entries: tuple[tuple[np.ndarray, ...], ...]
    scale: int = 0


def poly_matrix(rows, p: int, scale: int = 0) -> PolyMatrix:
    """Build a PolyMatrix from any nested sequence of coefficient sequences."""
    norm = tuple(
        tuple(r if isinstance(r, np.ndarray) else poly(r, p) for r in row) for row in rows
    )
    n = len(norm)
    if any(len(row) != n for row in norm):
        raise DimensionMismatch("matrix must be square")
    return PolyMatrix(n=n, entries=norm, scale=scale)


def identity_matrix(n: int, p: int) -> PolyMatrix:
    one = poly_one(p)
    zero = poly_zero()
    return PolyMatrix(
        n=n,
        entries=tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)),
    )


def monomial_identity(n: int, exp: int, c: int, p: int) -> PolyMatrix:
    """The scalar matrix c * t^exp * I."""
    diag = fq.monomial(exp, c, p)
    zero = poly_zero()
    return PolyMatrix(
        n=n,
        entries=tuple(tuple(diag if i == j else zero for j in range(n)) for i in range(n)),
    )


def const_matrix(a: PolyMatrix) -> Optional[np.ndarray]:
    """The integer matrix of a degree-zero PolyMatrix, or None if any entry has t."""
    out = np.zeros((a.n, a.n), dtype=np.int64)
    for i, row in enumerate(a.entries):
        for j, e in enumerate(row):
            if len(e) > 1:
                return None
            if len(e):
                out[i, j] = e[0]
    return out


def matrix_from_const(c: np.ndarray, p: int, scale: int = 0) -> PolyMatrix:
    c = np.asarray(c, dtype=np.int64) % p
    return poly_matrix([[[int(v)] for v in row] for row in c], p, scale=scale)


def mat_add(a: PolyMatrix, b: PolyMatrix, p: int) -> PolyMatrix:
    if a.n != b.n or a.scale != b.scale:
        raise DimensionMismatch("matrix addition needs equal shape and scale")
    rows = tuple(
        tuple(poly_add(a.entries[i][j], b.entries[i][j], p) for j in range(a.n))
        for i in range(a.n)
    )
    return PolyMatrix(a.n, rows, a.scale)


def mat_sub(a: PolyMatrix, b: PolyMatrix, p: int) -> PolyMatrix:
    if a.n != b.n or a.scale != b.scale:
        raise DimensionMismatch("matrix subtraction needs equal shape and scale")
    rows = tuple(
        tuple(poly_sub(a.entries[i][j], b.entries[i][j], p) for j in range(a.n))
        for i in range(a.n)
    )
    return PolyMatrix(a.n, rows, a.scale)


def _term_lists(a: PolyMatrix):
    terms = []
    total = 0
    for row in a.entries:
        trow = []
        for e in row:
            nz = np.nonzero(e)[0]
            pairs = [(int(i), int(e[i])) for i in nz]
            total += len(pairs)
            trow.append(pairs)
        terms.append(trow)
    return terms, total


def mat_mul(a: PolyMatrix, b: PolyMatrix, p: int) -> PolyMatrix:
    """Exact matrix product; Laurent scale exponents add.

    Dispatches on entry shape: all-constant factors multiply as integer
    matrices, matrices whose entries are short term lists (monomial or
    binomial entries, the common case here) multiply by exponent
    scattering, everything else falls back to dense convolution.
    """
    if a.n != b.n:
        raise DimensionMismatch("matrix product needs equal dimension")
    n = a.n
    ca, cb = const_matrix(a), const_matrix(b)
    if ca is not None and cb is not None:
        return matrix_from_const((ca @ cb) % p, p, scale=a.scale + b.scale)

    ta, tot_a = _term_lists(a)
    tb, tot_b = _term_lists(b)
    if tot_a <= 2 * n * n and tot_b <= 2 * n * n:
        acc = [[{} for _ in range(n)] for _ in range(n)]
        for i in range(n):
            ta_i = ta[i]
            for c in range(n):
                left = ta_i[c]
                if not left:
                    continue
                tb_c = tb[c]
                for j in range(n):
                    right = tb_c[j]
                    if not right:
                        continue
                    d = acc[i][j]
                    for e1, c1 in left:
                        for e2, c2 in right:
                            key = e1 + e2
                            d[key] = (d.get(key, 0) + c1 * c2) % p
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                d = acc[i][j]
                exps = [e for e, c in d.items() if c]
                if not exps:
                    row.append(poly_zero())
                else:
                    arr = np.zeros(max(exps) + 1, dtype=np.int64)
                    for e, c in d.items():
                        if c:
                            arr[e] = c
                    row.append(arr)
            rows.append(tuple(row))
        return PolyMatrix(n, tuple(rows), a.scale + b.scale)

    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            s = poly_zero()
            for c in range(n):
                if len(a.entries[i][c]) and len(b.entries[c][j]):
                    s = poly_add(s, poly_mul(a.entries[i][c], b.entries[c][j], p), p)
            row.append(s)
        rows.append(tuple(row))
    return PolyMatrix(n, tuple(rows), a.scale + b.scale)


def mat_eq(a: PolyMatrix, b: PolyMatrix) -> bool:
    if a.n != b.n or a.scale != b.scale:
        return False
    return all(
        poly_eq(a.entries[i][j], b.entries[i][j]) for i in range(a.n) for j in range(a.n)
    )


def mat_is_zero(a: PolyMatrix) -> bool:
    return all(poly_is_zero(e) for row in a.entries for e in row)


# ---------------------------------------------------------------------------
# determinant


def bareiss_det(a: PolyMatrix, p: int) -> tuple[np.ndarray, int]:
    """Exact determinant of the entries matrix via fraction-free elimination.

    Returns (det, scale_exponent) where the represented operator has
    determinant t^scale_exponent * det.  Every intermediate division is
    exact; NonExactDivision escalating from here indicates a bug.
    """
    n = a.n
    m = [[e for e in row] for row in a.entries]
    sign = 1
    prev = poly_one(p)
    for k in range(n - 1):
        if poly_is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not poly_is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return poly_zero(), n * a.scale
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = poly_sub(
                    poly_mul(piv, m[i][j], p), poly_mul(m[i][k], m[k][j], p), p
                )
                m[i][j] = poly_exact_div(num, prev, p) if len(prev) > 1 else (
                    poly_scale(fq.fp_inv(int(prev[0]), p), num, p)
                )
            m[i][k] = poly_zero()
        prev = piv
    det = m[n - 1][n - 1]
    if sign < 0:
        det = poly_neg(det, p)
    return det, n * a.scale


# ---------------------------------------------------------------------------
# characteristic polynomials


@dataclass(frozen=True, eq=False)
class BivarPoly:
    """Element of F_p[t][X]: coeffs[i] is the F_p[t] coefficient of X^i."""

    coeffs: tuple[np.ndarray, ...]

    @property
    def xdeg(self) -> int:
        return len(self.coeffs) - 1


def bivar(coeffs: Sequence, p: int) -> BivarPoly:
    cs = [c if isinstance(c, np.ndarray) else poly(c, p) for c in coeffs]
    while cs and poly_is_zero(cs[-1]):
        cs.pop()
    return BivarPoly(tuple(cs))


def bivar_eq(a: BivarPoly, b: BivarPoly) -> bool:
    return len(a.coeffs) == len(b.coeffs) and all(
        poly_eq(x, y) for x, y in zip(a.coeffs, b.coeffs)
    )


def _sb_charpoly(ent: list[list[np.ndarray]], p: int) -> list[np.ndarray]:
    """det(X I - ent) by the Samuelson bordered expansion, division free.

    With P_r the characteristic polynomial of the leading r x r block,
        P_r = (X - a_rr) P_{r-1} - sum_l (R A^l S) floor(P_{r-1} / X^(l+1)),
    where R, S are the border row/column of the r x r block.
    """
    n = len(ent)
    if n == 0:
        return [poly_one(p)]
    P = [poly_neg(ent[0][0], p), poly_one(p)]
    for r in range(2, n + 1):
        rows = r - 1
        v = [ent[b][r - 1] for b in range(rows)]
        hs = []
        for l in range(rows):
            if l > 0:
                nxt = []
                for i in range(rows):
                    s = poly_zero()
                    for b in range(rows):
                        if len(ent[i][b]) and len(v[b]):
                            s = poly_add(s, poly_mul(ent[i][b], v[b], p), p)
                    nxt.append(s)
                v = nxt
            h = poly_zero()
            for b in range(rows):
                if len(ent[r - 1][b]) and len(v[b]):
                    h = poly_add(h, poly_mul(ent[r - 1][b], v[b], p), p)
            hs.append(h)
        newP = [poly_zero() for _ in range(r + 1)]
        for y in range(r):
            newP[y + 1] = P[y]
        diag = ent[r - 1][r - 1]
        if len(diag):
            for y in range(r):
                if len(P[y]):
                    newP[y] = poly_sub(newP[y], poly_mul(diag, P[y], p), p)
        for l, h in enumerate(hs):
            if poly_is_zero(h):
                continue
            for yq in range(r - l - 1):
                src = P[yq + l + 1]
                if len(src):
                    newP[yq] = poly_sub(newP[yq], poly_mul(h, src, p), p)
        P = newP
    return P


def charpoly(a: PolyMatrix, p: int) -> BivarPoly:
    """Monic characteristic polynomial det(X I - a) over F_p[t][X].

    The Laurent scale must be cleared first (similarity does not absorb
    a global t power).  Zero rows and columns split off as X factors
    before the bordered expansion runs on the remaining block.
    """
    if a.scale != 0:
        raise ValueError("charpoly needs scale exponent 0; clear the scale first")
    idx = list(range(a.n))
    xpow = 0
    stripped = True
    while stripped and idx:
        stripped = False
        for r in idx:
            if all(poly_is_zero(a.entries[r][c]) for c in idx) or all(
                poly_is_zero(a.entries[c][r]) for c in idx
            ):
                idx.remove(r)
                xpow += 1
                stripped = True
                break
    sub = [[a.entries[i][j] for j in idx] for i in idx]
    P = _sb_charpoly(sub, p)
    return BivarPoly(tuple([poly_zero()] * xpow + P))


def charpoly_colscaled(cmat: np.ndarray, weights: Sequence[int], p: int) -> list[np.ndarray]:
    """det(Y I - C diag(z^w)) for a constant matrix C over F_p.

    Returns the list of F_p[z] coefficient arrays indexed by Y power.
    The bordered expansion specializes nicely here: the Krylov products
    multiply by monomials only, so the chain needs shifted additions and
    the Y-coefficient updates remain the sole true convolutions.
    """
    C = np.asarray(cmat, dtype=np.int64) % p
    n = C.shape[0]
    w = [int(x) for x in weights]
    if C.shape != (n, n) or len(w) != n:
        raise DimensionMismatch("square constant matrix and one weight per column")
    # zero row/column stripping keeps the monomial-scaled shape
    idx = list(range(n))
    ypow = 0
    stripped = True
    while stripped and idx:
        stripped = False
        for r in idx:
            sub = C[np.ix_(idx, idx)]
            k = idx.index(r)
            if not sub[k, :].any() or not sub[:, k].any():
                idx.remove(r)
                ypow += 1
                stripped = True
                break
    C = C[np.ix_(idx, idx)]
    w = [w[i] for i in idx]
    n = len(idx)
    if n == 0:
        return [np.zeros(0, dtype=np.int64)] * ypow + [np.ones(1, dtype=np.int64)]

    P = [fq.monomial(w[0], -int(C[0, 0]), p), poly_one(p)]
    for r in range(2, n + 1):
        rows = r - 1
        wmax = max(w[:r])
        # Krylov chain on the leading block: v_{l+1} = C diag(z^w) v_l
        vlen = 1
        v = np.zeros((rows, vlen), dtype=np.int64)
        v[:, 0] = C[:rows, r - 1]
        hs = []
        for l in range(rows):
            if l > 0:
                nlen = vlen + wmax
                nxt = np.zeros((rows, nlen), dtype=np.int64)
                for b in range(rows):
                    col = C[:rows, b]
                    if col.any() and v[b].any():
                        nxt[:, w[b] : w[b] + vlen] += np.outer(col, v[b])
                v = nxt % p
                vlen = nlen
            h = np.zeros(vlen + wmax, dtype=np.int64)
            for b in range(rows):
                if C[r - 1, b] and v[b].any():
                    h[w[b] : w[b] + vlen] += C[r - 1, b] * v[b]
            h = fq.poly(h, p)
            hs.append(fq.poly_shift(h, w[r - 1], p))
        newP = [poly_zero() for _ in range(r + 1)]
        for y in range(r):
            newP[y + 1] = P[y]
        c = int(C[r - 1, r - 1]) % p
        if c:
            mono = fq.monomial(w[r - 1], -c, p)
            for y in range(r):
                if len(P[y]):
                    newP[y] = poly_add(newP[y], poly_mul(mono, P[y], p), p)
        for l, h in enumerate(hs):
            if poly_is_zero(h):
                continue
            for yq in range(r - l - 1):
                src = P[yq + l + 1]
                if len(src):
                    newP[yq] = poly_sub(newP[yq], poly_mul(h, src, p), p)
        P = newP
    return [poly_zero()] * ypow + P


def colscaled_to_bivar(
    zcoeffs: Sequence[np.ndarray], alpha: int, beta: int, p: int
) -> BivarPoly:
    """Regrade det(Y I - C diag(z^w)) to det(X I - t^alpha C diag(t^(beta w))).

    Substitutes z = t^beta and X = t^alpha Y, so the X^s coefficient
    picks up the prefactor t^((n - s) alpha).
    """
    n = len(zcoeffs) - 1
    out = []
    for s, arr in enumerate(zcoeffs):
        if poly_is_zero(arr):
            out.append(poly_zero())
            continue
        expanded = np.zeros((len(arr) - 1) * beta + 1 + (n - s) * alpha, dtype=np.int64)
        nz = np.nonzero(arr)[0]
        expanded[nz * beta + (n - s) * alpha] = arr[nz]
        out.append(expanded)
    return BivarPoly(tuple(out))


def _compress_graded(e: np.ndarray, alpha: int, beta: int) -> Optional[np.ndarray]:
    """Write e as t^alpha * f(t^beta) and return f, or None if impossible."""
    if len(e) == 0:
        return e
    nz = np.nonzero(e)[0]
    if nz[0] < alpha or ((nz - alpha) % beta).any():
        return None
    out = np.zeros((len(e) - 1 - alpha) // beta + 1, dtype=np.int64)
    out[(nz - alpha) // beta] = e[nz]
    return out


def charpoly_graded(a: PolyMatrix, alpha: int, beta: int, p: int) -> BivarPoly:
    """charpoly specialized to matrices with entries in t^alpha F_p[t^beta].

    Equivalent to charpoly(a) but computed over z = t^beta after pulling
    the common t^alpha out of every entry, which keeps the intermediate
    degrees a factor beta smaller.  Falls back to the generic routine
    when the grading does not hold (for example after an entry cancels
    down to a constant).
    """
    if a.scale != 0:
        raise ValueError("charpoly needs scale exponent 0; clear the scale first")
    if beta < 1 or alpha < 0:
        raise ValueError("grading needs alpha >= 0 and beta >= 1")
    idx = list(range(a.n))
    xpow = 0
    stripped = True
    while stripped and idx:
        stripped = False
        for r in idx:
            if all(poly_is_zero(a.entries[r][c]) for c in idx) or all(
                poly_is_zero(a.entries[c][r]) for c in idx
            ):
                idx.remove(r)
                xpow += 1
                stripped = True
                break
    block = []
    for i in idx:
        row = []
        for j in idx:
            ze = _compress_graded(a.entries[i][j], alpha, beta)
            if ze is None:
                return charpoly(a, p)
            row.append(ze)
        block.append(row)
    zc = _sb_charpoly(block, p)
    graded = colscaled_to_bivar(zc, alpha, beta, p)
    return BivarPoly(tuple([poly_zero()] * xpow + list(graded.coeffs)))


def det_shift_minus_square(
    cmat: np.ndarray, weights: Sequence[int], shift: int, p: int
) -> np.ndarray:
    """det(z^shift I - (C diag(z^w))^2) over F_p[z], exact and division free.

    Uses det(c^2 I - B^2) = (-1)^n chi_B(c) chi_B(-c) with c = u^shift
    after the substitution z = u^2, then halves the (all even) exponents.
    """
    n = np.asarray(cmat).shape[0]
    chi = charpoly_colscaled(cmat, weights, p)

    def eval_at(sign: int) -> np.ndarray:
        length = 1
        for s, arr in enumerate(chi):
            if len(arr):
                length = max(length, s * shift + 2 * (len(arr) - 1) + 1)
        acc = np.zeros(length, dtype=np.int64)
        for s, arr in enumerate(chi):
            if not len(arr):
                continue
            sgn = pow(sign % p, s, p)
            nz = np.nonzero(arr)[0]
            acc[2 * nz + s * shift] += sgn * arr[nz]
        return acc % p

    prod = np.convolve(eval_at(1), eval_at(-1)) % p
    if n % 2:
        prod = (-prod) % p
    if prod[1::2].any():
        raise AssertionError("odd exponents in an even determinant")
    return fq.poly(prod[0::2], p)


# ---------------------------------------------------------------------------
# Newton polygon


@dataclass(frozen=True, eq=False)
class SlopeMultiset:
    """Nonzero eigenvalue valuations with multiplicities, plus the 0-eigenvalue count."""

    entries: tuple[tuple[Fraction, int], ...]
    zero_count: int

    def total(self) -> int:
        return self.zero_count + sum(m for _, m in self.entries)


def newton_polygon(cp: BivarPoly) -> SlopeMultiset:
    """Slopes of the lower convex hull of (i, val_t coeff of X^i).

    Eigenvalue-zero roots are counted separately: zero_count is the
    X-valuation, and the hull is built over the remaining points.  A
    segment from (i1, v1) to (i2, v2) yields multiplicity i2 - i1 at
    slope (v1 - v2) / (i2 - i1).
    """
    coeffs = cp.coeffs
    deg = len(coeffs) - 1
    if deg < 0 or not poly_eq(coeffs[-1], np.ones(1, dtype=np.int64)):
        raise NotMonic("newton_polygon needs a monic characteristic polynomial")
    nu = next(i for i, c in enumerate(coeffs) if not poly_is_zero(c))
    pts = [(i, int(t_valuation(coeffs[i]))) for i in range(nu, deg + 1) if len(coeffs[i])]
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y1 - y2, x2 - x1), x2 - x1))
    segs.reverse()
    return SlopeMultiset(entries=tuple(segs), zero_count=nu)


# ---------------------------------------------------------------------------
# subspaces over F_p(t)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Reduced column echelon basis of a subspace of F_p(t)^ambient."""

    ambient: int
    basis: tuple[tuple[RatFn, ...], ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def zero_subspace(n: int, p: int) -> Subspace:
    return Subspace(ambient=n, basis=(), pivots=())


def full_subspace(n: int, p: int) -> Subspace:
    one, zero = rf_one(p), rf_zero(p)
    basis = tuple(
        tuple(one if i == j else zero for i in range(n)) for j in range(n)
    )
    return Subspace(ambient=n, basis=basis, pivots=tuple(range(n)))


def _vec_pivot(v: list[RatFn]) -> int:
    for i, x in enumerate(v):
        if not rf_is_zero(x):
            return i
    return -1


def _echelonize_rational(vectors, ambient: int, p: int) -> Subspace:
    """Reduced column echelon via rational Gauss-Jordan (reference path)."""
    basis: list[list[RatFn]] = []
    pivots: list[int] = []
    for vec in vectors:
        v = list(vec)
        if len(v) != ambient:
            raise DimensionMismatch("vector length differs from ambient dimension")
        for b, piv in zip(basis, pivots):
            c = v[piv]
            if not rf_is_zero(c):
                v = [rf_sub(x, rf_mul(c, y, p), p) for x, y in zip(v, b)]
        piv = _vec_pivot(v)
        if piv < 0:
            continue
        inv = v[piv]
        v = [rf_div(x, inv, p) for x in v]
        for i, (b, bp) in enumerate(zip(basis, pivots)):
            c = b[piv]
            if not rf_is_zero(c):
                basis[i] = [rf_sub(x, rf_mul(c, y, p), p) for x, y in zip(b, v)]
        pos = 0
        while pos < len(pivots) and pivots[pos] < piv:
            pos += 1
        basis.insert(pos, v)
        pivots.insert(pos, piv)
    return Subspace(
        ambient=ambient,
        basis=tuple(tuple(v) for v in basis),
        pivots=tuple(pivots),
    )


def _int_rref(mat: np.ndarray, p: int):
    """Reduced row echelon of an integer matrix mod p; returns (rows, pivots)."""
    a = np.array(mat, dtype=np.int64) % p
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = a[r:, c] % p
        nz = np.nonzero(col)[0]
        if len(nz) == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = a[r] * fq.fp_inv(int(a[r, c]), p) % p
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        if len(other):
            a[other] = (a[other] - np.outer(a[other, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a[: len(pivots)], pivots


def _ff_row_update(piv, f, row, pivrow, prev, p: int):
    """(piv row - f pivrow) / prev entrywise, with the divisions batched."""
    nums = []
    maxlen = 0
    for a, b in zip(row, pivrow):
        num = poly_mul(piv, a, p) if len(a) else poly_zero()
        if len(f) and len(b):
            num = poly_sub(num, poly_mul(f, b, p), p)
        nums.append(num)
        maxlen = max(maxlen, len(num))
    if len(prev) == 1:
        if prev[0] == 1:
            return nums
        inv = fq.fp_inv(int(prev[0]), p)
        return [fq.poly_scale(inv, a, p) for a in nums]
    if maxlen == 0:
        return nums
    packed = np.zeros((len(nums), maxlen), dtype=np.int64)
    for i, a in enumerate(nums):
        if len(a):
            packed[i, : len(a)] = a
    quo = fq.poly_exact_div_batch(packed, prev, p)
    return [fq.poly(quo[i], p) for i in range(len(nums))]


def echelonize(vectors, ambient: int, p: int) -> Subspace:
    """Reduced column echelon subspace spanned by the given vectors.

    The canonical form is unique, so the route is a performance choice:
    constant vectors reduce over F_p in one vectorized pass, everything
    else goes through rational Gauss-Jordan.
    """
    vecs = []
    constant = True
    for vec in vectors:
        v = list(vec)
        if len(v) != ambient:
            raise DimensionMismatch("vector length differs from ambient dimension")
        if constant:
            for x in v:
                if len(x.num) > 1 or len(x.den) > 1:
                    constant = False
                    break
        vecs.append(v)
    if not vecs:
        return Subspace(ambient=ambient, basis=(), pivots=())
    if constant:
        mat = np.zeros((len(vecs), ambient), dtype=np.int64)
        for i, v in enumerate(vecs):
            for j, x in enumerate(v):
                if len(x.num):
                    mat[i, j] = x.num[0]
        rref, pivots = _int_rref(mat, p)
        basis = tuple(
            tuple(rf_from_poly(poly([int(x)], p), p) for x in rref[i])
            for i in range(len(pivots))
        )
        return Subspace(ambient=ambient, basis=basis, pivots=tuple(pivots))
    return _echelonize_rational(vecs, ambient, p)


def subspace_eq(u: Subspace, v: Subspace) -> bool:
    if u.ambient != v.ambient or u.pivots != v.pivots:
        return False
    return all(
        rf_eq(x, y) for bu, bv in zip(u.basis, v.basis) for x, y in zip(bu, bv)
    )


def subspace_dim(u: Subspace) -> int:
    return u.dim


def reduce_against(u: Subspace, w, p: int) -> tuple[list[RatFn], list[RatFn]]:
    """Coordinates of w along u's pivots and the residual after reduction."""
    v = list(w)
    if len(v) != u.ambient:
        raise DimensionMismatch("vector length differs from ambient dimension")
    coords = []
    for b, piv in zip(u.basis, u.pivots):
        c = v[piv]
        coords.append(c)
        if not rf_is_zero(c):
            v = [rf_sub(x, rf_mul(c, y, p), p) for x, y in zip(v, b)]
    return coords, v


def subspace_contains(u: Subspace, w, p: int) -> bool:
    _, res = reduce_against(u, w, p)
    return all(rf_is_zero(x) for x in res)


def subspace_sum(u: Subspace, v: Subspace, p: int) -> Subspace:
    if u.ambient != v.ambient:
        raise DimensionMismatch("ambient dimensions differ")
    return echelonize(list(u.basis) + list(v.basis), u.ambient, p)


def _clear_monomial_row_dens(rows: list[list[RatFn]], p: int) -> None:
    """Scale rows by t powers to kill monomial denominators (kernel preserved)."""
    for r, row in enumerate(rows):
        mx = 0
        clean = True
        for x in row:
            d = x.den
            if len(d) == 1:
                continue
            if np.count_nonzero(d) == 1:
                mx = max(mx, len(d) - 1)
            else:
                clean = False
                break
        if clean and mx:
            mono = fq.monomial(mx, 1, p)
            rows[r] = [rf_scale_poly(mono, x, p) for x in row]


def _rf_kernel(rows: list[list[RatFn]], ncols: int, p: int) -> list[list[RatFn]]:
    """Right kernel columns of a rectangular RatFn matrix, by column reduction.

    Pivot choice prefers plain constant entries; the choice only affects
    the raw vectors, which the caller canonicalizes by echelonizing.
    """
    rows = [list(r) for r in rows]
    _clear_monomial_row_dens(rows, p)
    cols = []
    for c in range(ncols):
        a_part = [rows[r][c] for r in range(len(rows))]
        e_part = [rf_one(p) if i == c else rf_zero(p) for i in range(ncols)]
        cols.append((a_part, e_part))
    consumed = [False] * ncols
    for r in range(len(rows)):
        pivot_idx = -1
        for c in range(ncols):
            if consumed[c]:
                continue
            x = cols[c][0][r]
            if rf_is_zero(x):
                continue
            if len(x.num) == 1 and len(x.den) == 1:
                pivot_idx = c
                break
            if pivot_idx < 0:
                pivot_idx = c
        if pivot_idx < 0:
            continue
        a_piv, e_piv = cols[pivot_idx]
        inv = a_piv[r]
        a_piv = [rf_div(x, inv, p) for x in a_piv]
        e_piv = [rf_div(x, inv, p) for x in e_piv]
        cols[pivot_idx] = (a_piv, e_piv)
        consumed[pivot_idx] = True
        for c in range(ncols):
            if c == pivot_idx or consumed[c]:
                continue
            f = cols[c][0][r]
            if rf_is_zero(f):
                continue
            a_c = [rf_sub(x, rf_mul(f, y, p), p) for x, y in zip(cols[c][0], a_piv)]
            e_c = [rf_sub(x, rf_mul(f, y, p), p) for x, y in zip(cols[c][1], e_piv)]
            cols[c] = (a_c, e_c)
    out = []
    for c in range(ncols):
        if not consumed[c]:
            out.append(cols[c][1])
    return out


def _int_kernel(c: np.ndarray, p: int) -> list[np.ndarray]:
    """Right kernel columns over F_p of an integer matrix, by column reduction."""
    a = np.array(c, dtype=np.int64) % p
    nrows, ncols = a.shape
    e = np.eye(ncols, dtype=np.int64)
    consumed = np.zeros(ncols, dtype=bool)
    for r in range(nrows):
        live = np.nonzero(~consumed & (a[r] != 0))[0]
        if len(live) == 0:
            continue
        pc = int(live[0])
        inv = fq.fp_inv(int(a[r, pc]), p)
        a[:, pc] = a[:, pc] * inv % p
        e[:, pc] = e[:, pc] * inv % p
        rest = live[1:]
        if len(rest):
            f = a[r, rest] % p
            a[:, rest] = (a[:, rest] - np.outer(a[:, pc], f)) % p
            e[:, rest] = (e[:, rest] - np.outer(e[:, pc], f)) % p
        consumed[pc] = True
    return [e[:, j] for j in range(ncols) if not consumed[j]]


def _strip_matrix(a: PolyMatrix, p: int, strip_rows: bool = True):
    """Monomial content stripping: rows freely, columns with compensation.

    Returns (stripped polynomial rows, per-column exponents u) so that
    Ker(a) = diag(t^-u) Ker(stripped).  Row stripping must be skipped
    when the rows will be augmented with further columns, since scaling
    a partial row would corrupt those equations.
    """
    n = a.n
    rows = [list(r) for r in a.entries]
    if strip_rows:
        for i in range(n):
            vals = [t_valuation(e) for e in rows[i] if len(e)]
            if not vals:
                continue
            v = int(min(vals))
            if v > 0:
                rows[i] = [e[v:] if len(e) else e for e in rows[i]]
    col_exp = [0] * n
    for j in range(n):
        vals = [t_valuation(rows[i][j]) for i in range(n) if len(rows[i][j])]
        if not vals:
            continue
        v = int(min(vals))
        if v > 0:
            col_exp[j] = v
            for i in range(n):
                e = rows[i][j]
                if len(e):
                    rows[i][j] = e[v:]
    return rows, col_exp


def _compensate(vecs, col_exp, p: int):
    if not any(col_exp):
        return vecs
    out = []
    for v in vecs:
        out.append(
            [
                ratfn_reduce(x.num, poly_shift(x.den, col_exp[i], p), p)
                if col_exp[i] and not rf_is_zero(x)
                else x
                for i, x in enumerate(v)
            ]
        )
    return out


def kernel_basis(a: PolyMatrix, p: int) -> Subspace:
    """Reduced column echelon basis of the right kernel over F_p(t).

    The Laurent scale is a unit and never changes the kernel.  After
    content stripping a constant matrix solves over F_p directly.
    """
    rows, col_exp = _strip_matrix(a, p)
    if all(len(e) <= 1 for row in rows for e in row):
        ci = np.zeros((a.n, a.n), dtype=np.int64)
        for i, row in enumerate(rows):
            for j, e in enumerate(row):
                if len(e):
                    ci[i, j] = e[0]
        raw = [
            [rf_from_poly(poly([int(x)], p), p) for x in v] for v in _int_kernel(ci, p)
        ]
    else:
        rf_rows = [[rf_from_poly(e, p) for e in row] for row in rows]
        raw = _rf_kernel(rf_rows, a.n, p)
    raw = _compensate(raw, col_exp, p)
    return echelonize(raw, a.n, p)


def rank(a: PolyMatrix, p: int) -> int:
    return a.n - kernel_basis(a, p).dim


def poly_rows_rank(rows: list[list[np.ndarray]], p: int) -> int:
    """Rank of a rectangular polynomial matrix by fraction-free elimination."""
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    prev = poly_one(p)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if len(work[i][c]):
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            work[r], work[pr] = work[pr], work[r]
        piv = work[r][c]
        for i in range(r + 1, nrows):
            work[i] = _ff_row_update(piv, work[i][c], work[i], work[r], prev, p)
        prev = piv
        r += 1
    return r


def _cleared_vectors(vectors, p: int) -> list[list[RatFn]]:
    """Vectors scaled by denominator lcms; the span is unchanged."""
    cols = []
    for b in vectors:
        lcm = poly_one(p)
        for x in b:
            if len(x.den) > 1:
                g = fq.poly_gcd(lcm, x.den, p)
                lcm = poly_mul(lcm, poly_exact_div(x.den, g, p), p)
        if len(lcm) > 1:
            cols.append([rf_scale_poly(lcm, x, p) for x in b])
        else:
            cols.append(list(b))
    return cols


def _cleared_columns(s: Subspace, p: int) -> list[list[RatFn]]:
    """Basis columns scaled to kill denominators; spans are unchanged."""
    return _cleared_vectors(s.basis, p)


def preimage(a: PolyMatrix, s: Subspace, p: int) -> Subspace:
    """The subspace {x : a x lies in s} over F_p(t).

    The target columns enter only through their span, so their
    denominators are cleared first to keep the elimination polynomial.
    """
    if a.n != s.ambient:
        raise DimensionMismatch("ambient dimensions differ")
    if s.dim == 0:
        return kernel_basis(a, p)
    rows, col_exp = _strip_matrix(a, p, strip_rows=False)
    n = a.n
    scols = _cleared_columns(s, p)
    rf_rows = [
        [rf_from_poly(e, p) for e in rows[r]] + [scols[c][r] for c in range(s.dim)]
        for r in range(n)
    ]
    raw = _rf_kernel(rf_rows, n + s.dim, p)
    vecs = _compensate([v[:n] for v in raw], col_exp, p)
    return echelonize(vecs, n, p)


def subspace_intersect(u: Subspace, v: Subspace, p: int) -> Subspace:
    """Echelon basis of the intersection, by the stacked-bases kernel method.

    Both bases are denominator-cleared first; column scalings change the
    kernel coordinates but not the span they cut out.
    """
    if u.ambient != v.ambient:
        raise DimensionMismatch("ambient dimensions differ")
    if u.dim == 0 or v.dim == 0:
        return zero_subspace(u.ambient, p)
    ucols = _cleared_columns(u, p)
    vcols = _cleared_columns(v, p)
    rows = []
    for r in range(u.ambient):
        rows.append([c[r] for c in ucols] + [c[r] for c in vcols])
    raw = _rf_kernel(rows, u.dim + v.dim, p)
    vecs = []
    for kv in raw:
        x = kv[: u.dim]
        vec = [rf_zero(p) for _ in range(u.ambient)]
        for c, coef in enumerate(x):
            if rf_is_zero(coef):
                continue
            vec = [rf_add(t, rf_mul(coef, bc, p), p) for t, bc in zip(vec, ucols[c])]
        vecs.append(vec)
    return echelonize(vecs, u.ambient, p)


def matvec(a: PolyMatrix, v, p: int) -> list[RatFn]:
    """Apply the represented operator t^scale * entries to a RatFn vector."""
    if len(v) != a.n:
        raise DimensionMismatch("vector length differs from matrix dimension")
    out = []
    for i in range(a.n):
        s = rf_zero(p)
        for j in range(a.n):
            e = a.entries[i][j]
            if len(e) and not rf_is_zero(v[j]):
                s = rf_add(s, rf_scale_poly(e, v[j], p), p)
        out.append(s)
    if a.scale:
        if a.scale > 0:
            mono = fq.monomial(a.scale, 1, p)
            out = [rf_scale_poly(mono, x, p) for x in out]
        else:
            den = fq.monomial(-a.scale, 1, p)
            out = [
                ratfn_reduce(x.num, poly_mul(x.den, den, p), p) if not rf_is_zero(x) else x
                for x in out
            ]
    return out


def restrict_operator(a: PolyMatrix, u: Subspace, p: int) -> list[list[RatFn]]:
    """Matrix of a restricted to the invariant subspace u, in u's echelon basis.

    Raises NotInvariant if some image falls outside u.
    """
    if a.n != u.ambient:
        raise DimensionMismatch("ambient dimensions differ")
    cols = []
    for b in u.basis:
        img = matvec(a, b, p)
        coords, res = reduce_against(u, img, p)
        if any(not rf_is_zero(x) for x in res):
            raise NotInvariant("operator image leaves the subspace")
        cols.append(coords)
    return [[cols[j][i] for j in range(u.dim)] for i in range(u.dim)]

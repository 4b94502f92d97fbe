"""Old/new decomposition, theorem verdicts, slopes and the identity suite.

The decomposition follows the kernel descriptions of the degeneracy and
trace maps: level-one forms sit inside the level-t space as Ker(MA),
oldforms are Ker(MA) + F Ker(MA), and newforms are Ker(T) intersected
with Ker(F + MD).

Two theorems are machine checked on every parameter set:

  * injectivity of the level-one Hecke operator, via the kernel
    criterion Ker(MA) meet Ker((MD)^2), cross-checked against the
    kernel of the induced matrix on Ker(MA);
  * the direct sum criterion, det(t^k I - (F + MD)^2) != 0, cross-checked
    against the dimension count dim old + dim new = n with trivial
    intersection.

Verdict disagreements are reportable data (a counterexample hunt), not
crashes; agreement failures between provably equivalent criteria raise
CrosscheckMismatch because they can only mean a bug.

Internally all subspace work runs in the compressed variable z = t^{q-1}
(every exponent in sight is j+1 plus a multiple of q-1, and the extra
t^{j+1} is a unit scalar), which divides every polynomial degree by
q - 1.  Kernels, dimensions, echelon forms and homogeneous identities
transfer verbatim; results are re-expanded to t at the boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import fppoly as fq
from .errors import CrosscheckMismatch, DeltaNotInjective, NotInvariant
from .fppoly import poly_is_zero, poly_one, poly_zero, t_valuation
from .hecke import (
    OperatorBundle,
    OperatorSet,
    WeightParams,
    atkin_charpoly,
    build_operators,
    compressed_bundle,
    decompose_weight,
    dirsum_matrix_determinant,
)
from .linalg import (
    BivarPoly,
    PolyMatrix,
    SlopeMultiset,
    Subspace,
    bivar_eq,
    charpoly,
    echelonize,
    kernel_basis,
    mat_add,
    mat_eq,
    mat_is_zero,
    mat_mul,
    matvec,
    monomial_identity,
    newton_polygon,
    poly_matrix,
    reduce_against,
    subspace_eq,
    subspace_intersect,
    subspace_sum,
)
from .linalg import _cleared_vectors, _rf_kernel
from .ratfn import RatFn, rf_eq, rf_is_zero, rf_mul, rf_add, rf_scale_poly, rf_zero

__all__ = [
    "SpaceDecomposition",
    "SlopeTable",
    "AnalysisReport",
    "compute_decomposition",
    "check_tt_injective",
    "check_direct_sum",
    "compute_slopes",
    "run_identity_suite",
    "analyze",
    "IDENTITY_NAMES",
]


@dataclass(frozen=True, eq=False)
class SpaceDecomposition:
    dim_total: int
    dim_level1: int
    oldspace: Subspace
    newspace: Subspace
    dims_add_up: bool
    intersection_trivial: bool


@dataclass(frozen=True, eq=False)
class SlopeTable:
    params: WeightParams
    slopes: SlopeMultiset
    old_zero_count: int


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    params: WeightParams
    dim_level1: int
    dim_old: int
    dim_new: int
    dims_add_up: bool
    intersection_trivial: bool
    tt_injective: bool
    tt_injective_crosscheck: bool
    direct_sum: bool
    direct_sum_crosscheck: bool
    dirsum_det_tvaluation: Optional[int]
    identities: dict
    slopes: SlopeMultiset

    @property
    def zero_count(self) -> int:
        return self.slopes.zero_count

    @property
    def theorem_violation(self) -> bool:
        """True when a proven statement fails: criteria disagreement at any
        dimension, a failed verdict in the proven dim <= 1 range, or any
        failed identity."""
        if self.direct_sum != self.direct_sum_crosscheck:
            return True
        if self.tt_injective != self.tt_injective_crosscheck:
            return True
        if self.dim_level1 <= 1 and not (self.tt_injective and self.direct_sum):
            return True
        return any(v is False for v in self.identities.values())


# ---------------------------------------------------------------------------
# z-picture expansion back to t


def _expand_poly(arr: np.ndarray, beta: int, shift: int = 0) -> np.ndarray:
    """f(z) -> t^shift f(t^beta)."""
    if poly_is_zero(arr):
        return arr
    out = np.zeros((len(arr) - 1) * beta + shift + 1, dtype=np.int64)
    nz = np.nonzero(arr)[0]
    out[nz * beta + shift] = arr[nz]
    return out


def _rf_expand(x: RatFn, beta: int, p: int) -> RatFn:
    if beta == 1:
        return x
    # the substitution z -> t^beta preserves reducedness and monic denominators
    return RatFn(_expand_poly(x.num, beta), _expand_poly(x.den, beta))


def _subspace_expand(sub: Subspace, beta: int, p: int) -> Subspace:
    if beta == 1:
        return sub
    return Subspace(
        ambient=sub.ambient,
        basis=tuple(tuple(_rf_expand(x, beta, p) for x in b) for b in sub.basis),
        pivots=sub.pivots,
    )


# ---------------------------------------------------------------------------
# cached per-operator-set z data


@dataclass(frozen=True, eq=False)
class _ZData:
    """Per-operator-set computations in the z picture, canonical forms deferred.

    raw_old and raw_new are spanning vectors (independent by construction)
    of the old and new spaces; canonical echelon bases are materialized
    only by compute_decomposition, which the identity suite does not need.
    """

    bundle: OperatorBundle
    lvl1: Subspace
    fricke_lvl1: Subspace
    raw_old: tuple
    raw_new: tuple
    dim_old: int
    dims_add_up: bool
    inter_dim: int
    induced: Optional[PolyMatrix]


@lru_cache(maxsize=8)
def _zdata(ops: OperatorSet) -> _ZData:
    from .linalg import const_matrix, matrix_from_const, poly_rows_rank

    wp = ops.wp
    p, n = wp.p, wp.n
    zb = compressed_bundle(ops)
    ma_int = (const_matrix(ops.m) @ const_matrix(ops.a)) % p
    lvl1 = kernel_basis(matrix_from_const(ma_int, p), p)
    fk_vecs = [matvec(zb.fricke, b, p) for b in lvl1.basis]
    fricke_lvl1 = echelonize(fk_vecs, n, p)
    raw_old = tuple(list(lvl1.basis) + fk_vecs)
    dim_old = (
        lvl1.dim
        + fricke_lvl1.dim
        - subspace_intersect(lvl1, fricke_lvl1, p).dim
    )
    if dim_old < 2 * lvl1.dim:
        raise DeltaNotInjective(
            f"oldform dimension {dim_old} < 2 * {lvl1.dim}; degeneracy pair not injective"
        )
    # newforms: vanish under the trace and the twisted trace core, read
    # off one stacked kernel (same subspace as intersecting the kernels)
    from .ratfn import rf_from_poly

    stacked = [
        [rf_from_poly(zb.trace.entries[r][c], p) for c in range(n)] for r in range(n)
    ] + [[rf_from_poly(zb.core.entries[r][c], p) for c in range(n)] for r in range(n)]
    raw_new = tuple(tuple(v) for v in _rf_kernel(stacked, n, p))
    inter_dim = _dim_span_meet_kernels(raw_old, [zb.trace, zb.core], p)
    induced = None
    if lvl1.dim:
        cols = []
        for b in lvl1.basis:
            img = matvec(zb.core, b, p)
            coords, res = reduce_against(lvl1, img, p)
            if any(not rf_is_zero(x) for x in res):
                raise NotInvariant("(F + MD) Ker(MA) is not contained in Ker(MA)")
            cols.append(coords)
        rows = []
        for r in range(lvl1.dim):
            row = []
            for c in range(lvl1.dim):
                x = cols[c][r]
                if not fq.poly_eq(x.den, poly_one(p)):  # pragma: no cover
                    raise CrosscheckMismatch("induced matrix has a denominator")
                row.append(x.num)
            rows.append(row)
        induced = poly_matrix(rows, p)
    return _ZData(
        bundle=zb,
        lvl1=lvl1,
        fricke_lvl1=fricke_lvl1,
        raw_old=raw_old,
        raw_new=raw_new,
        dim_old=dim_old,
        dims_add_up=(dim_old + len(raw_new) == n),
        inter_dim=inter_dim,
        induced=induced,
    )


def _dim_span_meet_kernels(gens, mats, p: int) -> int:
    """dim(span(gens) meet Ker(mats[0]) meet ...) for independent gens.

    Works in generator coordinates: the stacked images of the generators
    under every matrix cut out exactly the coordinates of the meet, so
    the dimension is #gens minus the rank of the stacked image matrix;
    fraction-free elimination keeps the rank computation polynomial.
    """
    from .linalg import poly_rows_rank

    if not gens:
        return 0
    rows = []
    polynomial = True
    for mat in mats:
        images = [matvec(mat, g, p) for g in gens]
        for r in range(mat.n):
            row = [images[c][r] for c in range(len(gens))]
            if polynomial and any(
                not fq.poly_eq(x.den, poly_one(p)) for x in row if not rf_is_zero(x)
            ):
                polynomial = False
            rows.append(row)
    if polynomial:
        prows = [[x.num for x in row] for row in rows]
        return len(gens) - poly_rows_rank(prows, p)
    return len(_rf_kernel(rows, len(gens), p))  # pragma: no cover - fallback


def compute_decomposition(ops: OperatorSet) -> SpaceDecomposition:
    """Split the space: oldforms Ker(MA) + F Ker(MA), newforms Ker(T) meet Ker(F+MD).

    The old/new intersection dimension is computed on the raw oldform
    generators against the two kernel conditions cutting out newforms,
    which avoids eliminations over the echelonized rational bases.
    """
    wp = ops.wp
    p = wp.p
    zd = _zdata(ops)
    beta = wp.beta
    old = echelonize(list(zd.raw_old), wp.n, p)
    new = echelonize(list(zd.raw_new), wp.n, p)
    return SpaceDecomposition(
        dim_total=wp.n,
        dim_level1=zd.lvl1.dim,
        oldspace=_subspace_expand(old, beta, p),
        newspace=_subspace_expand(new, beta, p),
        dims_add_up=zd.dims_add_up,
        intersection_trivial=(zd.inter_dim == 0),
    )


def _tt_injective_full(ops: OperatorSet):
    """Both kernel criteria in Ker(MA) coordinates.

    Ker(MA) meet Ker((MD)^2) is the kernel of the stacked images of the
    level-one basis under (MD)^2; the independent route goes through the
    kernel of the induced matrix.  Their equality is the content of the
    Hecke kernel criterion and is asserted, not assumed.
    """
    wp = ops.wp
    p = wp.p
    zd = _zdata(ops)
    zb = zd.bundle
    if zd.lvl1.dim == 0:
        return True, True, None
    u2_images = [
        matvec(zb.atkin, matvec(zb.atkin, b, p), p) for b in zd.lvl1.basis
    ]
    rows = [[u2_images[c][r] for c in range(zd.lvl1.dim)] for r in range(wp.n)]
    coords_sq = echelonize(_rf_kernel(rows, zd.lvl1.dim, p), zd.lvl1.dim, p)
    verdict = coords_sq.dim == 0
    witness = None
    if not verdict:
        amb = _map_through(zd.lvl1, coords_sq.basis, p)
        witness = tuple(_rf_expand(x, wp.beta, p) for x in amb.basis[0])

    coords_ind = kernel_basis(zd.induced, p)
    crosscheck = coords_ind.dim == 0
    if not subspace_eq(coords_sq, coords_ind):
        raise CrosscheckMismatch(
            "Ker(MA) meet Ker((MD)^2) differs from Ker(MA) meet Ker(F+MD)"
        )
    return verdict, crosscheck, witness


def _map_through(base: Subspace, wvecs, p: int) -> Subspace:
    """Push vectors of coordinates in base's basis down to the ambient space."""
    out = []
    for w in wvecs:
        vec = [rf_zero(p)] * base.ambient
        for c, coef in enumerate(w):
            if rf_is_zero(coef):
                continue
            vec = [rf_add(x, rf_mul(coef, y, p), p) for x, y in zip(vec, base.basis[c])]
        out.append(vec)
    return echelonize(out, base.ambient, p)


def check_tt_injective(ops: OperatorSet):
    """Injectivity of the level-one Hecke operator; (verdict, witness).

    verdict is [Ker(MA) meet Ker((MD)^2) = 0]; the twisted-trace kernel
    criterion is recomputed independently through the induced matrix and
    must agree, else CrosscheckMismatch.  witness is a nonzero kernel
    vector on failure.
    """
    verdict, _, witness = _tt_injective_full(ops)
    return verdict, witness


def check_direct_sum(ops: OperatorSet, dec: SpaceDecomposition):
    """Direct sum verdicts: (determinant criterion, dimension crosscheck).

    The two must agree by the criterion theorem; a disagreement is a
    reportable counterexample, recorded by the caller rather than raised.
    """
    det = dirsum_matrix_determinant(ops)
    verdict = not poly_is_zero(det)
    crosscheck = dec.dims_add_up and dec.intersection_trivial
    return verdict, crosscheck


def _square_is_scalar_on(mat: PolyMatrix, kexp: int, vectors, p: int) -> bool:
    """mat^2 v = z^kexp v for the given vectors (denominators cleared first)."""
    zk = fq.monomial(kexp, 1, p)
    for v in vectors:
        uv = matvec(mat, matvec(mat, v, p), p)
        want = [rf_scale_poly(zk, x, p) for x in v]
        if not all(rf_eq(x, y) for x, y in zip(uv, want)):
            return False
    return True


def compute_slopes(ops: OperatorSet, dec: Optional[SpaceDecomposition] = None) -> SlopeTable:
    """t-adic slopes of the Atkin matrix from the Newton polygon of its charpoly.

    Sanity assertions: eigenvalue 0 has multiplicity at least dim_level1
    (the Fricke image of level one dies under U), and the newspace block
    squares to the scalar t^k, which pins new eigenvalue slopes at k/2.
    """
    zd = _zdata(ops)
    d1 = dec.dim_level1 if dec is not None else zd.lvl1.dim
    cp = atkin_charpoly(ops)
    slopes = newton_polygon(cp)
    if slopes.zero_count < d1:
        raise CrosscheckMismatch(
            f"zero eigenvalue multiplicity {slopes.zero_count} < dim_level1 {d1}"
        )
    if zd.raw_new and not _square_is_scalar_on(
        zd.bundle.atkin,
        zd.bundle.kexp,
        _cleared_vectors(zd.raw_new, ops.wp.p),
        ops.wp.p,
    ):
        raise CrosscheckMismatch("(MD)^2 is not the scalar t^k on the newspace")
    return SlopeTable(params=ops.wp, slopes=slopes, old_zero_count=d1)


def _solve_in_basis(bcols, targets, ambient: int, p: int):
    """Solve B x = w for every target w; raises if B is dependent or w escapes.

    Plain row reduction on the augmented matrix; B columns stay on the
    left so the recorded pivot rows read coordinates off directly.
    """
    from .ratfn import rf_div, rf_sub

    nb = len(bcols)
    nt = len(targets)
    aug = [
        [col[r] for col in bcols] + [tgt[r] for tgt in targets] for r in range(ambient)
    ]
    used = [False] * ambient
    pivot_row = [-1] * nb
    for col in range(nb):
        pr = -1
        for r in range(ambient):
            if not used[r] and not rf_is_zero(aug[r][col]):
                pr = r
                break
        if pr < 0:
            raise DeltaNotInjective("oldform basis columns are linearly dependent")
        used[pr] = True
        pivot_row[col] = pr
        inv = aug[pr][col]
        aug[pr] = [rf_div(x, inv, p) for x in aug[pr]]
        for r in range(ambient):
            if r == pr:
                continue
            f = aug[r][col]
            if rf_is_zero(f):
                continue
            aug[r] = [rf_sub(x, rf_mul(f, y, p), p) for x, y in zip(aug[r], aug[pr])]
    for r in range(ambient):
        if used[r]:
            continue
        for tix in range(nt):
            if not rf_is_zero(aug[r][nb + tix]):
                raise NotInvariant("image vector escapes the oldform span")
    return [[aug[pivot_row[b]][nb + tix] for tix in range(nt)] for b in range(nb)]


def _old_restriction_checks(ops: OperatorSet) -> tuple[bool, bool]:
    """U-stability of the oldform space and the restricted charpoly identity.

    Solving U gens = gens X in the basis (Ker(MA) columns, F Ker(MA)
    columns) settles stability (the solve fails iff some image escapes)
    and yields the restriction, whose characteristic polynomial must be
    X^dim_level1 times that of the induced level-one matrix.  charpoly
    does not depend on the basis choice, and the z picture regrades both
    sides identically.
    """
    wp = ops.wp
    p = wp.p
    zd = _zdata(ops)
    d1 = zd.lvl1.dim
    if d1 == 0:
        return True, True
    bcols = list(zd.raw_old)
    targets = [matvec(zd.bundle.atkin, col, p) for col in bcols]
    try:
        coords = _solve_in_basis(bcols, targets, wp.n, p)
    except NotInvariant:
        return False, False
    rows = []
    for i in range(2 * d1):
        row = []
        for jj in range(2 * d1):
            x = coords[i][jj]
            if not fq.poly_eq(x.den, poly_one(p)):
                return True, _old_charpoly_factorization_ratfn(coords, zd, d1, p)
            row.append(x.num)
        rows.append(row)
    cp_rest = charpoly(poly_matrix(rows, p), p)
    cp_lam = charpoly(zd.induced, p)
    expected = BivarPoly(tuple([poly_zero()] * d1 + list(cp_lam.coeffs)))
    return True, bivar_eq(cp_rest, expected)


def _sb_charpoly_ratfn(ent, p: int):
    """Division-free charpoly over RatFn entries; cold fallback path."""
    from .ratfn import rf_neg, rf_one as rfo, rf_sub

    n = len(ent)
    if n == 0:
        return [rfo(p)]
    P = [rf_neg(ent[0][0], p), rfo(p)]
    for r in range(2, n + 1):
        rows = r - 1
        v = [ent[b][r - 1] for b in range(rows)]
        hs = []
        for l in range(rows):
            if l > 0:
                v = [
                    _rf_dot([ent[i][b] for b in range(rows)], v, p) for i in range(rows)
                ]
            hs.append(_rf_dot([ent[r - 1][b] for b in range(rows)], v, p))
        newP = [rf_zero(p) for _ in range(r + 1)]
        for y in range(r):
            newP[y + 1] = P[y]
        diag = ent[r - 1][r - 1]
        if not rf_is_zero(diag):
            for y in range(r):
                newP[y] = rf_sub(newP[y], rf_mul(diag, P[y], p), p)
        for l, h in enumerate(hs):
            if rf_is_zero(h):
                continue
            for yq in range(r - l - 1):
                newP[yq] = rf_sub(newP[yq], rf_mul(h, P[yq + l + 1], p), p)
        P = newP
    return P


def _rf_dot(row, v, p: int) -> RatFn:
    s = rf_zero(p)
    for x, y in zip(row, v):
        if not (rf_is_zero(x) or rf_is_zero(y)):
            s = rf_add(s, rf_mul(x, y, p), p)
    return s


def _old_charpoly_factorization_ratfn(coords, zd: _ZData, d1: int, p: int) -> bool:
    """Fallback comparison when the restriction has true denominators."""
    cp_rest = _sb_charpoly_ratfn(coords, p)
    lam_rf = [
        [RatFn(zd.induced.entries[i][jj], poly_one(p)) for jj in range(d1)]
        for i in range(d1)
    ]
    cp_lam = _sb_charpoly_ratfn(lam_rf, p)
    expected = [rf_zero(p)] * d1 + cp_lam
    if len(cp_rest) != len(expected):
        return False
    return all(rf_eq(x, y) for x, y in zip(cp_rest, expected))


IDENTITY_NAMES = (
    "af_eq_d",
    "fricke_square_scalar",
    "trace_eq_m_plus_a",
    "trace_eq_trace_a",
    "trace_idempotent",
    "m_cubed_eq_m",
    "ma_trace_zero",
    "trace_m_zero",
    "mdf_eq_tk_ma",
    "ker_atkin_eq_fricke_level1",
    "old_space_stable",
    "old_charpoly_factorization",
    "new_space_stable",
    "new_square_is_tk",
    "trace_fricke_eq_twisted_on_level1",
    "dirsum_kernel_matches_eigenvectors",
)


def run_identity_suite(ops: OperatorSet, dec: Optional[SpaceDecomposition] = None) -> dict:
    """Evaluate every matrix identity; failures are recorded, never raised.

    All checks are homogeneous in the z grading and run there (t^k
    corresponds to z^{n-1}); the final check interprets the direct-sum
    kernel through eigenvalues +-t^{k/2}, which only exist for even k,
    so odd k records None.  dec is accepted for interface symmetry; the
    suite derives what it needs from the operator set itself.
    """
    wp = ops.wp
    p, k = wp.p, wp.k
    zd = _zdata(ops)
    zb = zd.bundle
    n, kz = zb.n, zb.kexp
    out: dict = {}
    ma = mat_mul(zb.m, zb.a, p)
    out["af_eq_d"] = mat_eq(mat_mul(zb.a, zb.fricke, p), zb.d)
    out["fricke_square_scalar"] = mat_eq(
        mat_mul(zb.fricke, zb.fricke, p), monomial_identity(n, kz, 1, p)
    )
    out["trace_eq_m_plus_a"] = mat_eq(zb.trace, mat_add(zb.m, zb.a, p))
    out["trace_eq_trace_a"] = mat_eq(zb.trace, mat_mul(zb.trace, zb.a, p))
    out["trace_idempotent"] = mat_eq(mat_mul(zb.trace, zb.trace, p), zb.trace)
    out["m_cubed_eq_m"] = mat_eq(mat_mul(mat_mul(zb.m, zb.m, p), zb.m, p), zb.m)
    out["ma_trace_zero"] = mat_is_zero(mat_mul(ma, zb.trace, p))
    out["trace_m_zero"] = mat_is_zero(mat_mul(zb.trace, zb.m, p))
    zk_ma = poly_matrix(
        [
            [fq.poly_shift(ma.entries[i][jj], kz, p) for jj in range(n)]
            for i in range(n)
        ],
        p,
    )
    out["mdf_eq_tk_ma"] = mat_eq(mat_mul(zb.atkin, zb.fricke, p), zk_ma)

    out["ker_atkin_eq_fricke_level1"] = subspace_eq(
        kernel_basis(zb.atkin, p), zd.fricke_lvl1
    )
    stable_old, factorization_ok = _old_restriction_checks(ops)
    out["old_space_stable"] = stable_old
    out["old_charpoly_factorization"] = factorization_ok
    # newforms are cut out by two kernel conditions, so image membership
    # is checked by applying those matrices directly; U b and U^2 b are
    # shared between the stability and the scalar-square checks
    new_cleared = _cleared_vectors(zd.raw_new, p)
    stable_new = True
    square_ok = True
    zk = fq.monomial(kz, 1, p)
    for b in new_cleared:
        ub = matvec(zb.atkin, b, p)
        if stable_new and not (
            all(rf_is_zero(x) for x in matvec(zb.trace, ub, p))
            and all(rf_is_zero(x) for x in matvec(zb.core, ub, p))
        ):
            stable_new = False
        if square_ok:
            uub = matvec(zb.atkin, ub, p)
            want = [rf_scale_poly(zk, x, p) for x in b]
            if not all(rf_eq(x, y) for x, y in zip(uub, want)):
                square_ok = False
        if not (stable_new or square_ok):
            break
    out["new_space_stable"] = stable_new
    out["new_square_is_tk"] = square_ok

    ok = True
    for v in zd.lvl1.basis:
        lhs = matvec(zb.trace, matvec(zb.fricke, v, p), p)
        rhs = matvec(zb.core, v, p)
        if not all(rf_eq(x, y) for x, y in zip(lhs, rhs)):
            ok = False
            break
    out["trace_fricke_eq_twisted_on_level1"] = ok

    out["dirsum_kernel_matches_eigenvectors"] = (
        _dirsum_kernel_eigenvector_check(ops) if k % 2 == 0 else None
    )
    return out


def _dirsum_kernel_eigenvector_check(ops: OperatorSet) -> bool:
    """For even k: Ker(direct-sum criterion) meet Ker(MA) is spanned by the
    induced eigenvectors of eigenvalue +-t^{k/2}.

    Both sides live inside Ker(MA), whose invariance under F + MD is
    verified when the induced matrix is built, so the comparison happens
    in induced coordinates: Ker(L^2 - t^k) against Ker(L - t^{k/2}) +
    Ker(L + t^{k/2}).  This one runs over t because t^{k/2} need not be
    a power of z.
    """
    wp = ops.wp
    p, k, beta, alpha = wp.p, wp.k, wp.beta, wp.alpha
    zd = _zdata(ops)
    if zd.lvl1.dim == 0:
        return True
    d1 = zd.induced.n
    lam_t = poly_matrix(
        [
            [_expand_poly(zd.induced.entries[i][jj], beta, alpha) for jj in range(d1)]
            for i in range(d1)
        ],
        p,
    )
    lam_sq = mat_mul(lam_t, lam_t, p)

    def _shifted_kernel(base: PolyMatrix, exp: int, sign: int) -> Subspace:
        return kernel_basis(
            poly_matrix(
                [
                    [
                        fq.poly_add(
                            base.entries[i][jj],
                            fq.monomial(exp, sign, p) if i == jj else poly_zero(),
                            p,
                        )
                        for jj in range(d1)
                    ]
                    for i in range(d1)
                ],
                p,
            ),
            p,
        )

    lhs = _shifted_kernel(lam_sq, k, -1)
    plus = _shifted_kernel(lam_t, k // 2, -1)
    minus = _shifted_kernel(lam_t, k // 2, 1)
    return subspace_eq(lhs, subspace_sum(plus, minus, p))


def analyze(q: int, k: int, m: int) -> AnalysisReport:
    """Full analysis of one parameter set.

    Raises InvalidWeightType or ZeroSpace for bad parameters; theorem
    verdict disagreements are recorded in the report, not raised.  Only
    dimensions enter the report, so the canonical echelon bases of the
    old and new spaces are never materialized here.
    """
    wp = decompose_weight(q, k, m)
    ops = build_operators(wp)
    zd = _zdata(ops)
    tt, tt_cross, _ = _tt_injective_full(ops)
    det = dirsum_matrix_determinant(ops)
    det_val = None if poly_is_zero(det) else int(t_valuation(det))
    ds = det_val is not None
    ds_cross = zd.dims_add_up and zd.inter_dim == 0
    slopes = compute_slopes(ops)
    identities = run_identity_suite(ops)
    report = AnalysisReport(
        params=wp,
        dim_level1=zd.lvl1.dim,
        dim_old=zd.dim_old,
        dim_new=len(zd.raw_new),
        dims_add_up=zd.dims_add_up,
        intersection_trivial=(zd.inter_dim == 0),
        tt_injective=tt,
        tt_injective_crosscheck=tt_cross,
        direct_sum=ds,
        direct_sum_crosscheck=ds_cross,
        dirsum_det_tvaluation=det_val,
        identities=identities,
        slopes=slopes.slopes,
    )
    _zdata.cache_clear()
    return report

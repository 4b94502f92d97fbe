"""Construction of the level-t operator matrices.

A space of cusp forms is pinned down by a prime power q = p^e, a weight
k and a type class m modulo q - 1 subject to k = 2m (mod q-1).  The
derived data are j in [0, q-2] with m = j+1 (mod q-1), the dimension n
with k = 2(j+1) + (n-1)(q-1), and the exponents s_i = j+1 + (i-1)(q-1),
which satisfy s_i + s_{n+1-i} = k.

On the coordinate space the operators are:

    atkin  U = M D           with D = diag(t^{s_1}, ..., t^{s_n}),
    fricke involution  t^{m-k} F   with F antidiagonal, AF = D,
    trace  T = I + M A       with A the antidiagonal sign involution,
    twisted trace  t^{m-k} (F + M D),

where M holds binomial coefficients mod p in a reflected block layout
(entry rule below).  Every t power in sight is t^{j+1} times a power of
t^{q-1}, which the heavy computations exploit by working in z = t^{q-1}.

The two independent descriptions of the same operators (T = I + MA
versus T = M + A, the direct antidiagonal F versus AF = D, F^2 = t^k I)
are cross-checked at build time so a faulty entry rule cannot survive
construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fppoly as fq
from .errors import (
    ConstructionInconsistent,
    EmptyLevelOne,
    InvalidWeightType,
    NotInvariant,
    ZeroSpace,
)
from .fppoly import PrimePower, lucas_binomial, prime_power_from_q
from .linalg import (
    BivarPoly,
    PolyMatrix,
    Subspace,
    charpoly_colscaled,
    colscaled_to_bivar,
    const_matrix,
    det_shift_minus_square,
    echelonize,
    kernel_basis,
    mat_eq,
    mat_mul,
    matrix_from_const,
    matvec,
    monomial_identity,
    poly_matrix,
    reduce_against,
)
from .ratfn import RatFn, rf_is_zero

__all__ = [
    "WeightParams",
    "decompose_weight",
    "m_entry",
    "OperatorSet",
    "build_operators",
    "twisted_core_unscaled",
    "level_one_kernel",
    "induced_level1_hecke",
    "dirsum_matrix_determinant",
    "atkin_charpoly",
]


@dataclass(frozen=True)
class WeightParams:
    """Validated parameters fixing one cusp form space of level t."""

    pp: PrimePower
    k: int
    m: int
    j: int
    n: int
    s: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.pp.q

    @property
    def p(self) -> int:
        return self.pp.p

    @property
    def alpha(self) -> int:
        """Offset of the exponent progression: s_i = alpha + (i-1) beta."""
        return self.j + 1

    @property
    def beta(self) -> int:
        return self.pp.q - 1


def decompose_weight(q: int, k: int, m: int) -> WeightParams:
    """Derive (j, n, s) from (q, k, m), normalizing m to its class representative.

    The representative is the unique m in [1, q-1] with m = j+1 (mod q-1),
    so m = q-1 stands for the zero class.  Raises InvalidWeightType if
    k != 2m (mod q-1) and ZeroSpace if the space has dimension n < 1.
    """
    pp = prime_power_from_q(q)
    qm1 = q - 1
    if (k - 2 * m) % qm1 != 0:
        raise InvalidWeightType(
            f"k = {k} is not congruent to 2m = {2 * m} modulo q-1 = {qm1}"
        )
    j = (m - 1) % qm1
    n_num = k - 2 * (j + 1)
    if n_num % qm1 != 0:  # unreachable given the congruence; keep as a guard
        raise InvalidWeightType(f"k = {k} incompatible with j = {j}")
    n = n_num // qm1 + 1
    if n < 1:
        raise ZeroSpace(f"k = {k}, m = {m} gives dimension n = {n} < 1")
    s = tuple(j + 1 + (i - 1) * qm1 for i in range(1, n + 1))
    return WeightParams(pp=pp, k=k, m=j + 1, j=j, n=n, s=s)


def m_entry(a: int, b: int, wp: WeightParams) -> int:
    """Entry m_{a,b} of the binomial block, as a residue in [0, p).

    Off the diagonal this is
        -[ C(j+(n-a)(q-1), j+(n-b)(q-1)) + (-1)^(j+1) C(j+(n-a)(q-1), j+(b-1)(q-1)) ],
    and on the diagonal (-1)^j C(j+(n-a)(q-1), j+(a-1)(q-1)), all mod p.
    """
    n, q, p, j = wp.n, wp.q, wp.p, wp.j
    if not (1 <= a <= n and 1 <= b <= n):
        raise IndexError(f"m_entry indices ({a}, {b}) outside 1..{n}")
    top = j + (n - a) * (q - 1)
    if a == b:
        return (-1) ** j * lucas_binomial(top, j + (a - 1) * (q - 1), p) % p
    c1 = lucas_binomial(top, j + (n - b) * (q - 1), p)
    c2 = lucas_binomial(top, j + (b - 1) * (q - 1), p)
    return (-(c1 + (-1) ** (j + 1) * c2)) % p


def _build_m_int(wp: WeightParams) -> np.ndarray:
    """The matrix M over F_p.

    Column rule, with mid = ceil(n/2) and b' = n+1-b: left half columns
    hold m_{a,b} above the antidiagonal, (-1)^j on it, 0 below; right
    half columns hold the sign-flipped mirror entries with the diagonal
    correction (-1)^(j+1) (m_{a,a} - 1) at a = b', and 0 for a + b' >= n+1.
    The odd-n central column is the left rule at b = (n+1)/2.
    """
    n, p, j = wp.n, wp.p, wp.j
    mid = (n + 1) // 2
    sj = (-1) ** j % p
    sj1 = (-1) ** (j + 1) % p
    out = np.zeros((n, n), dtype=np.int64)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if b <= mid:
                if a + b < n + 1:
                    v = m_entry(a, b, wp)
                elif a + b == n + 1:
                    v = sj
                else:
                    v = 0
            else:
                bp = n + 1 - b
                if a == bp:
                    v = sj1 * (m_entry(a, a, wp) - 1) % p
                elif a + bp < n + 1:
                    v = sj1 * m_entry(a, bp, wp) % p
                else:
                    v = 0
            out[a - 1, b - 1] = v % p
    return out


@dataclass(frozen=True, eq=False)
class OperatorBundle:
    """The operator matrices over one exponent ladder exps[0] < ... < exps[n-1].

    Used twice: with exps = s for the true level-t operators, and with
    exps = (0, 1, ..., n-1) for the compressed picture in z = t^{q-1},
    where the scalar weight t^k becomes z^{n-1}.  kexp records that
    scalar exponent (exps[i] + exps[n-1-i] = kexp throughout).
    """

    n: int
    p: int
    kexp: int
    m: PolyMatrix
    a: PolyMatrix
    d: PolyMatrix
    fricke: PolyMatrix
    atkin: PolyMatrix
    trace: PolyMatrix
    core: PolyMatrix
    dirsum: PolyMatrix


def _matrix_bundle(
    m_int: np.ndarray, a_int: np.ndarray, exps, kexp: int, p: int
) -> OperatorBundle:
    n = len(exps)
    m_pm = matrix_from_const(m_int, p)
    a_pm = matrix_from_const(a_int, p)
    d_pm = poly_matrix(
        [
            [fq.monomial(exps[i], 1, p) if i == jj else fq.poly_zero() for jj in range(n)]
            for i in range(n)
        ],
        p,
    )
    sgn = int(a_int[0, n - 1])
    f_pm = poly_matrix(
        [
            [
                fq.monomial(exps[n - 1 - i], sgn, p) if jj == n - 1 - i else fq.poly_zero()
                for jj in range(n)
            ]
            for i in range(n)
        ],
        p,
    )
    atkin = mat_mul(m_pm, d_pm, p)
    trace = matrix_from_const((np.eye(n, dtype=np.int64) + (m_int @ a_int)) % p, p)
    core_rows = tuple(
        tuple(
            fq.poly_add(f_pm.entries[i][jj], atkin.entries[i][jj], p) for jj in range(n)
        )
        for i in range(n)
    )
    core = PolyMatrix(n, core_rows, 0)
    core_sq = mat_mul(core, core, p)
    dirsum_rows = tuple(
        tuple(
            fq.poly_sub(
                fq.monomial(kexp, 1, p) if i == jj else fq.poly_zero(),
                core_sq.entries[i][jj],
                p,
            )
            for jj in range(n)
        )
        for i in range(n)
    )
    dirsum = PolyMatrix(n, dirsum_rows, 0)
    return OperatorBundle(
        n=n, p=p, kexp=kexp, m=m_pm, a=a_pm, d=d_pm, fricke=f_pm,
        atkin=atkin, trace=trace, core=core, dirsum=dirsum,
    )


@dataclass(frozen=True, eq=False)
class OperatorSet:
    """All level-t operator matrices for one parameter set (scale 0 unless noted).

    twisted_core is F + M D carrying the Laurent scale m - k; dirsum is
    the scale-cleared direct sum criterion matrix t^k I - (F + M D)^2.
    """

    wp: WeightParams
    m: PolyMatrix
    a: PolyMatrix
    d: PolyMatrix
    fricke: PolyMatrix
    atkin: PolyMatrix
    trace: PolyMatrix
    twisted_core: PolyMatrix
    dirsum: PolyMatrix

    @property
    def m_int(self) -> np.ndarray:
        return const_matrix(self.m)

    @property
    def trace_int(self) -> np.ndarray:
        return const_matrix(self.trace)

    @property
    def g_int(self) -> np.ndarray:
        """M + A over F_p; the twisted trace core is (M + A) D."""
        return (const_matrix(self.m) + const_matrix(self.a)) % self.wp.p


def build_operators(wp: WeightParams) -> OperatorSet:
    """Construct every operator matrix and verify the cross identities."""
    n, p, j, k = wp.n, wp.p, wp.j, wp.k
    m_int = _build_m_int(wp)
    a_int = np.zeros((n, n), dtype=np.int64)
    sj1 = (-1) ** (j + 1) % p
    for i in range(n):
        a_int[i, n - 1 - i] = sj1
    b = _matrix_bundle(m_int, a_int, wp.s, k, wp.p)

    # cross identities tying the independent descriptions together
    if not mat_eq(b.trace, matrix_from_const((m_int + a_int) % p, p)):
        raise ConstructionInconsistent("trace matrix: I + MA differs from M + A")
    if not mat_eq(mat_mul(b.a, b.fricke, p), b.d):
        raise ConstructionInconsistent("AF = D fails")
    if not mat_eq(mat_mul(b.fricke, b.fricke, p), monomial_identity(n, k, 1, p)):
        raise ConstructionInconsistent("F^2 = t^k I fails")

    twisted = PolyMatrix(n, b.core.entries, wp.m - k)
    return OperatorSet(
        wp=wp,
        m=b.m,
        a=b.a,
        d=b.d,
        fricke=b.fricke,
        atkin=b.atkin,
        trace=b.trace,
        twisted_core=twisted,
        dirsum=b.dirsum,
    )


def compressed_bundle(ops: OperatorSet) -> OperatorBundle:
    """The z = t^{q-1} picture of the operators: exponents 0, ..., n-1.

    Every matrix here is the level-t one with the unit scalar t^{j+1}
    pulled out of each monomial column and t^{q-1} renamed z, so all
    kernels, ranks, subspace relations and homogeneous identities agree
    with the level-t picture verbatim.
    """
    wp = ops.wp
    return _matrix_bundle(
        const_matrix(ops.m), const_matrix(ops.a), tuple(range(wp.n)), wp.n - 1, wp.p
    )


def twisted_core_unscaled(ops: OperatorSet) -> PolyMatrix:
    """F + M D with the Laurent scale cleared (scale 0 view)."""
    return PolyMatrix(ops.twisted_core.n, ops.twisted_core.entries, 0)


def level_one_kernel(ops: OperatorSet) -> Subspace:
    """Ker(MA), the coordinate image of the level-one forms.

    MA has entries in F_p, so the echelon basis is constant.
    """
    p = ops.wp.p
    ma_int = (const_matrix(ops.m) @ const_matrix(ops.a)) % p
    return kernel_basis(matrix_from_const(ma_int, p), p)


def induced_level1_hecke(ops: OperatorSet) -> list[list[RatFn]]:
    """Matrix of the level-one Hecke operator on Ker(MA), echelon basis.

    A level-one form with coordinates v maps to (F + M D) v, which stays
    inside Ker(MA); a failure of that invariance is a construction bug.
    """
    p = ops.wp.p
    ker = level_one_kernel(ops)
    if ker.dim == 0:
        raise EmptyLevelOne("Ker(MA) is zero; no level-one forms")
    core = twisted_core_unscaled(ops)
    cols = []
    for b in ker.basis:
        img = matvec(core, b, p)
        coords, res = reduce_against(ker, img, p)
        if any(not rf_is_zero(x) for x in res):
            raise NotInvariant("(F + MD) Ker(MA) is not contained in Ker(MA)")
        cols.append(coords)
    return [[cols[c][r] for c in range(ker.dim)] for r in range(ker.dim)]


def fricke_image_of_level_one(ops: OperatorSet) -> Subspace:
    """F Ker(MA), the second half of the oldform space."""
    p = ops.wp.p
    ker = level_one_kernel(ops)
    return echelonize(
        [matvec(ops.fricke, b, p) for b in ker.basis], ops.wp.n, p
    )


def dirsum_matrix_determinant(ops: OperatorSet) -> np.ndarray:
    """det(t^k I - (F + MD)^2), nonzero iff old + new forms span directly.

    Works in z = t^{q-1}: with G = M + A and Z = diag(z^{b-1}) the
    determinant equals t^{2 alpha n} det(z^{n-1} I - (G Z)^2) at z = t^beta,
    which the characteristic polynomial of G Z yields division free.
    """
    wp = ops.wp
    n, p = wp.n, wp.p
    dz = det_shift_minus_square(ops.g_int, list(range(n)), n - 1, p)
    if fq.poly_is_zero(dz):
        return fq.poly_zero()
    out = np.zeros((len(dz) - 1) * wp.beta + 2 * wp.alpha * n + 1, dtype=np.int64)
    nz = np.nonzero(dz)[0]
    out[nz * wp.beta + 2 * wp.alpha * n] = dz[nz]
    return out


def atkin_charpoly(ops: OperatorSet) -> BivarPoly:
    """Characteristic polynomial of U = M D over F_p[t][X].

    Computed in the z grading: U = t^alpha M diag(z^{b-1}) at z = t^beta.
    """
    wp = ops.wp
    zc = charpoly_colscaled(ops.m_int, list(range(wp.n)), wp.p)
    return colscaled_to_bivar(zc, wp.alpha, wp.beta, wp.p)

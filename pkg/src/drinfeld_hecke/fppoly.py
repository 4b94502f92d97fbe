"""Exact arithmetic over F_p and F_p[t].

Polynomials in t over the prime field F_p are dense int64 numpy arrays,
lowest degree first, with every coefficient reduced into [0, p).  The
highest stored coefficient is nonzero; the zero polynomial is the empty
array.  The modulus p is a plain runtime value passed alongside the
arrays, never baked into a type, so the same data can serve several
characteristics in one process.

Arrays returned by this module are treated as immutable by convention:
no function mutates its arguments and callers must not write into
results they hand to other functions.

The degree of the zero polynomial is reported as the sentinel -1 and its
t-adic valuation as math.inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NonExactDivision

__all__ = [
    "PrimePower",
    "prime_power_from_q",
    "is_prime",
    "fp_inv",
    "lucas_binomial",
    "poly",
    "monomial",
    "poly_zero",
    "poly_one",
    "poly_is_zero",
    "poly_deg",
    "poly_eq",
    "poly_add",
    "poly_sub",
    "poly_neg",
    "poly_scale",
    "poly_shift",
    "poly_mul",
    "poly_pow",
    "poly_divmod",
    "poly_exact_div",
    "poly_gcd",
    "poly_make_monic",
    "t_valuation",
    "poly_to_string",
    "poly_from_string",
]


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (desk scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimePower:
    """A validated prime power q = p^e with p prime and e >= 1."""

    p: int
    e: int
    q: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.e < 1 or self.p ** self.e != self.q or self.q < 2:
            raise ValueError(f"q = {self.q} is not {self.p}^{self.e}")


def prime_power_from_q(q: int) -> PrimePower:
    """Factor q as p^e, or raise ValueError if q is not a prime power."""
    if q < 2:
        raise ValueError(f"q = {q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            x = q
            while x % p == 0:
                x //= p
                e += 1
            if x != 1:
                raise ValueError(f"q = {q} is not a prime power")
            return PrimePower(p=p, e=e, q=q)
    raise ValueError(f"q = {q} is not a prime power")


def fp_inv(a: int, p: int) -> int:
    """Multiplicative inverse of a nonzero residue mod the prime p."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 in F_p")
    return pow(a, p - 2, p)


@lru_cache(maxsize=None)
def lucas_binomial(n: int, k: int, p: int) -> int:
    """Binomial coefficient C(n, k) mod p, computed digit-wise in base p.

    Returns 0 whenever k > n; both arguments must be nonnegative.
    """
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if k > n:
        return 0
    result = 1
    while n or k:
        nd, n = n % p, n // p
        kd, k = k % p, k // p
        if kd > nd:
            return 0
        # C(nd, kd) with nd, kd < p: small enough for direct products
        num = den = 1
        for i in range(kd):
            num = num * (nd - i) % p
            den = den * (i + 1) % p
        result = result * num * fp_inv(den, p) % p
    return result


# ---------------------------------------------------------------------------
# dense polynomials over F_p


def _trim(a: np.ndarray) -> np.ndarray:
    if len(a) == 0 or a[-1]:
        return a
    nz = np.nonzero(a)[0]
    if len(nz) == 0:
        return a[:0]
    return a[: nz[-1] + 1]


def poly(coeffs, p: int) -> np.ndarray:
    """Build a canonical polynomial from a coefficient sequence (lowest first)."""
    a = np.asarray(coeffs, dtype=np.int64) % p
    return _trim(a)


def monomial(exp: int, coeff: int, p: int) -> np.ndarray:
    """The monomial coeff * t^exp."""
    c = coeff % p
    if c == 0:
        return poly_zero()
    a = np.zeros(exp + 1, dtype=np.int64)
    a[exp] = c
    return a


def poly_zero() -> np.ndarray:
    return np.zeros(0, dtype=np.int64)


def poly_one(p: int) -> np.ndarray:
    return np.ones(1, dtype=np.int64) if p > 1 else poly_zero()


def poly_is_zero(a: np.ndarray) -> bool:
    return len(a) == 0


def poly_deg(a: np.ndarray) -> int:
    """Degree, with -1 as the sentinel for the zero polynomial."""
    return len(a) - 1


def poly_eq(a: np.ndarray, b: np.ndarray) -> bool:
    return len(a) == len(b) and bool(np.array_equal(a, b))


def poly_add(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    if len(b):
        out[: len(b)] = (out[: len(b)] + b) % p
    return _trim(out)


def poly_neg(a: np.ndarray, p: int) -> np.ndarray:
    return (-a) % p if len(a) else a


def poly_sub(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return poly_add(a, poly_neg(b, p), p)


def poly_scale(c: int, a: np.ndarray, p: int) -> np.ndarray:
    c %= p
    if c == 0 or len(a) == 0:
        return poly_zero()
    if c == 1:
        return a
    return _trim(a * c % p)


def poly_shift(a: np.ndarray, s: int, p: int) -> np.ndarray:
    """Multiply by t^s (s >= 0)."""
    if s < 0:
        raise ValueError("negative shift")
    if len(a) == 0 or s == 0:
        return a
    out = np.zeros(len(a) + s, dtype=np.int64)
    out[s:] = a
    return out


def poly_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product; deg(a*b) = deg a + deg b for nonzero inputs."""
    if len(a) == 0 or len(b) == 0:
        return poly_zero()
    return _trim(np.convolve(a, b) % p)


def poly_pow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    if e < 0:
        raise ValueError("negative exponent")
    out = poly_one(p)
    base = a
    while e:
        if e & 1:
            out = poly_mul(out, base, p)
        base = poly_mul(base, base, p)
        e >>= 1
    return out


def poly_divmod(a: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Quotient and remainder of a by b over F_p; b must be nonzero.

    Synthetic division with lazy reduction: intermediate values stay
    below deg * p^2, far inside int64, so mod p runs once at the end.
    """
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return poly_zero(), a
    rem = a.astype(np.int64, copy=True)
    db = len(b) - 1
    inv_lead = fp_inv(int(b[-1]), p)
    quo = np.zeros(len(a) - db, dtype=np.int64)
    for i in range(len(a) - db - 1, -1, -1):
        c = rem[i + db] % p
        if c:
            c = c * inv_lead % p
            quo[i] = c
            rem[i : i + db] -= c * b[:db]
            rem[i + db] = 0
    return _trim(quo), _trim(rem[:db] % p if db else rem[:0])


def poly_exact_div(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Quotient q with q*b = a; raises NonExactDivision on a nonzero remainder."""
    quo, rem = poly_divmod(a, b, p)
    if len(rem):
        raise NonExactDivision("remainder nonzero in exact polynomial division")
    return quo


def poly_exact_div_batch(rows: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact division of several packed polynomials by one divisor.

    rows is a 2-D int64 array, one polynomial per row (zero padded); the
    quotients come back in the same packed layout.  One synthetic
    division loop serves every row, which is the per-row algorithm with
    the python-level iteration amortized away.
    """
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    m, length = rows.shape
    db = len(b) - 1
    if length < db + 1:
        if rows.any():
            raise NonExactDivision("divisor degree exceeds dividend degree")
        return np.zeros((m, 1), dtype=np.int64)
    rem = rows.astype(np.int64, copy=True)
    inv_lead = fp_inv(int(b[-1]), p)
    nq = length - db
    quo = np.zeros((m, nq), dtype=np.int64)
    head = b[:db]
    for i in range(nq - 1, -1, -1):
        c = rem[:, i + db] % p * inv_lead % p
        quo[:, i] = c
        if db:
            rem[:, i : i + db] -= np.outer(c, head)
    if db and (rem[:, :db] % p).any():
        raise NonExactDivision("remainder nonzero in exact polynomial division")
    return quo % p


def poly_gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.

    A monomial operand short-circuits: the only common divisors are
    powers of t, so the gcd is t to the smaller valuation.
    """
    if len(a) and len(b) and (
        np.count_nonzero(a) == 1 or np.count_nonzero(b) == 1
    ):
        v = min(t_valuation(a), t_valuation(b))
        out = np.zeros(v + 1, dtype=np.int64)
        out[v] = 1
        return out
    while len(b):
        _, r = poly_divmod(a, b, p)
        a, b = b, r
    return poly_make_monic(a, p)


def poly_make_monic(a: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or a[-1] == 1:
        return a
    return poly_scale(fp_inv(int(a[-1]), p), a, p)


def t_valuation(a: np.ndarray):
    """Index of the lowest nonzero coefficient; math.inf for zero."""
    nz = np.nonzero(a)[0]
    if len(nz) == 0:
        return math.inf
    return int(nz[0])


def poly_to_string(a: np.ndarray) -> str:
    """Serialize as the comma-joined coefficient list "c0,c1,..."."""
    if len(a) == 0:
        return "0"
    return ",".join(str(int(c)) for c in a)


def poly_from_string(s: str, p: int) -> np.ndarray:
    return poly([int(c) for c in s.split(",")], p)

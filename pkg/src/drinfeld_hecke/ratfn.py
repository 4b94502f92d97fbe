"""Rational functions over F_p(t) in reduced canonical form.

A RatFn is a pair (num, den) of polynomials with den monic and nonzero
and gcd(num, den) = 1; zero is 0/1.  Canonical form makes equality a
coefficientwise comparison.  As everywhere in this package, the modulus
p travels alongside the values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fppoly as fq
from .fppoly import (
    poly_add,
    poly_eq,
    poly_exact_div,
    poly_gcd,
    poly_is_zero,
    poly_make_monic,
    poly_mul,
    poly_neg,
    poly_one,
    poly_zero,
)

__all__ = [
    "RatFn",
    "ratfn_reduce",
    "rf_from_poly",
    "rf_zero",
    "rf_one",
    "rf_is_zero",
    "rf_eq",
    "rf_add",
    "rf_sub",
    "rf_neg",
    "rf_mul",
    "rf_div",
    "rf_inv",
    "rf_scale_poly",
    "rf_to_string",
]


@dataclass(frozen=True)
class RatFn:
    num: np.ndarray
    den: np.ndarray

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"RatFn({fq.poly_to_string(self.num)} / {fq.poly_to_string(self.den)})"


def _is_one(a: np.ndarray) -> bool:
    return len(a) == 1 and a[0] == 1


def ratfn_reduce(num: np.ndarray, den: np.ndarray, p: int) -> RatFn:
    """The unique reduced form with monic denominator; den must be nonzero."""
    if poly_is_zero(den):
        raise ZeroDivisionError("rational function with zero denominator")
    if poly_is_zero(num):
        return RatFn(poly_zero(), poly_one(p))
    if len(den) == 1:
        c = int(den[0])
        if c == 1:
            return RatFn(num, den)
        return RatFn(fq.poly_scale(fq.fp_inv(c, p), num, p), poly_one(p))
    if np.count_nonzero(den) == 1:
        # monomial denominator: cancel the common power of t directly
        v = min(int(fq.t_valuation(num)), len(den) - 1)
        num, den = num[v:], den[v:]
        if len(den) == 1:
            return ratfn_reduce(num, den, p)
    g = poly_gcd(num, den, p)
    if fq.poly_deg(g) > 0:
        num = poly_exact_div(num, g, p)
        den = poly_exact_div(den, g, p)
    lead = int(den[-1])
    if lead != 1:
        inv = fq.fp_inv(lead, p)
        num = fq.poly_scale(inv, num, p)
        den = fq.poly_scale(inv, den, p)
    return RatFn(num, den)


def rf_from_poly(a: np.ndarray, p: int) -> RatFn:
    return RatFn(a, poly_one(p))


def rf_zero(p: int) -> RatFn:
    return RatFn(poly_zero(), poly_one(p))


def rf_one(p: int) -> RatFn:
    return RatFn(poly_one(p), poly_one(p))


def rf_is_zero(x: RatFn) -> bool:
    return poly_is_zero(x.num)


def rf_eq(x: RatFn, y: RatFn) -> bool:
    return poly_eq(x.num, y.num) and poly_eq(x.den, y.den)


def rf_add(x: RatFn, y: RatFn, p: int) -> RatFn:
    if rf_is_zero(x):
        return y
    if rf_is_zero(y):
        return x
    if _is_one(x.den) and _is_one(y.den):
        return RatFn(poly_add(x.num, y.num, p), x.den)
    num = poly_add(poly_mul(x.num, y.den, p), poly_mul(y.num, x.den, p), p)
    return ratfn_reduce(num, poly_mul(x.den, y.den, p), p)


def rf_neg(x: RatFn, p: int) -> RatFn:
    return RatFn(poly_neg(x.num, p), x.den)


def rf_sub(x: RatFn, y: RatFn, p: int) -> RatFn:
    return rf_add(x, rf_neg(y, p), p)


def rf_mul(x: RatFn, y: RatFn, p: int) -> RatFn:
    if rf_is_zero(x) or rf_is_zero(y):
        return rf_zero(p)
    if _is_one(x.den) and _is_one(y.den):
        return RatFn(poly_mul(x.num, y.num, p), x.den)
    return ratfn_reduce(poly_mul(x.num, y.num, p), poly_mul(x.den, y.den, p), p)


def rf_inv(x: RatFn, p: int) -> RatFn:
    if rf_is_zero(x):
        raise ZeroDivisionError("inverse of zero rational function")
    num, den = x.den, x.num
    lead = int(den[-1])
    if lead != 1:
        inv = fq.fp_inv(lead, p)
        num = fq.poly_scale(inv, num, p)
        den = poly_make_monic(den, p)
    return RatFn(num, den)


def rf_div(x: RatFn, y: RatFn, p: int) -> RatFn:
    return rf_mul(x, rf_inv(y, p), p)


def rf_scale_poly(a: np.ndarray, x: RatFn, p: int) -> RatFn:
    """Multiply by the polynomial a."""
    if poly_is_zero(a) or rf_is_zero(x):
        return rf_zero(p)
    if _is_one(x.den):
        return RatFn(poly_mul(a, x.num, p), x.den)
    return ratfn_reduce(poly_mul(a, x.num, p), x.den, p)


def rf_to_string(x: RatFn) -> str:
    return f"{fq.poly_to_string(x.num)}/{fq.poly_to_string(x.den)}"

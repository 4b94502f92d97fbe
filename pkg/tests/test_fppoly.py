import math
import random

import numpy as np
import pytest

from drinfeld_hecke.errors import NonExactDivision
from drinfeld_hecke.fppoly import (
    PrimePower,
    lucas_binomial,
    poly,
    poly_add,
    poly_deg,
    poly_divmod,
    poly_eq,
    poly_exact_div,
    poly_from_string,
    poly_gcd,
    poly_is_zero,
    poly_mul,
    poly_pow,
    poly_to_string,
    prime_power_from_q,
    t_valuation,
)
from _oracles import pascal_binomial


def rand_poly(rng, p, maxdeg):
    return poly([rng.randrange(p) for _ in range(rng.randrange(maxdeg + 1))], p)


# ---------------------------------------------------------------------------
# prime powers


@pytest.mark.parametrize("q,p,e", [(2, 2, 1), (3, 3, 1), (4, 2, 2), (5, 5, 1), (7, 7, 1), (8, 2, 3), (9, 3, 2)])
def test_prime_power_factoring(q, p, e):
    pp = prime_power_from_q(q)
    assert (pp.p, pp.e, pp.q) == (p, e, q)


@pytest.mark.parametrize("q", [0, 1, 6, 10, 12, 15])
def test_prime_power_rejects_non_prime_powers(q):
    with pytest.raises(ValueError):
        prime_power_from_q(q)


def test_prime_power_validates_fields():
    with pytest.raises(ValueError):
        PrimePower(p=4, e=1, q=4)
    with pytest.raises(ValueError):
        PrimePower(p=2, e=2, q=8)


# ---------------------------------------------------------------------------
# Lucas binomials


def test_lucas_trivial_cases():
    assert lucas_binomial(4, 0, 3) == 1
    assert lucas_binomial(2, 3, 5) == 0


def test_lucas_derived_case():
    # 6 mod 3, cross-checked against the base-3 digit product C(1,0)C(1,2)
    assert pascal_binomial(4, 2, 3) == 0
    assert lucas_binomial(4, 2, 3) == 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_lucas_matches_pascal_up_to_60(p):
    for n in range(61):
        for k in range(n + 1):
            assert lucas_binomial(n, k, p) == pascal_binomial(n, k, p), (n, k, p)


def test_lucas_rejects_negative():
    with pytest.raises(ValueError):
        lucas_binomial(-1, 0, 3)


# ---------------------------------------------------------------------------
# polynomial arithmetic


def test_mul_by_zero_and_monomials():
    p = 3
    assert poly_is_zero(poly_mul(poly([], p), poly([1, 2], p), p))
    t = poly([0, 1], p)
    assert poly_eq(poly_mul(t, t, p), poly([0, 0, 1], p))


def test_freshmans_dream_char2():
    one_plus_t = poly([1, 1], 2)
    assert poly_eq(poly_mul(one_plus_t, one_plus_t, 2), poly([1, 0, 1], 2))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_ring_axioms_randomized(p):
    rng = random.Random(1000 + p)
    for _ in range(150):
        a = rand_poly(rng, p, 12)
        b = rand_poly(rng, p, 12)
        c = rand_poly(rng, p, 12)
        ab = poly_mul(a, b, p)
        assert poly_eq(poly_mul(ab, c, p), poly_mul(a, poly_mul(b, c, p), p))
        lhs = poly_mul(a, poly_add(b, c, p), p)
        rhs = poly_add(poly_mul(a, b, p), poly_mul(a, c, p), p)
        assert poly_eq(lhs, rhs)
        if not poly_is_zero(b):
            assert poly_eq(poly_exact_div(ab, b, p), a)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_frobenius_additivity(p):
    rng = random.Random(77 + p)
    for _ in range(40):
        a = rand_poly(rng, p, 8)
        b = rand_poly(rng, p, 8)
        lhs = poly_pow(poly_add(a, b, p), p, p)
        rhs = poly_add(poly_pow(a, p, p), poly_pow(b, p, p), p)
        assert poly_eq(lhs, rhs)


def test_degree_additivity():
    rng = random.Random(5)
    p = 5
    for _ in range(100):
        a = rand_poly(rng, p, 10)
        b = rand_poly(rng, p, 10)
        if poly_is_zero(a) or poly_is_zero(b):
            continue
        assert poly_deg(poly_mul(a, b, p)) == poly_deg(a) + poly_deg(b)


def test_exact_div_examples():
    p = 5
    t2 = poly([0, 0, 1], p)
    t = poly([0, 1], p)
    assert poly_eq(poly_exact_div(t2, t, p), t)
    # (t^2 + t) / (t + 1) = t over F_2
    assert poly_eq(poly_exact_div(poly([0, 1, 1], 2), poly([1, 1], 2), 2), poly([0, 1], 2))
    with pytest.raises(NonExactDivision):
        poly_exact_div(poly([1, 1], p), poly([0, 1], p), p)
    with pytest.raises(ZeroDivisionError):
        poly_exact_div(t, poly([], p), p)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_divmod_reconstruction(p):
    rng = random.Random(900 + p)
    for _ in range(300):
        a = rand_poly(rng, p, 25)
        b = rand_poly(rng, p, 10)
        if poly_is_zero(b):
            continue
        q, r = poly_divmod(a, b, p)
        assert poly_eq(poly_add(poly_mul(q, b, p), r, p), a)
        assert poly_deg(r) < poly_deg(b) or poly_is_zero(r)


def test_t_valuation():
    p = 7
    assert t_valuation(poly([0, 0, 0, 1, 0, 1], p)) == 3
    assert t_valuation(poly([1], p)) == 0
    assert t_valuation(poly([], p)) == math.inf


@pytest.mark.parametrize("p", [2, 3, 5])
def test_gcd_properties(p):
    rng = random.Random(40 + p)
    for _ in range(120):
        a = rand_poly(rng, p, 10)
        b = rand_poly(rng, p, 10)
        g = poly_gcd(a, b, p)
        if poly_is_zero(a) and poly_is_zero(b):
            assert poly_is_zero(g)
            continue
        assert g[-1] == 1  # monic
        if not poly_is_zero(a):
            poly_exact_div(a, g, p)
        if not poly_is_zero(b):
            poly_exact_div(b, g, p)


def test_gcd_monomial_shortcut_agrees():
    p = 5
    a = poly([0, 0, 3], p)  # 3 t^2
    b = poly([0, 2, 0, 1, 4], p)
    g = poly_gcd(a, b, p)
    assert poly_eq(g, poly([0, 1], p))


def test_string_roundtrip():
    p = 7
    a = poly([1, 0, 5], p)
    assert poly_to_string(a) == "1,0,5"
    assert poly_eq(poly_from_string("1,0,5", p), a)
    assert poly_to_string(poly([], p)) == "0"

import math
from fractions import Fraction

import pytest

from cuspidal.divisors import orbit_divisor
from cuspidal.etalinalg import upsilon_apply
from cuspidal.generators import (D_vector, base_vector_A, base_vector_B,
                                 base_vector_B2, base_vector_image,
                                 construct_Y, construct_Z, default_level,
                                 divisor_orderings, g_scalar, iota_r,
                                 order_primes, prec_ladder, predicted_order,
                                 tri_ladder)
from cuspidal.intarith import divisors, kappa, valuation
from cuspidal.orderengine import profile


def test_ladders():
    assert prec_ladder(1) == (1, 0)
    assert prec_ladder(4) == (1, 0, 2, 4, 3)
    assert tri_ladder(1) == (0, 1)
    assert tri_ladder(5) == (0, 1, 5, 4, 2, 3)
    assert tri_ladder(7) == (0, 1, 7, 6, 2, 5, 3, 4)
    assert iota_r(4) == {1: 0, 0: 1, 2: 4, 4: 3, 3: 2}


def test_order_primes_deterministic():
    L = order_primes(15, 2)
    assert L.base.primes == (3, 5) and L.u == 0 and L.s == 0
    L = order_primes(30, 3)
    # gamma(2)=3 has the largest val_3
    assert L.base.primes[0] == 2
    assert L.gammas == tuple(p ** (r - 1) * (p + 1) for p, r in L.base.factors)


def test_orderings_are_permutations():
    for n in [36, 60, 360, 2 ** 6]:
        L = default_level(n)
        DO = divisor_orderings(L)
        all_divs = set(divisors(n)) - {1}
        assert set(DO.prec_divisors()) == all_divs
        assert set(DO.tri_divisors()) == set(DO.tri_divisors())
        assert len(DO.prec_tuples) == len(all_divs)


def test_ordering_anchors():
    # d_1 = rad N; squarefree block (size 2^t - 1) comes first
    for n in [60, 360, 90]:
        L = default_level(n)
        DO = divisor_orderings(L)
        t = L.base.t
        divs = DO.prec_divisors()
        assert divs[0] == L.base.radical()
        sf = [d for d in divisors(n)
              if d > 1 and all(valuation(d, p) <= 1 for p in L.base.primes)]
        assert set(divs[: 2 ** t - 1]) == set(sf)


def test_A_closed_forms():
    # A(r,1) entries p^{max(r-2k,0)}
    for p in (2, 3, 5):
        for r in range(1, 7):
            A = base_vector_A(p, r, 1)
            assert A.coeffs == tuple(p ** max(r - 2 * k, 0) for k in range(r + 1))
    # f >= 3 closed forms
    for p in (2, 3):
        for r in range(3, 9):
            for f in range(3, r + 1):
                A = base_vector_A(p, r, f)
                if (r - f) % 2 == 0:
                    a = (r - f) // 2
                    exp = (p ** a,) + (0,) * (r - a - 1) + (-1,) * (a + 1)
                else:
                    a = (r + 1 - f) // 2
                    exp = (1,) * (a + 1) + (0,) * (r - a - 1) + (-(p ** a),)
                assert A.coeffs == exp


def test_base_vector_degrees():
    # A(r,0) has degree 1, A(r,1) degree p^{r-1}(p+1); the rest are degree 0
    for p in (2, 3):
        for r in range(1, 7):
            assert base_vector_A(p, r, 0).degree() == 1
            assert base_vector_A(p, r, 1).degree() == p ** (r - 1) * (p + 1)
            for f in range(2, r + 1):
                assert base_vector_A(p, r, f).degree() == 0
            assert base_vector_B(p, r, 1).degree() == 0


def test_image_vectors():
    # Upsilon * A = g * (primitive image); kappa = g * G_slot for f != 1
    for p in (2, 3, 5):
        for r in range(1, 7):
            for f in range(r + 1):
                g, img = base_vector_image("A", p, r, f)
                V = upsilon_apply(p ** r, base_vector_A(p, r, f).coeffs)
                assert V == tuple(g * x for x in img)
            gB, imgB = base_vector_image("B", p, r, 1)
            assert gB == p ** (r - 1) * (p + 1)
            VB = upsilon_apply(p ** r, base_vector_B(p, r, 1).coeffs)
            assert VB == tuple(gB * x for x in imgB)


def test_image_anchor_positions():
    # the image vector has entry +-1 at position iota_r(f), zeros after in tri order
    for p in (3, 5):
        for r in range(1, 7):
            ranks = {f: i for i, f in enumerate(tri_ladder(r))}
            for f in range(1, r + 1):
                _, img = base_vector_image("A", p, r, f)
                anchor = iota_r(r)[f]
                assert abs(img[anchor]) == 1
                for k in range(r + 1):
                    if ranks[k] > ranks[anchor]:
                        assert img[k] == 0


def test_D_vector_example():
    L = order_primes(15, 2)
    assert D_vector(L, 1, 2).coeffs == (1, -3, 2, 0)


def test_D_vector_degree_zero():
    for n, ell in [(15, 2), (30, 2), (105, 3)]:
        L = order_primes(n, ell)
        for i in range(1, L.t):
            assert D_vector(L, i, i + 1).degree() == 0


def test_B2_vectors():
    # examples from the 2-power tables
    assert base_vector_B2(7, 7).coeffs == (1, 0, 0, 0, 0, 0, 0, -1)
    assert base_vector_B2(7, 6).coeffs == (-1, -1, 0, 0, 0, 0, 0, 2)
    assert base_vector_B2(6, 5).coeffs == (1, -1, 0, 0, 0, 0, 0)
    for r in range(5, 10):
        for f in range(3, r + 1):
            assert base_vector_B2(r, f).degree() == 0


def test_prime_power_orders():
    # C(p^r) cyclic factor orders for odd p
    for p in (3, 5, 7):
        for r in range(1, 5):
            L = default_level(p ** r)
            for f in range(1, r + 1):
                o = predicted_order(L, p ** f, "Z")
                if f == 1:
                    assert o == Fraction(p - 1, 12).numerator
                elif f == 2:
                    assert o == Fraction(p * p - 1, 24).numerator
                else:
                    j = (r - f) // 2 if (r - f) % 2 == 0 else (r + 1 - f) // 2
                    assert o == p ** (r - 1 - j) * (p * p - 1) // 24


def test_Z_and_Y_profiles_match_predictions():
    for n in [36, 60, 64, 90, 100]:
        L0 = default_level(n)
        for d in divisors(n):
            if d == 1:
                continue
            if any(valuation(d, p) >= 2 for p in L0.base.primes):
                assert profile(construct_Z(L0, d, "Z")).order == \
                    predicted_order(L0, d, "Z")
    for n in [30, 60, 90]:
        for ell in (2, 3, 5):
            L = order_primes(n, ell)
            for d in divisors(n):
                if d > 1 and all(valuation(d, p) <= 1 for p in L.base.primes):
                    assert profile(construct_Y(L, d, "Y2")).order == \
                        predicted_order(L, d, "Y2")


def test_Y_variants_degree_zero():
    L = order_primes(60, 2)
    for d in (2, 3, 5, 6, 10, 15, 30):
        for variant in ("Y0", "Y1", "Y2"):
            assert construct_Y(L, d, variant).degree() == 0
    with pytest.raises(ValueError):
        construct_Y(L, 4, "Y2")

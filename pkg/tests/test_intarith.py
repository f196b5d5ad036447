import pytest

from cuspidal.intarith import (FactoredInteger, A_tuple, E_tuple, E_u_tuple,
                               F_tuple, as_factored, divisor_lattice, divisor_of,
                               divisors, exponent_tuple, factor, in_delta,
                               in_E_set, in_F_set, in_G_set, in_H_u, in_square,
                               in_T_u, kappa, phi, tuple_k, tuple_m, tuple_n,
                               valuation, z_of)


def test_factor_basic():
    f = factor(360)
    assert f.value == 360
    assert f.factors == ((2, 3), (3, 2), (5, 1))
    assert f.t == 3 and f.u == 1
    assert f.radical() == 30
    assert factor(1).t == 0


def test_reorder():
    f = factor(12).reorder((1, 0))
    assert f.primes == (3, 2) and f.u == 2


def test_divisors_and_phi():
    assert divisors(12) == (1, 2, 3, 4, 6, 12)
    assert phi(1) == 1 and phi(12) == 4 and phi(97) == 96


def test_kappa():
    # kappa(N) = (N / rad N) * prod(p^2 - 1); divisible by 24 except small cases
    assert kappa(11) == 120
    assert kappa(4) == 6
    assert kappa(1) == 1
    for n in range(1, 200):
        assert (kappa(n) % 24 == 0) == (n not in (1, 2, 3, 4, 8))


def test_divisor_lattice():
    lat = divisor_lattice(36)
    assert [row[0] for row in lat] == list(divisors(36))
    d, z, w = lat[list(divisors(36)).index(6)]
    assert z == z_of(36, 6) == 6 and w == phi(6) == 2


def test_exponent_tuples():
    N = factor(360)
    assert exponent_tuple(N, 12) == (2, 1, 0)
    assert divisor_of(N, (2, 1, 0)) == 12
    assert in_square((2, 1, 0)) and not in_delta((2, 1, 0))
    assert in_delta((1, 0, 1)) and not in_square((1, 0, 1))


def test_m_n_k():
    # I = (0,1,1,0,1,0): m=2, n=4, k=6
    I = (0, 1, 1, 0, 1, 0)
    assert tuple_m(I) == 2 and tuple_n(I) == 4 and tuple_k(I) == 6
    # run of ones to the end: n = t+1
    assert tuple_n((0, 1, 1)) == 4
    assert in_E_set((0, 1, 1)) and in_E_set((1, 1))
    assert not in_E_set((1, 0, 1))


def test_named_tuples():
    assert A_tuple(2, 4) == (0, 1, 1, 1)
    assert E_tuple(3, 4) == (1, 1, 0, 1)
    assert F_tuple(1, 3) == (1, 0, 0)
    assert E_u_tuple(3, 1, 4) == (0, 1, 0, 1)


def test_special_sets():
    # H_u needs n(I) = u and another zero after
    assert in_H_u((1, 0, 1, 0), 2)
    assert not in_H_u((1, 0, 1, 1), 2)  # k = t+1 -> H_u^1 instead
    assert in_F_set(E_tuple(3, 3), 1)   # I_1 = {3..t}
    assert not in_F_set(E_tuple(2, 3), 1)
    assert in_G_set(E_tuple(2, 3), 1)
    assert not in_G_set(E_tuple(2, 3), 2)
    assert not in_F_set((1, 1, 0), 0)   # empty for odd levels


def test_T_u():
    # only for 2-adic exponent >= 5
    exps = (5, 1)
    assert in_T_u((3, 1), exps, 1)
    assert in_T_u((5, 1), exps, 1)
    assert not in_T_u((2, 1), exps, 1)
    assert not in_T_u((3, 0), exps, 1)
    assert not in_T_u((3, 1), (4, 1), 1)

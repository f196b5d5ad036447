"""Rational cuspidal divisors on X0(N).

S2(N) is the lattice of integer combinations of the Galois-orbit divisors
(P_d), d | N, stored densely over the ascending divisor list.  S2(N)^0 is the
degree-0 sublattice.  All operator actions (degeneracy pushforward/pullback,
Atkin-Lehner, Hecke, and the pi compositions) act on this basis by the
case-by-case exponent formulas, extended linearly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .intarith import as_factored, divisor_lattice, divisors, phi, valuation


@dataclass(frozen=True)
class CuspDivisor:
    """An element of S2(N): coefficients on (P_d), d ascending."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        assert len(self.coeffs) == len(divisors(self.n))

    def coeff(self, d: int):
        return self.coeffs[divisors(self.n).index(d)]

    def as_dict(self) -> dict:
        return {d: c for d, c in zip(divisors(self.n), self.coeffs) if c}

    def degree(self):
        return sum(c * w for c, (_, _, w) in zip(self.coeffs, divisor_lattice(self.n)))

    def __add__(self, other):
        assert self.n == other.n
        return CuspDivisor(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        assert self.n == other.n
        return CuspDivisor(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CuspDivisor(self.n, tuple(-a for a in self.coeffs))

    def __rmul__(self, k):
        return CuspDivisor(self.n, tuple(k * a for a in self.coeffs))

    def __str__(self):
        terms = [f"{c}*({d})" for d, c in self.as_dict().items()]
        return ",".join(terms) if terms else "0"


def zero_divisor(n) -> CuspDivisor:
    n = as_factored(n).value
    return CuspDivisor(n, (0,) * len(divisors(n)))


def from_dict(n, coeffs: dict) -> CuspDivisor:
    n = as_factored(n).value
    ds = divisors(n)
    for d in coeffs:
        if d not in ds:
            raise ValueError(f"{d} does not divide {n}")
    return CuspDivisor(n, tuple(coeffs.get(d, 0) for d in ds))


def orbit_divisor(n, d: int) -> CuspDivisor:
    """The orbit divisor (P_d): the sum of all cusps of level d."""
    return from_dict(n, {d: 1})


def C_generator(n, d: int) -> CuspDivisor:
    """C_d = phi(gcd(d, N/d)) * (P_1) - (P_d); degree 0, defined for d > 1."""
    n = as_factored(n).value
    if d == 1:
        raise ValueError("C_d requires d > 1")
    return from_dict(n, {1: phi(math.gcd(d, n // d)), d: -1})


# ---------------------------------------------------------------------------
# Tensor structure over coprime factorizations
# ---------------------------------------------------------------------------

def tensor_join(v: CuspDivisor, w: CuspDivisor) -> CuspDivisor:
    """e(M)_d1 (x) e(Q)_d2 -> e(MQ)_{d1 d2}, extended bilinearly (gcd(M,Q)=1)."""
    if math.gcd(v.n, w.n) != 1:
        raise ValueError("tensor factors must have coprime levels")
    n = v.n * w.n
    out = {}
    for d1, c1 in v.as_dict().items():
        for d2, c2 in w.as_dict().items():
            out[d1 * d2] = out.get(d1 * d2, 0) + c1 * c2
    return from_dict(n, out)


def tensor_split(v: CuspDivisor, m: int, q: int) -> dict:
    """Write v at level m*q as sum_d1 e(m)_d1 (x) w_d1; returns {d1: w_d1}."""
    if m * q != v.n or math.gcd(m, q) != 1:
        raise ValueError("levels must be a coprime factorization of v.n")
    out = {}
    for d, c in v.as_dict().items():
        d1 = 1  # the full m-part of d
        for p in as_factored(m).primes:
            d1 *= p ** valuation(d, p)
        w = out.setdefault(d1, dict())
        w[d // d1] = w.get(d // d1, 0) + c
    return {d1: from_dict(q, w) for d1, w in out.items()}


# ---------------------------------------------------------------------------
# Operator actions on the (P_d) basis
# ---------------------------------------------------------------------------

def _p_parts(d: int, p: int):
    f = valuation(d, p)
    return d // p ** f, f


def _map_basis(D: CuspDivisor, n_target: int, rule) -> CuspDivisor:
    out = {}
    for d, c in D.as_dict().items():
        for d_new, mult in rule(d):
            out[d_new] = out.get(d_new, 0) + c * mult
    return from_dict(n_target, out)


def alpha_push(D: CuspDivisor, p: int) -> CuspDivisor:
    """(alpha_p)_* : S2(Np) -> S2(N)."""
    n = D.n // p
    r = valuation(n, p)

    def rule(d):
        dp, f = _p_parts(d, p)
        if 2 * f <= r:
            return [(dp * p ** f, 1)]
        if f <= r - 1:
            return [(dp * p ** f, p)]
        if f == r:
            return [(dp * p ** r, p - 1)]
        return [(dp * p ** r, 1)]

    return _map_basis(D, n, rule)


def beta_push(D: CuspDivisor, p: int) -> CuspDivisor:
    """(beta_p)_* : S2(Np) -> S2(N)."""
    n = D.n // p
    r = valuation(n, p)

    def rule(d):
        dp, f = _p_parts(d, p)
        if f == 0:
            return [(dp, 1)]
        if f == 1 and r >= 1:
            return [(dp, p - 1)]
        if 2 * f < r + 2:
            return [(dp * p ** (f - 1), p)]
        return [(dp * p ** (f - 1), 1)]

    return _map_basis(D, n, rule)


def alpha_pull(D: CuspDivisor, p: int) -> CuspDivisor:
    """(alpha_p)^* : S2(N) -> S2(Np)."""
    n = D.n * p
    r = valuation(D.n, p)

    def rule(d):
        dp, f = _p_parts(d, p)
        if r == 0:
            return [(dp, p), (dp * p, 1)]
        if 2 * f <= r:
            return [(dp * p ** f, p)]
        if f <= r - 1:
            return [(dp * p ** f, 1)]
        return [(dp * p ** r, 1), (dp * p ** (r + 1), 1)]

    return _map_basis(D, n, rule)


def beta_pull(D: CuspDivisor, p: int) -> CuspDivisor:
    """(beta_p)^* : S2(N) -> S2(Np)."""
    n = D.n * p
    r = valuation(D.n, p)

    def rule(d):
        dp, f = _p_parts(d, p)
        if r == 0:
            return [(dp, 1), (dp * p, p)]
        if f == 0:
            return [(dp, 1), (dp * p, 1)]
        if 2 * f < r:
            return [(dp * p ** (f + 1), 1)]
        return [(dp * p ** (f + 1), p)]

    return _map_basis(D, n, rule)


def atkin_lehner(D: CuspDivisor, p: int) -> CuspDivisor:
    """w_p on S2(N): swaps the p-exponent f <-> r - f."""
    r = valuation(D.n, p)
    if r == 0:
        raise ValueError("p must divide the level")

    def rule(d):
        dp, f = _p_parts(d, p)
        return [(dp * p ** (r - f), 1)]

    return _map_basis(D, D.n, rule)


def hecke(D: CuspDivisor, p: int) -> CuspDivisor:
    """T_p on S2(N) (p prime; (p+1)-scaling when p does not divide N)."""
    r = valuation(D.n, p)
    if r == 0:
        return (p + 1) * D

    def rule(d):
        dp, f = _p_parts(d, p)
        if f == 0:
            return [(dp, p)]
        if f == r == 1:
            return [(dp, p - 1), (dp * p, 1)]
        if f == r:
            return [(dp * p ** (r - 1), 1), (dp * p ** r, 1)]
        if f == 1 and r >= 2:
            return [(dp, p * (p - 1))]
        if 2 * f <= r:
            return [(dp * p ** (f - 1), p * p)]
        if 2 * f == r + 1:
            return [(dp * p ** (f - 1), p)]
        return [(dp * p ** (f - 1), 1)]

    return _map_basis(D, D.n, rule)


def pi1_pull(D: CuspDivisor, p: int, k: int) -> CuspDivisor:
    """pi_1(p^a, p^{a-k})^* = k-fold alpha pullback."""
    for _ in range(k):
        D = alpha_pull(D, p)
    return D


def pi2_pull(D: CuspDivisor, p: int, k: int) -> CuspDivisor:
    """pi_2^* = k-fold beta pullback."""
    for _ in range(k):
        D = beta_pull(D, p)
    return D


def pi12_pull(D: CuspDivisor, p: int) -> CuspDivisor:
    """pi_12(N)^* : S2(N) -> S2(N p^2), the composite alpha^* o beta^*."""
    return alpha_pull(beta_pull(D, p), p)


def pi12_pull_div_p(D: CuspDivisor, p: int) -> CuspDivisor:
    """(1/p) pi_12^*; all image coefficients are divisible by p."""
    img = pi12_pull(D, p)
    for c in img.coeffs:
        if c % p:
            raise ArithmeticError("pi12 pullback not divisible by p")
    return CuspDivisor(img.n, tuple(c // p for c in img.coeffs))


def apply(op: str, D: CuspDivisor, p: int, k: int = 1) -> CuspDivisor:
    """Dispatch by tag: alpha_push/beta_push/alpha_pull/beta_pull/w/T/
    pi1_pull/pi2_pull/pi12_pull/pi12_pull_div_p."""
    table = {
        "alpha_push": lambda: alpha_push(D, p),
        "beta_push": lambda: beta_push(D, p),
        "alpha_pull": lambda: alpha_pull(D, p),
        "beta_pull": lambda: beta_pull(D, p),
        "w": lambda: atkin_lehner(D, p),
        "T": lambda: hecke(D, p),
        "pi1_pull": lambda: pi1_pull(D, p, k),
        "pi2_pull": lambda: pi2_pull(D, p, k),
        "pi12_pull": lambda: pi12_pull(D, p),
        "pi12_pull_div_p": lambda: pi12_pull_div_p(D, p),
    }
    if op not in table:
        raise ValueError(f"unknown operator {op!r}")
    return table[op]()

"""Cusps of X0(N): canonical representatives <x : d>, widths, and the
pointwise actions of degeneracy maps, Atkin-Lehner involutions and the
Galois action.

A cusp is written <x : d> with d | N and x taken modulo z = gcd(d, N/d),
subject to gcd(x, d) = 1.  Two cusps are equal iff they share d and agree
mod z.  The stored representative is the least x >= 1 in its class mod z
with gcd(x, d) = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .intarith import as_factored, valuation, z_of


@dataclass(frozen=True, order=True)
class Cusp:
    n: int
    d: int
    x: int

    def __str__(self):
        return f"{self.x}/{self.d}@{self.n}"

    @property
    def z(self) -> int:
        return z_of(self.n, self.d)


def _canonical_x(n: int, d: int, x: int) -> int:
    z = z_of(n, d)
    x %= z
    if x == 0:
        x = z
    while math.gcd(x, d) != 1:
        x += z
    return x


def make_cusp(n, d: int, x: int) -> Cusp:
    n = as_factored(n).value
    if n % d != 0:
        raise ValueError(f"{d} does not divide {n}")
    return Cusp(n, d, _canonical_x(n, d, x))


def normalize(a: int, b: int, n) -> Cusp:
    """Canonical cusp equivalent to the point a/b (column vector (a, b))."""
    n = as_factored(n).value
    if (a, b) == (0, 0) or math.gcd(a, b) != 1:
        raise ValueError("coprime (a, b) != (0, 0) required")
    if b < 0:
        a, b = -a, -b
    d = math.gcd(b, n)
    bp, npp = b // d, n // d
    # Find y == b/d (mod N/d) with gcd(y, a*N) = 1; then <a : b> = <y*a : d>.
    need = abs(a) * n if a else n
    y = bp
    while math.gcd(y, need) != 1:
        y += npp
    return make_cusp(n, d, y * a)


def enumerate_cusps(n) -> tuple[Cusp, ...]:
    """All cusps of X0(N); for each d | N there are phi(gcd(d, N/d)) of them."""
    n = as_factored(n).value
    out = []
    for d in as_factored(n).divisors():
        z = z_of(n, d)
        for x0 in range(1, z + 1):
            if math.gcd(x0, z) == 1:
                out.append(make_cusp(n, d, x0))
    return tuple(out)


def width(c: Cusp) -> int:
    return c.n // (c.d * c.z)


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    assert math.gcd(m1, m2) == 1
    if m1 == 1:
        return r2 % m2 if m2 > 1 else 0
    if m2 == 1:
        return r1 % m1
    g, s, _ = _xgcd(m1, m2)
    assert g == 1
    return (r1 + (r2 - r1) * s % m2 * m1) % (m1 * m2)


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def alpha_push(c: Cusp, p: int) -> Cusp:
    """Pushforward along alpha_p : X0(Np) -> X0(N) (the identity map on tau)."""
    if c.n % p != 0:
        raise ValueError("p must divide the level")
    n = c.n // p
    r = valuation(n, p)
    f = valuation(c.d, p)
    if f <= r:
        return make_cusp(n, c.d, c.x)
    return make_cusp(n, c.d // p, p * c.x)


def beta_push(c: Cusp, p: int) -> Cusp:
    """Pushforward along beta_p : X0(Np) -> X0(N) (tau -> p*tau)."""
    if c.n % p != 0:
        raise ValueError("p must divide the level")
    n = c.n // p
    f = valuation(c.d, p)
    if f == 0:
        return make_cusp(n, c.d, p * c.x)
    return make_cusp(n, c.d // p, c.x)


def atkin_lehner(c: Cusp, p: int) -> Cusp:
    """The partial Atkin-Lehner involution w_p on cusps of X0(N), p | N."""
    n = c.n
    if n % p != 0:
        raise ValueError("p must divide the level")
    r = valuation(n, p)
    f = valuation(c.d, p)
    dp = c.d // p ** f
    d_new = dp * p ** (r - f)
    z_m = z_of(n // p ** r, dp)  # prime-to-p part of the new modulus
    z_p = p ** min(f, r - f)     # p-part (symmetric in f <-> r-f)
    x_new = _crt(c.x % z_m, z_m, (-c.x) % z_p, z_p)
    return make_cusp(n, d_new, x_new)


def galois(c: Cusp, k: int) -> Cusp:
    """The action of the Galois element sigma_k (k coprime to N) on cusps."""
    if math.gcd(k, c.n) != 1:
        raise ValueError("k must be coprime to the level")
    kinv = pow(k, -1, c.n) if c.n > 1 else 1
    return make_cusp(c.n, c.d, kinv * c.x)


def act(op: str, c: Cusp, p: int | None = None, k: int | None = None) -> Cusp:
    """Dispatch: 'alpha'/'beta' push to level N/p, 'w' Atkin-Lehner, 'galois'."""
    if op == "alpha":
        return alpha_push(c, p)
    if op == "beta":
        return beta_push(c, p)
    if op == "w":
        return atkin_lehner(c, p)
    if op == "galois":
        return galois(c, k)
    raise ValueError(f"unknown operator {op!r}")


def ramification_index(op: str, c: Cusp, p: int) -> int:
    """Ramification index of alpha_p or beta_p (level Np -> N) at a cusp of X0(Np)."""
    if c.n % p != 0:
        raise ValueError("p must divide the level")
    r = valuation(c.n // p, p)
    f = valuation(c.d, p)
    if op == "alpha":
        return p if 2 * f <= r else 1
    if op == "beta":
        return p if 2 * f >= r + 2 else 1
    raise ValueError(f"unknown degeneracy map {op!r}")

"""Canonical generators of C(N).

This module fixes the prime ordering for a target prime ell, the twisted
orderings on exponent tuples with the bijection iota between them, the base
vectors A_p(r,f) / B_p(r,f) / B2(r,f) at prime-power levels, the two-prime
correction vectors D, the composite generators Z (one per divisor) and
Y0/Y1/Y2 (one per squarefree divisor), and the closed-form predicted orders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import permutations, product

from .divisors import (CuspDivisor, from_dict, orbit_divisor, pi1_pull,
                       pi2_pull, pi12_pull_div_p, tensor_join, zero_divisor)
from .intarith import (FactoredInteger, as_factored, A_tuple, E_tuple,
                       divisor_of, exponent_tuple, factor, in_delta,
                       in_E_set, in_F_set, in_F1_set, in_G_set, in_G1_set,
                       in_H_u, in_H_u1, in_square, in_T_u, kappa, tuple_k,
                       tuple_m, tuple_n, valuation)


# ---------------------------------------------------------------------------
# Prime ordering for a target prime ell
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderedLevel:
    base: FactoredInteger
    ell: int
    u: int
    s: int
    gammas: tuple

    @property
    def t(self) -> int:
        return self.base.t


def _gamma(p: int, r: int) -> int:
    return p ** (r - 1) * (p + 1)


def _admissible(factors, ell: int) -> bool:
    gv = [valuation(_gamma(p, r), ell) for p, r in factors]
    if any(gv[i] < gv[j] for i in range(len(gv)) for j in range(i + 1, len(gv))):
        return False
    u = next((i for i, (p, _) in enumerate(factors, start=1) if p == 2), 0)
    s = 0 if ell % 2 else u
    pv = [valuation(p - 1, ell) if p > 2 or ell % 2 else 0 for p, _ in factors]
    idx = [i for i in range(len(factors)) if i + 1 != s]
    return all(pv[idx[a]] <= pv[idx[b]] for a in range(len(idx))
               for b in range(a + 1, len(idx)))


def _make_level(factors, ell: int) -> OrderedLevel:
    value = math.prod(p ** r for p, r in factors)
    base = FactoredInteger(value, tuple(factors))
    u = base.u
    s = 0 if ell % 2 else u
    return OrderedLevel(base, ell, u, s, tuple(_gamma(p, r) for p, r in factors))


def order_primes(n, ell: int) -> OrderedLevel:
    """Permute the prime factors to satisfy both valuation conditions for ell;
    deterministic: constructive sort first, exhaustive fallback."""
    fn = as_factored(n)
    key = lambda pr: (-valuation(_gamma(*pr), ell), valuation(pr[0] - 1, ell), pr[0])
    cand = tuple(sorted(fn.factors, key=key))
    if _admissible(cand, ell):
        return _make_level(cand, ell)
    for perm in permutations(sorted(fn.factors)):
        if _admissible(perm, ell):
            return _make_level(perm, ell)
    raise AssertionError(f"no admissible prime ordering for N={fn.value}, ell={ell}")


def default_level(n) -> OrderedLevel:
    """Ordering-insensitive contexts (the non-squarefree block): primes ascending."""
    fn = as_factored(n)
    return _make_level(fn.factors, 2)


# ---------------------------------------------------------------------------
# The ladders on {0..r}, the twisted orders, and iota
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def prec_ladder(r: int) -> tuple:
    if r == 1:
        return (1, 0)
    return (1, 0, 2) + tuple(range(r, 2, -1))


@lru_cache(maxsize=None)
def tri_ladder(r: int) -> tuple:
    if r == 1:
        return (0, 1)
    vals = [0, 1, r]
    hi, lo, take_hi = r - 1, 2, True
    while len(vals) < r + 1:
        vals.append(hi if take_hi else lo)
        hi, lo = (hi - 1, lo) if take_hi else (hi, lo + 1)
        take_hi = not take_hi
    return tuple(vals)


def iota_r(r: int) -> dict:
    return dict(zip(prec_ladder(r), tri_ladder(r)))


def iota_delta(I, u: int) -> tuple:
    """The bijection on Delta(t) (t >= 2)."""
    t = len(I)
    m = tuple_m(I)
    x = max(m, u)
    b = [1 - a for a in I]
    if in_E_set(I):
        b[x - 1] = 1
    elif in_H_u1(I, u):
        b[m - 1] = 1
        b[u - 1] = 0
    return tuple(b)


@dataclass(frozen=True)
class DivisorOrdering:
    level: OrderedLevel
    prec_tuples: tuple  # exponent tuples: d_1, d_2, ... in the prec order
    tri_tuples: tuple   # exponent tuples: delta_1, delta_2, ... in the tri order
    iota: tuple         # iota applied to prec_tuples (equals tri_tuples entrywise)

    def prec_divisors(self):
        return tuple(divisor_of(self.level.base, I) for I in self.prec_tuples)

    def tri_divisors(self):
        return tuple(divisor_of(self.level.base, I) for I in self.tri_tuples)


def _colex_key(I, u: int, ranks):
    """Twisted colexicographic key: coordinates compared via the given per-slot
    ladder ranks, larger index more significant, the u-coordinate least."""
    t = len(I)
    rest = tuple(ranks[j][I[j]] for j in range(t - 1, -1, -1) if j != u - 1)
    return rest + ((ranks[u - 1][I[u - 1]],) if u else ())


def divisor_orderings(L: OrderedLevel) -> DivisorOrdering:
    N = L.base
    t, u = N.t, L.u
    rs = N.exponents
    if t == 1:
        r = rs[0]
        prec = tuple((f,) for f in prec_ladder(r) if f >= 1)
        im = iota_r(r)
        tri = tuple((im[f],) for f, in prec)
        return DivisorOrdering(L, prec, tri, tri)
    prec_ranks = [{f: i for i, f in enumerate(prec_ladder(r))} for r in rs]
    tri_ranks = [{f: i for i, f in enumerate(tri_ladder(r))} for r in rs]
    delta = [I for I in product(*[range(0, 2)] * t) if any(I)]
    square = [I for I in product(*[range(0, r + 1) for r in rs]) if in_square(I)]
    tri_delta = sorted(delta, key=lambda I: _colex_key(I, u, tri_ranks))
    prec_delta = sorted(delta, key=lambda I: _colex_key(iota_delta(I, u), u, tri_ranks))
    tri_square = sorted(square, key=lambda I: _colex_key(I, u, tri_ranks))
    prec_square = sorted(square, key=lambda I: _colex_key(I, u, prec_ranks))
    prec = tuple(prec_delta + prec_square)
    tri = tuple(tri_delta + tri_square)
    iot = tuple([iota_delta(I, u) for I in prec_delta]
                + [tuple(iota_r(r)[f] for r, f in zip(rs, I)) for I in prec_square])
    return DivisorOrdering(L, prec, tri, iot)


# ---------------------------------------------------------------------------
# Base vectors at prime-power levels
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def base_vector_A(p: int, r: int, f: int) -> CuspDivisor:
    n = p ** r
    if not 0 <= f <= r:
        raise ValueError("need 0 <= f <= r")
    if f == 0:
        return orbit_divisor(n, 1)
    if r == 1:
        return from_dict(p, {1: p, p: 1})
    if f == r:
        return from_dict(n, {1: 1, n: -1})
    if f == 1:
        return pi1_pull(base_vector_A(p, 1, 1), p, r - 1)
    if f == 2:
        if r % 2 == 1:
            from .divisors import beta_pull
            return beta_pull(base_vector_A(p, r - 1, 2), p)
        corr = p ** (r - 2) * base_vector_A(p, r, r)
        return pi12_pull_div_p(base_vector_A(p, r - 2, 2), p) + corr
    if (r - f) % 2 == 0:
        j = (r - f) // 2
        return pi1_pull(base_vector_A(p, r - j, r - j), p, j)
    j = (r + 1 - f) // 2
    return pi2_pull(base_vector_A(p, r - j, r - j), p, j)


@lru_cache(maxsize=None)
def base_vector_B(p: int, r: int, f: int) -> CuspDivisor:
    if not 1 <= f <= r:
        raise ValueError("need 1 <= f <= r")
    if f == 1:
        return p ** (r - 1) * (p + 1) * base_vector_A(p, r, 0) - base_vector_A(p, r, 1)
    return base_vector_A(p, r, f)


def _E_vec(r: int, k: int) -> tuple:
    m = min(k, r - k)
    if k % 2 == 1:
        head = (0, 2 ** (m - 1))
    else:
        head = (3 * 2 ** (m - 2), -(2 ** (m - 2)))
    return head + (0,) * (k - 2) + (-1,) + (0,) * (r - k)


@lru_cache(maxsize=None)
def base_vector_B2(r: int, f: int) -> CuspDivisor:
    """The replacement 2-power vectors (level 2^r, r >= 5, 3 <= f <= r)."""
    if r < 5 or not 3 <= f <= r:
        raise ValueError("need r >= 5 and 3 <= f <= r")
    n = 2 ** r
    if f == r:
        coeffs = (1,) + (0,) * (r - 1) + (-1,)
    elif f == r - 1:
        if r % 2 == 0:
            coeffs = (1, -1) + (0,) * (r - 1)
        else:
            coeffs = (-1, -1) + (0,) * (r - 2) + (2,)
    elif (r - f) % 2 == 0:
        coeffs = _E_vec(r, (r + f - 2) // 2)
    else:
        coeffs = _E_vec(r, (r - f + 3) // 2)
    return CuspDivisor(n, coeffs)


def base_vector(kind: str, p: int, r: int, f: int) -> CuspDivisor:
    if kind == "A":
        return base_vector_A(p, r, f)
    if kind == "B":
        return base_vector_B(p, r, f)
    if kind == "B2":
        assert p == 2
        return base_vector_B2(r, f)
    raise ValueError(f"unknown base vector kind {kind!r}")


def g_scalar(p: int, r: int, f: int) -> int:
    """g_p(r, f) with Upsilon(p^r) * A_p(r,f) = g * (primitive image vector)."""
    if f == 0:
        return 1
    if f == 1:
        return p ** (r - 1) * (p * p - 1)
    if f == 2:
        return p ** (r - 1)
    return p ** ((r + 1 - f) // 2)


def image_vector_A(p: int, r: int, f: int) -> tuple:
    """The primitive vector with Upsilon(p^r) * A_p(r,f) = g_p(r,f) * it."""
    if f == 0:
        return (p, -1) + (0,) * (r - 1)
    if f == 1:
        return (1,) + (0,) * r
    if f == 2:
        if r % 2 == 0:
            return (1,) + (0,) * (r - 1) + (-1,)
        return (0, 1) + (0,) * (r - 2) + (-1,)
    if (r - f) % 2 == 0:
        j = (r - f) // 2
        return (p, -1) + (0,) * (r - 3 - j) + (1, -p) + (0,) * j
    j = (r + 1 - f) // 2
    return (0,) * j + (p, -1) + (0,) * (r - 3 - j) + (1, -p)


def base_vector_image(kind: str, p: int, r: int, f: int):
    """(scalar, primitive vector) with Upsilon * base_vector = scalar * vector."""
    if kind == "A":
        return g_scalar(p, r, f), image_vector_A(p, r, f)
    if kind == "B":
        if f == 1:
            return p ** (r - 1) * (p + 1), (1, -1) + (0,) * (r - 1)
        return g_scalar(p, r, f), image_vector_A(p, r, f)
    raise ValueError(f"no closed image table for kind {kind!r}")


# ---------------------------------------------------------------------------
# Composite generators
# ---------------------------------------------------------------------------

def D_vector(L: OrderedLevel, i: int, j: int) -> CuspDivisor:
    """The two-prime degree-0 correction vector at level p_i^r_i * p_j^r_j."""
    if not 1 <= i < j <= L.t:
        raise ValueError("need 1 <= i < j <= t")
    (pi, ri), (pj, rj) = L.base.factors[i - 1], L.base.factors[j - 1]
    gi, gj = L.gammas[i - 1], L.gammas[j - 1]
    G = math.gcd(gi, gj)
    left = tensor_join(base_vector_B(pi, ri, 1), base_vector_A(pj, rj, 0))
    right = tensor_join(base_vector_A(pi, ri, 0), base_vector_B(pj, rj, 1))
    return (gj // G) * left - (gi // G) * right


def _fold(vecs) -> CuspDivisor:
    out = CuspDivisor(1, (1,))
    for v in vecs:
        out = tensor_join(out, v)
    return out


def _tensor_with_D(L: OrderedLevel, I, i1: int, i2: int) -> CuspDivisor:
    parts = [base_vector_A(p, r, I[i - 1])
             for i, (p, r) in enumerate(L.base.factors, start=1) if i not in (i1, i2)]
    return _fold(parts + [D_vector(L, i1, i2)])


def construct_Z(L: OrderedLevel, d: int, variant: str = "Z") -> CuspDivisor:
    """Z(d) / Z1(d): tensors of A-vectors with one B (squarefree slot m) or,
    for variant Z on the exceptional 2-power set, with B2 at the slot of 2."""
    if variant not in ("Z", "Z1"):
        raise ValueError("variant must be 'Z' or 'Z1'")
    N = L.base
    if d == 1 or N.value % d:
        raise ValueError("need a divisor 1 < d of N")
    I = exponent_tuple(N, d)
    if in_square(I):
        use_b2 = variant == "Z" and in_T_u(I, N.exponents, L.u)
        parts = []
        for i, (p, r) in enumerate(N.factors, start=1):
            if use_b2 and i == L.u:
                parts.append(base_vector_B2(r, I[i - 1]))
            else:
                parts.append(base_vector_A(p, r, I[i - 1]))
        return _fold(parts)
    m = tuple_m(I)
    parts = [base_vector_B(p, r, 1) if i == m else base_vector_A(p, r, I[i - 1])
             for i, (p, r) in enumerate(N.factors, start=1)]
    return _fold(parts)


def construct_Y(L: OrderedLevel, d: int, variant: str = "Y2") -> CuspDivisor:
    """Y0/Y1/Y2(d) for squarefree d > 1, relative to the ordering L."""
    if variant not in ("Y0", "Y1", "Y2"):
        raise ValueError("variant must be 'Y0', 'Y1' or 'Y2'")
    N, u, s = L.base, L.u, L.s
    I = exponent_tuple(N, d)
    if not in_delta(I):
        raise ValueError("Y vectors exist only for squarefree divisors > 1")
    m = tuple_m(I)
    x = max(m, u)
    if variant == "Y2" and in_F_set(I, s):
        n_ = tuple_n(I)
        y = max(1, 3 - s)
        parts = [base_vector_B(p, r, 1) if i == s else base_vector_A(p, r, I[i - 1])
                 for i, (p, r) in enumerate(N.factors, start=1) if i not in (y, n_)]
        return _fold(parts + [D_vector(L, y, n_)])
    if variant == "Y2" and in_G_set(I, s):
        parts = [base_vector_B(p, r, 1) if i == 1 else base_vector_A(p, r, I[i - 1])
                 for i, (p, r) in enumerate(N.factors, start=1)]
        return _fold(parts)
    if in_E_set(I):
        if variant == "Y0":
            return construct_Z(L, d, "Z")
        parts = [base_vector_B(p, r, 1) if i == x else base_vector_A(p, r, I[i - 1])
                 for i, (p, r) in enumerate(N.factors, start=1)]
        return _fold(parts)
    if variant in ("Y1", "Y2") and in_H_u(I, u):
        return _tensor_with_D(L, I, m, tuple_k(I))
    return _tensor_with_D(L, I, m, tuple_n(I))


# ---------------------------------------------------------------------------
# Predicted orders
# ---------------------------------------------------------------------------

def G_pair(L: OrderedLevel, i: int, j: int) -> int:
    (pi, _), (pj, _) = L.base.factors[i - 1], L.base.factors[j - 1]
    gi, gj = L.gammas[i - 1], L.gammas[j - 1]
    return (pi - 1) * (pj - 1) * math.gcd(gi, gj) // math.gcd(pi - 1, pj - 1)


def G_slot(p: int, r: int, f: int) -> int:
    if f == 0:
        return p ** (r - 1) * (p * p - 1)
    if f == 1:
        return 1
    if f == 2:
        return p * p - 1
    j = (r + 1 - f) // 2
    return p ** (r - 1 - j) * (p * p - 1)


def _frak_G(L: OrderedLevel, I) -> int:
    N = L.base
    if in_square(I):
        return math.prod(G_slot(p, r, f) for (p, r), f in zip(N.factors, I))
    m = tuple_m(I)
    out = N.primes[m - 1] - 1
    for i, ((p, r), f) in enumerate(zip(N.factors, I), start=1):
        if i != m:
            out *= G_slot(p, r, f)
    return out


def _frak_H(L: OrderedLevel, I) -> int:
    N, u = L.base, L.u
    t = N.t
    if I == A_tuple(1, t):
        return 2
    if u >= 1 and I == E_tuple(u, t):
        return 2
    if u >= 1:
        ru, fu = N.exponents[u - 1], I[u - 1]
        others_one = all(f == 1 for i, f in enumerate(I, start=1) if i != u)
        if 3 <= ru <= 4 and fu == 3 and others_one:
            return 2
        if ru >= 5 and fu == ru + 1 - math.gcd(2, ru) and others_one:
            return 2
    return 1


def _script_G(L: OrderedLevel, I) -> int:
    N, u, s = L.base, L.u, L.s
    m = tuple_m(I)
    x = max(m, u)
    if in_E_set(I):
        out = N.primes[x - 1] - 1
        for i, ((p, r), f) in enumerate(zip(N.factors, I), start=1):
            if i != x:
                out *= G_slot(p, r, f)
        return out
    if in_F_set(I, s):
        return G_pair(L, max(1, 3 - s), tuple_n(I))
    if in_G_set(I, s):
        p2, r2 = N.factors[1]
        return G_slot(p2, r2, 0)
    pair = (m, tuple_k(I)) if in_H_u(I, u) else (m, tuple_n(I))
    out = G_pair(L, *pair)
    for i, ((p, r), f) in enumerate(zip(N.factors, I), start=1):
        if i not in pair:
            out *= G_slot(p, r, f)
    return out


def _script_H(L: OrderedLevel, I) -> int:
    u, s = L.u, L.s
    t = L.t
    in_numer = in_F1_set(I, u) or in_G1_set(I, u) or I == A_tuple(1, t)
    in_denom = in_F_set(I, s) or in_G_set(I, s)
    return 2 if in_numer and not in_denom else 1


def predicted_order(L: OrderedLevel, d: int, kind: str) -> int:
    """The closed-form order of Z(d) (kind 'Z') or Y2(d) (kind 'Y2')."""
    N = L.base
    if d == 1 or N.value % d:
        raise ValueError("need a divisor 1 < d of N")
    I = exponent_tuple(N, d)
    if kind == "Z":
        return Fraction(_frak_G(L, I) * _frak_H(L, I), 24).numerator
    if kind == "Y2":
        if not in_delta(I):
            raise ValueError("Y2 orders exist only for squarefree divisors")
        return Fraction(_script_G(L, I) * _script_H(L, I), 24).numerator
    raise ValueError(f"unknown kind {kind!r}")

"""Integer utilities: factorization, the divisor lattice, kappa, and the
combinatorial index sets over exponent tuples that drive the generator
constructions.

An exponent tuple I = (f_1, ..., f_t) encodes the divisor p_1^f_1 * ... * p_t^f_t
of N = p_1^r_1 * ... * p_t^r_t relative to an explicit (possibly permuted)
ordering of the prime factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with an ordered prime-power factorization."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        assert self.value == math.prod(p ** r for p, r in self.factors)
        assert len({p for p, _ in self.factors}) == len(self.factors)

    @property
    def t(self) -> int:
        return len(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(r for _, r in self.factors)

    @property
    def u(self) -> int:
        """1-based position of the prime 2 in the ordering, or 0 if N is odd."""
        for i, (p, _) in enumerate(self.factors, start=1):
            if p == 2:
                return i
        return 0

    def radical(self) -> int:
        return math.prod(self.primes) if self.factors else 1

    def divisors(self) -> tuple[int, ...]:
        return divisors(self.value)

    def reorder(self, perm: tuple[int, ...]) -> "FactoredInteger":
        """Return the same integer with prime factors permuted: new position i
        holds old factors[perm[i]]."""
        assert sorted(perm) == list(range(self.t))
        return FactoredInteger(self.value, tuple(self.factors[i] for i in perm))


@lru_cache(maxsize=None)
def factor(n) -> FactoredInteger:
    """Factor a positive integer; primes ascending.  n = 1 gives t = 0."""
    if isinstance(n, FactoredInteger):
        return n
    if n < 1:
        raise ValueError("positive integer required")
    facs = tuple(sorted(factorint(n).items()))
    return FactoredInteger(n, facs)


def as_factored(n) -> FactoredInteger:
    return n if isinstance(n, FactoredInteger) else factor(n)


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n, ascending."""
    fn = factor(n)
    ds = [1]
    for p, r in fn.factors:
        ds = [d * p ** k for d in ds for k in range(r + 1)]
    return tuple(sorted(ds))


def phi(n: int) -> int:
    """Euler totient."""
    fn = as_factored(n)
    return math.prod(p ** (r - 1) * (p - 1) for p, r in fn.factors) if fn.factors else 1


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def kappa(n) -> int:
    """kappa(N) = (N/rad N) * prod (p^2 - 1)."""
    fn = as_factored(n)
    return math.prod(p ** (r - 1) * (p * p - 1) for p, r in fn.factors) if fn.factors else 1


def z_of(n: int, d: int) -> int:
    """z = gcd(d, N/d), the modulus of the cusp residue at level d."""
    return math.gcd(d, n // d)


@lru_cache(maxsize=None)
def divisor_lattice(n: int):
    """All (d, z = gcd(d, N/d), phi(z)) triples, d ascending.  phi(z) is both
    the number of level-d cusps and the degree of the orbit divisor (P_d)."""
    return tuple((d, z_of(n, d), phi(z_of(n, d))) for d in divisors(n))


# ---------------------------------------------------------------------------
# Exponent tuples and index sets
# ---------------------------------------------------------------------------

def exponent_tuple(N: FactoredInteger, d: int) -> tuple[int, ...]:
    """The tuple of p_i-valuations of the divisor d, in the ordering of N."""
    assert N.value % d == 0
    return tuple(valuation(d, p) for p in N.primes)


def divisor_of(N: FactoredInteger, I) -> int:
    return math.prod(p ** f for p, f in zip(N.primes, I))


def in_delta(I) -> bool:
    return any(I) and all(f <= 1 for f in I)


def in_square(I) -> bool:
    return any(I) and any(f >= 2 for f in I)


def tuple_m(I) -> int:
    """Smallest 1-based index with f_m = 1 (for tuples in Delta(t))."""
    for i, f in enumerate(I, start=1):
        if f == 1:
            return i
    raise ValueError("tuple has no entry equal to 1")


def tuple_n(I) -> int:
    """Smallest n > m(I) with f_n = 0; t+1 if none."""
    t = len(I)
    m = tuple_m(I)
    for i in range(m + 1, t + 1):
        if I[i - 1] == 0:
            return i
    return t + 1


def tuple_k(I) -> int:
    """Smallest k > n(I) with f_k = 0; t+1 if none."""
    t = len(I)
    n = tuple_n(I)
    for i in range(n + 1, t + 1):
        if I[i - 1] == 0:
            return i
    return t + 1


def A_tuple(k: int, t: int) -> tuple[int, ...]:
    return tuple(0 if i < k else 1 for i in range(1, t + 1))


def E_tuple(k: int, t: int) -> tuple[int, ...]:
    return tuple(0 if i == k else 1 for i in range(1, t + 1))


def F_tuple(k: int, t: int) -> tuple[int, ...]:
    return tuple(1 if i == k else 0 for i in range(1, t + 1))


def E_u_tuple(k: int, u: int, t: int) -> tuple[int, ...]:
    assert k != u
    return tuple(0 if i in (k, u) else 1 for i in range(1, t + 1))


def F_u_tuple(k: int, u: int, t: int) -> tuple[int, ...]:
    assert k != u
    return tuple(1 if i in (k, u) else 0 for i in range(1, t + 1))


def in_T_u(I, exponents, u: int) -> bool:
    """The exceptional 2-power set: nonempty only when 2 | N with r_u >= 5."""
    if u == 0 or exponents[u - 1] <= 4:
        return False
    if not in_square(I):
        return False
    if not 3 <= I[u - 1] <= exponents[u - 1]:
        return False
    return all(f == 1 for i, f in enumerate(I, start=1) if i != u)


def in_E_set(I) -> bool:
    """The set of tuples A(m): a single run of 1's ending at position t."""
    return in_delta(I) and tuple_n(I) == len(I) + 1


def in_H_u(I, u: int) -> bool:
    if u <= 1 or not in_delta(I):
        return False
    return tuple_n(I) == u and tuple_k(I) <= len(I)


def in_H_u1(I, u: int) -> bool:
    if u <= 1 or not in_delta(I):
        return False
    return tuple_n(I) == u and tuple_k(I) == len(I) + 1


def I_set(u: int, t: int) -> tuple[int, ...]:
    if u == 1:
        return tuple(range(3, t + 1))
    return tuple(n for n in range(2, t + 1) if n != u)


def in_F_set(I, u: int) -> bool:
    if u == 0:
        return False
    t = len(I)
    return any(I == E_tuple(n, t) for n in I_set(u, t))


def in_F1_set(I, u: int) -> bool:
    if u == 0:
        return False
    t = len(I)
    return any(I == E_u_tuple(n, u, t) for n in I_set(u, t) if n != u)


def in_G_set(I, u: int) -> bool:
    return u == 1 and I == E_tuple(2, len(I))


def in_G1_set(I, u: int) -> bool:
    t = len(I)
    lo = 1 if u == 1 else 2
    return any(I == E_tuple(n, t) for n in range(lo, t + 1))


def index_profile(I, N: FactoredInteger, u: int, s: int) -> dict:
    """Report m/n/k and the set memberships of an exponent tuple."""
    I = tuple(I)
    if not any(I):
        raise ValueError("all-zero exponent tuple")
    rec = {
        "delta": in_delta(I),
        "square": in_square(I),
        "T_u": in_T_u(I, N.exponents, u),
    }
    if rec["delta"]:
        rec["m"] = tuple_m(I)
        rec["n"] = tuple_n(I)
        rec["k"] = tuple_k(I)
        rec["E"] = in_E_set(I)
        rec["H_u"] = in_H_u(I, u)
        rec["H_u1"] = in_H_u1(I, u)
        rec["F_s"] = in_F_set(I, s)
        rec["F_s1"] = in_F1_set(I, s)
        rec["G_s"] = in_G_set(I, s)
        rec["G_s1"] = in_G1_set(I, s)
    return rec

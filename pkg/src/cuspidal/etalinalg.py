"""Eta-quotient linear algebra: the vanishing-order matrix Lambda(N), its
integral companion Upsilon(N) with Upsilon * Lambda = (kappa(N)/24) * Id,
Ligozat's modularity conditions, and exact q-expansions.

Matrix convention: rows are indexed by the output divisor, columns by the
input divisor, both ascending.  Lambda maps eta exponent vectors (S1) to
divisor coefficient vectors (S2); Upsilon maps the other way.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .divisors import CuspDivisor
from .intarith import as_factored, divisors, kappa, valuation, z_of


def a_entry(n: int, d: int, delta: int) -> Fraction:
    """a_N(d, delta) = (N/z) * gcd(d, delta)^2 / (d * delta); 24 * Lambda entry."""
    z = z_of(n, d)
    g = math.gcd(d, delta)
    return Fraction(n * g * g, z * d * delta)


def lambda_entry(n: int, d: int, delta: int) -> Fraction:
    """Order of vanishing of eta(delta * tau)^24... scaled: a_N(d, delta)/24."""
    return a_entry(n, d, delta) / 24


@lru_cache(maxsize=None)
def lambda24(n: int) -> tuple:
    """24 * Lambda(N) as an integer matrix (rows d, columns delta)."""
    ds = divisors(n)
    rows = []
    for d in ds:
        row = []
        for delta in ds:
            e = a_entry(n, d, delta)
            assert e.denominator == 1
            row.append(int(e))
        rows.append(tuple(row))
    return tuple(rows)


def _upsilon_block_entry(p: int, r: int, i: int, j: int) -> int:
    """Entry (row i, col j) of the tridiagonal block for p^r (0 <= i, j <= r)."""
    m = min(j, r - j)
    if i == j:
        return p if j in (0, r) else p ** (m - 1) * (p * p + 1)
    if abs(i - j) == 1:
        return -(p ** m)
    return 0


@lru_cache(maxsize=None)
def upsilon(n: int) -> tuple:
    """Upsilon(N): tensor over prime powers of the tridiagonal blocks.
    Rows delta (S1 index), columns d (S2 index)."""
    fn = as_factored(n)
    ds = divisors(n)
    rows = []
    for delta in ds:
        row = []
        for d in ds:
            e = 1
            for p, r in fn.factors:
                e *= _upsilon_block_entry(p, r, valuation(delta, p), valuation(d, p))
            row.append(e)
        rows.append(tuple(row))
    return tuple(rows)


def upsilon_column(n: int, d: int) -> tuple:
    j = divisors(n).index(d)
    return tuple(row[j] for row in upsilon(n))


def upsilon_column_profile(n: int, d: int) -> dict:
    """The column identities: plain/delta-weighted/(N/delta)-weighted sums and
    the gcd of the entries."""
    col = upsilon_column(n, d)
    ds = divisors(n)
    return {
        "sum": sum(col),
        "delta_weighted": sum(c * delta for c, delta in zip(col, ds)),
        "codelta_weighted": sum(c * (n // delta) for c, delta in zip(col, ds)),
        "gcd": math.gcd(*col) if len(col) > 1 else abs(col[0]),
    }


def upsilon_apply(n: int, vec) -> tuple:
    """Upsilon(N) times a coefficient vector over divisors of N."""
    return tuple(sum(e * v for e, v in zip(row, vec)) for row in upsilon(n))


# ---------------------------------------------------------------------------
# Ligozat conditions and eta divisors
# ---------------------------------------------------------------------------

def ligozat_check(n: int, r) -> dict:
    """Conditions for prod eta(delta tau)^{r_delta} to be a modular unit on
    X0(N); returns a per-condition report with an overall 'pass' flag."""
    ds = divisors(n)
    assert len(r) == len(ds)
    integral = all(int(x) == x for x in r)
    report = {"integral": integral}
    if integral:
        r = [int(x) for x in r]
        report["weight0"] = sum(r) == 0
        report["delta_sum_24"] = sum(rd * d for rd, d in zip(r, ds)) % 24 == 0
        report["codelta_sum_24"] = sum(rd * (n // d) for rd, d in zip(r, ds)) % 24 == 0
        square = True
        for p in as_factored(n).primes:
            if sum(valuation(d, p) * rd for rd, d in zip(r, ds)) % 2:
                square = False
        report["product_square"] = square
    report["pass"] = all(report.values())
    return report


def eta_divisor(n: int, r) -> CuspDivisor:
    """div(g_r) = Lambda(N) * r as a divisor supported on the (P_d); the
    coefficients are exact rationals (integers for genuine modular units)."""
    ds = divisors(n)
    l24 = lambda24(n)
    coeffs = []
    for row in l24:
        c = Fraction(sum(e * rd for e, rd in zip(row, r)), 24)
        coeffs.append(int(c) if c.denominator == 1 else c)
    return CuspDivisor(n, tuple(coeffs))


# ---------------------------------------------------------------------------
# q-expansions
# ---------------------------------------------------------------------------

def _euler_product(scale: int, K: int) -> list:
    """prod_{n>=1} (1 - q^(scale*n)) mod q^K via the pentagonal number theorem."""
    out = [0] * K
    out[0] = 1
    k = 1
    while True:
        e1 = scale * k * (3 * k - 1) // 2
        e2 = scale * k * (3 * k + 1) // 2
        if e1 >= K and e2 >= K:
            break
        s = 1 if k % 2 == 0 else -1
        if e1 < K:
            out[e1] += s
        if e2 < K:
            out[e2] += s
        k += 1
    return out


def _series_mul(a, b, K):
    out = [0] * K
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b[: K - i]):
                if bj:
                    out[i + j] += ai * bj
    return out


def _series_inv(a, K):
    assert a[0] in (1, -1)
    out = [0] * K
    out[0] = a[0]
    for i in range(1, K):
        out[i] = -a[0] * sum(a[j] * out[i - j] for j in range(1, i + 1) if j < len(a))
    return out


def eta_qexpansion(n: int, r, K: int = 20):
    """The formal expansion of prod eta(delta tau)^{r_delta}: returns
    (leading exponent as a Fraction with denominator dividing 24,
     list of the first K integer series coefficients)."""
    ds = divisors(n)
    assert len(r) == len(ds)
    lead = Fraction(sum(rd * d for rd, d in zip(r, ds)), 24)
    series = [0] * K
    series[0] = 1
    for rd, d in zip(r, ds):
        if rd == 0:
            continue
        base = _euler_product(d, K)
        factor = base if rd > 0 else _series_inv(base, K)
        e = abs(rd)
        acc = factor
        while True:  # binary exponentiation on truncated series
            if e & 1:
                series = _series_mul(series, acc, K)
            e >>= 1
            if not e:
                break
            acc = _series_mul(acc, acc, K)
    return lead, series


def format_qexpansion(lead: Fraction, series) -> str:
    terms = []
    for i, c in enumerate(series):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            q = "q" if i == 1 else f"q^{i}"
            terms.append(f"{'+' if c > 0 and terms else ''}{c} {q}".strip())
    body = " ".join(terms) if terms else "0"
    e24 = Fraction(lead * 24)
    return f"q^({e24.numerator}/24) * ({body})"

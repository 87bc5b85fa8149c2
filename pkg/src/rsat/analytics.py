"""Closed-form bound evaluation, root finding and statistical helpers.

Everything here is pure and deterministic.  Expressions are evaluated in
double precision; they are short products/ratios of logs and powers, so
relative error stays well below 1e-12 over the parameter ranges used.
The factorial moment is exact (a Fraction).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError

ROOT_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound expression plus its comparison verdict."""

    name: str
    value: float
    verdict: str
    k: Optional[int] = None
    c: Optional[float] = None
    v: Optional[int] = None


def thm1_value(k: int, c: float) -> float:
    """k * c * (1 - 2^-k)^(c-1): below 1 means almost-never satisfiable."""
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    if c <= 1:
        raise DomainError(f"c must be > 1, got {c}")
    return k * c * (1.0 - 2.0**-k) ** (c - 1.0)


def thm1_root(k: int) -> float:
    """Unique c > 1 with thm1_value(k, c) = 1 on the decreasing branch.

    The map c -> k c q^(c-1) with q = 1 - 2^-k rises to a single interior
    maximum at c* = -1/ln(q) and then decays to 0, so bisection on
    [c*, inf) is safe.  Absolute tolerance 1e-9 in c.
    """
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    q = 1.0 - 2.0**-k
    lo = -1.0 / math.log(q)
    hi = 2.0 * lo
    while thm1_value(k, hi) >= 1.0:
        hi *= 2.0
    while hi - lo > ROOT_TOL:
        mid = 0.5 * (lo + hi)
        if thm1_value(k, mid) >= 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bejar_bound(v: int) -> float:
    """log base 8/7 of v: the classical almost-never threshold for width 3."""
    if v < 2:
        raise DomainError(f"v must be >= 2, got {v}")
    return math.log(v) / math.log(8.0 / 7.0)


def snake_length(n: int, c: float) -> int:
    """2 * ceil(log n / log(c/2)): the snake length used at ratio c > 2."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if c <= 2:
        raise DomainError(f"c must be > 2, got {c}")
    return 2 * math.ceil(math.log(n) / math.log(c / 2.0))


def falling_factorial(x: int, d: int) -> int:
    out = 1
    for i in range(d):
        out *= x - i
    return out


def exact_factorial_moment(n: int, m: int, k: int, d: Sequence[int]) -> Fraction:
    """E prod_j (R_j)_{d_j} for the multinomial occurrence profile.

    Equals (km)_D / n^D with D = sum(d): placing D marked slots on
    prescribed variables, the per-slot hit probability is 1/n and the
    slots must be distinct.
    """
    if len(d) != n:
        raise ValueError(f"need one exponent per variable: {len(d)} != n = {n}")
    if any(dj < 0 for dj in d):
        raise ValueError("exponents must be nonnegative")
    big_d = sum(d)
    return Fraction(falling_factorial(k * m, big_d), n**big_d)


def expected_tight_bound(n: int, m: int, k: int) -> float:
    """(k c (1 - 2^-k)^(c-1))^n with c = m/n: upper bound on the expected
    number of satisfying tight interpretations."""
    if m <= n:
        raise DomainError(f"requires m > n, got m={m}, n={n}")
    c = m / n
    return thm1_value(k, c) ** n


# ---------------------------------------------------------------------------
# Binomial confidence intervals

# Inverse normal CDF: Acklam's rational approximation plus one Halley step
# through erfc, accurate to machine precision over (0, 1).
_PPF_A = (
    -3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
    1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00,
)
_PPF_B = (
    -5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
    6.680131188771972e01, -1.328068155288572e01,
)
_PPF_C = (
    -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
    -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00,
)
_PPF_D = (
    7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
    3.754408661907416e00,
)


def _norm_ppf(p: float) -> float:
    if not 0.0 < p < 1.0:
        raise DomainError(f"quantile level must be in (0, 1), got {p}")
    a, b, c, d = _PPF_A, _PPF_B, _PPF_C, _PPF_D
    p_low = 0.02425
    if p < p_low:
        q = math.sqrt(-2.0 * math.log(p))
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / (
            (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
        )
    elif p <= 1.0 - p_low:
        q = p - 0.5
        r = q * q
        x = (
            (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5])
            * q
            / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)
        )
    else:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / (
            (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
        )
    err = 0.5 * math.erfc(-x / math.sqrt(2.0)) - p
    u = err * math.sqrt(2.0 * math.pi) * math.exp(0.5 * x * x)
    return x - u / (1.0 + 0.5 * x * u)


def wilson_interval(successes: int, trials: int, confidence: float) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    if not 0 <= successes <= trials:
        raise DomainError(f"successes {successes} outside 0..{trials}")
    if not 0.0 < confidence < 1.0:
        raise DomainError(f"confidence must be in (0, 1), got {confidence}")
    z = _norm_ppf(0.5 + confidence / 2.0)
    p_hat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p_hat + z2 / (2.0 * trials)) / denom
    half = z * math.sqrt(p_hat * (1.0 - p_hat) / trials + z2 / (4.0 * trials * trials)) / denom
    # at p_hat = 0 (resp. 1) the score endpoint is exactly 0 (resp. 1)
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return lo, hi

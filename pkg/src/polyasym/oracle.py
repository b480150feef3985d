"""Reference values of B_n^mu(z) and E_n^mu(z).

Values come from one truncated series build of the generating functions

    (w / (e^w - 1))^mu * e^{zw}          (Bernoulli)
    ((e^w + 1) / 2)^(-mu) * e^{zw}       (Euler)

so every degree up to ``n_max`` costs O(n_max^2) coefficient operations. With
rational ``mu`` and ``z`` the whole computation stays in exact fractions: both
bases have constant term 1, so their mu-th power is exp(mu * log(.)) with
rational coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .approx import ApproxValue, Confidence, Method
from .numeric_core import (
    GUARD_BITS,
    DomainError,
    binomial,
    context,
    is_exact,
    is_hp,
    precision_of,
    to_hp,
    unify,
)
from .series import PowerSeries, exp_series, s_over_expm1, series_mul, series_pow


def _field_pair(mu, z, prec):
    mu, z = unify(mu, z)
    if prec is not None and not is_exact(mu):
        mu, z = to_hp(mu, prec), to_hp(z, prec)
    return mu, z


def _one_like(x):
    return x * 0 + 1


def bernoulli_kernel(n_max: int, mu, one=Fraction(1)) -> PowerSeries:
    """Coefficients of (w/(e^w-1))^mu, i.e. B_k^mu(0)/k!."""
    return series_pow(s_over_expm1(n_max, one), mu)


def euler_kernel(n_max: int, mu, one=Fraction(1)) -> PowerSeries:
    """Coefficients of 2^mu (e^w+1)^(-mu), i.e. E_k^mu(0)/k!."""
    half_sum = PowerSeries([one] + [one / (2 * math.factorial(k)) for k in range(1, n_max + 1)])
    return series_pow(half_sum, -mu)


def _values(kernel, n_max, mu, z, prec):
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    mu, z = _field_pair(mu, z, prec)
    if is_exact(mu):
        series = series_mul(kernel(n_max, mu), exp_series(n_max, z))
        return [series[k] * math.factorial(k) for k in range(n_max + 1)]
    # coefficient sums cancel; carry guard bits and round back
    target = precision_of(mu)
    wp = target + GUARD_BITS + n_max.bit_length()
    mu, z = to_hp(mu, wp), to_hp(z, wp)
    series = series_mul(kernel(n_max, mu, _one_like(mu)), exp_series(n_max, z))
    out = context(target)
    return [out.convert(series[k] * math.factorial(k)) for k in range(n_max + 1)]


def bernoulli_values(n_max: int, mu, z, prec: int | None = None) -> list:
    """B_0^mu(z) .. B_{n_max}^mu(z); exact when mu and z are rational."""
    return _values(bernoulli_kernel, n_max, mu, z, prec)


def euler_values(n_max: int, mu, z, prec: int | None = None) -> list:
    """E_0^mu(z) .. E_{n_max}^mu(z); exact when mu and z are rational."""
    return _values(euler_kernel, n_max, mu, z, prec)


def _polynomial(kernel, n: int, mu) -> PowerSeries:
    """The degree-n polynomial in z as a PowerSeries in z of order n."""
    p = kernel(n, mu, _one_like(Fraction(mu) if is_exact(mu) else mu))
    fact_n = math.factorial(n)
    # [w^n] p(w) e^{zw} = sum_k p_{n-k} z^k / k!
    return PowerSeries([p[n - k] * fact_n / math.factorial(k) for k in range(n + 1)])


def bernoulli_polynomial(n: int, mu) -> PowerSeries:
    return _polynomial(bernoulli_kernel, n, mu)


def euler_polynomial(n: int, mu) -> PowerSeries:
    return _polynomial(euler_kernel, n, mu)


def bernoulli_neg_int(n: int, m: int, z):
    """B_n^{-m}(z) = n!/(n+m)! * sum_r (-1)^(m-r) C(m,r) (z+r)^(n+m)."""
    if m < 0 or n < 0:
        raise DomainError("bernoulli_neg_int needs n, m >= 0")
    z = Fraction(z) if is_exact(z) else z
    total = z * 0
    for r in range(m + 1):
        total += (-1) ** (m - r) * math.comb(m, r) * (z + r) ** (n + m)
    if is_exact(z):
        return total * Fraction(math.factorial(n), math.factorial(n + m))
    return total * math.factorial(n) / math.factorial(n + m)


def euler_neg_int(n: int, m: int, z):
    """E_n^{-m}(z) = 2^-m * sum_r C(m,r) (z+r)^n."""
    if m < 0 or n < 0:
        raise DomainError("euler_neg_int needs n, m >= 0")
    z = Fraction(z) if is_exact(z) else z
    total = z * 0
    for r in range(m + 1):
        total += math.comb(m, r) * (z + r) ** n
    return total / 2**m


def bernoulli_raise_order(n: int, mu, z, prec: int | None = None):
    """B_n^{mu+1}(z) from B_n^mu(z) and B_{n-1}^mu(z)."""
    if n < 1:
        raise DomainError("raise-order recurrence needs n >= 1")
    if mu == 0:
        raise DomainError("raise-order recurrence divides by mu; mu = 0 given")
    mu, z = _field_pair(mu, z, prec)
    vals = bernoulli_values(n, mu, z)
    return ((mu - n) * vals[n] + n * (z - mu) * vals[n - 1]) / mu


def bernoulli_derivative_check(n: int, mu, z=None) -> bool:
    """True iff d/dz B_n^mu = n B_{n-1}^mu as polynomials (and at ``z`` if given)."""
    if n < 1:
        raise DomainError("derivative identity needs n >= 1")
    lhs = bernoulli_polynomial(n, mu).derivative()
    rhs = bernoulli_polynomial(n - 1, mu) * n
    same = all(a == b for a, b in zip(lhs, rhs)) if is_exact(mu) else _close_all(lhs, rhs)
    if z is not None and same:
        same = _close(lhs(z), rhs(z)) if not (is_exact(mu) and is_exact(z)) else lhs(z) == rhs(z)
    return same


def _close(a, b, rel_bits: int = 8):
    if is_exact(a) and is_exact(b):
        return a == b
    x = a if is_hp(a) else b
    ctx = x.context
    scale = max(abs(a), abs(b), 1)
    return abs(a - b) <= scale * ctx.ldexp(1, -ctx.prec + rel_bits)


def _close_all(p, q):
    return all(_close(a, b) for a, b in zip(p, q))


def saddle_estimate_neg_int(n: int, m: int, z, prec: int = 128) -> ApproxValue:
    """(1 - e^{-w0})^m n!/(n+m)! (z+m)^{n+m} with saddle w0 = (n+m)/(z+m).

    Only a cross-check; low confidence is flagged when Re w0 is not large.
    """
    if m < 0 or n < 0:
        raise DomainError("saddle estimate needs n, m >= 0")
    zc = to_hp(z, prec)
    ctx = zc.context
    if zc + m == 0:
        raise DomainError("saddle point w0 = (n+m)/(z+m) undefined at z = -m")
    w0 = (n + m) / (zc + m)
    value = (1 - ctx.exp(-w0)) ** m * ctx.factorial(n) / ctx.factorial(n + m) * (zc + m) ** (n + m)
    notes = () if w0.real > 4 else ("Re w0 not large; low confidence",)
    err = abs(ctx.exp(-w0)) * (m + 1) * abs(value) if m else ctx.mpf(0)
    return ApproxValue(value, Method.SADDLE, terms_used=1, error_estimate=err,
                       confidence=Confidence.EXACT if m == 0 else Confidence.ASYMPTOTIC, notes=notes)


__all__ = [
    "bernoulli_values", "euler_values", "bernoulli_polynomial", "euler_polynomial",
    "bernoulli_neg_int", "euler_neg_int", "bernoulli_raise_order",
    "bernoulli_derivative_check", "saddle_estimate_neg_int", "binomial",
]

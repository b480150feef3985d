"""Large-degree approximations of the generalized Euler polynomials.

Mirrors :mod:`polyasym.bernoulli` with the poles moved to the odd multiples
(2k+1)*pi*i, the branch points to +-pi*i, and zeta = pi*(z - mu/2),
chi = zeta - n*pi/2.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .approx import ApproxValue, Confidence, Method
from .bernoulli import (
    _leading_from_terms,
    _neg_int_terms,
    _poly_add,
    _poly_eval,
    _twopoint_sum,
    _watson,
    default_fourier_terms,
    loop_coefficients,
    region_classify,
)
from .numeric_core import (
    DEFAULT_PRECISION,
    DomainError,
    ExpansionParams,
    Family,
    context,
    is_exact,
    pochhammer,
    to_hp,
    binomial,
    working_precision,
)
from .oracle import bernoulli_polynomial
from .series import (
    Flavor,
    PowerSeries,
    TwoPointSeries,
    exp_series,
    s_over_expm1,
    series_mul,
    series_pow,
    two_point_expand,
)


def neg_int_leading_E(n: int, m: int, z, prec: int = DEFAULT_PRECISION) -> ApproxValue:
    """Dominant part of E_n^{-m}(z) = 2^-m sum_r C(m,r) (z+r)^n."""
    if m < 0 or n < 0:
        raise DomainError("neg_int_leading_E needs n, m >= 0")
    if m == 0 and z == 0 and n > 0:
        raise DomainError("degenerate point |z+m| = |z| = 0")
    z = Fraction(z) if is_exact(z) else to_hp(z, prec)
    terms = _neg_int_terms(n, m, z, n, lambda r: 1)
    scale = Fraction(1, 2**m)
    if not is_exact(z):
        scale = z.context.mpf(1) / 2**m
    return _leading_from_terms(terms, region_classify(m, z, prec), scale)


def fourier_E1(n: int, z, K: int, prec: int = DEFAULT_PRECISION) -> ApproxValue:
    """4 n! sum_{k=0..K} sin((2k+1) pi z - pi n/2) / ((2k+1) pi)^(n+1)."""
    if n < 0 or K < 0:
        raise DomainError("fourier_E1 needs n >= 0 and K >= 0")
    wp = working_precision(prec, n)
    ctx = context(wp)
    zc = to_hp(z, wp)
    x, y = zc.real, zc.imag
    if n == 0 and not (0 < x < 1):
        raise DomainError("n = 0 Fourier series needs 0 < Re z < 1")
    p = ctx.pi
    total = ctx.mpc(0)
    for k in range(K + 1):
        odd = 2 * k + 1
        total += ctx.sin(odd * p * zc - p * n / 2) / (odd * p) ** (n + 1)
    nxt = 2 * K + 3
    envelope = 4 * ctx.factorial(n) * ctx.cosh(nxt * p * y) / (nxt * p) ** (n + 1)
    real_unit = y == 0 and (0 <= x <= 1 if n > 0 else 0 < x < 1)
    return ApproxValue(4 * ctx.factorial(n) * total, Method.FOURIER, terms_used=K + 1,
                       error_estimate=envelope,
                       confidence=Confidence.CONVERGENT if real_unit else Confidence.ASYMPTOTIC)


def leading_E1(n: int, z, prec: int = DEFAULT_PRECISION):
    """4 n!/pi^(n+1) sin(pi z - pi n/2)."""
    wp = working_precision(prec, n)
    ctx = context(wp)
    zc = to_hp(z, wp)
    return 4 * ctx.factorial(n) / ctx.pi ** (n + 1) * ctx.sin(ctx.pi * zc - ctx.pi * n / 2)


def epsilon_polynomial(m: int, n: int) -> dict:
    """epsilon_k^m(n, z) * y^(m-1) as {(i, j): coeff of z^i y^j}, y = (2k+1) pi i.

    The closed form carries generalized *Bernoulli* polynomials B_nu^m(z).
    """
    if m < 1 or n < 0:
        raise DomainError("epsilon coefficients need m >= 1, n >= 0")
    out = {}
    lead = 2 ** (m - 1) * math.comb(n + m - 1, m - 1)
    for nu in range(m):
        b_nu = bernoulli_polynomial(nu, m)
        weight = Fraction(lead * math.comb(m - 1, nu) * math.factorial(n + m - nu - 1),
                          math.factorial(n + m - 1)) * (-1) ** nu
        out = _poly_add(out, {(i, nu): weight * c for i, c in enumerate(b_nu) if c != 0})
    return out


def _odd_pole(k, ctx):
    return ctx.mpc(0, (2 * k + 1) * ctx.pi)


def epsilon_coeff(m: int, n: int, z, k: int, prec: int = DEFAULT_PRECISION):
    """Weight epsilon_k^m(n, z) of the pole at (2k+1) pi i."""
    ctx = context(prec)
    y = _odd_pole(k, ctx)
    return _poly_eval(epsilon_polynomial(m, n), to_hp(z, prec), y) / y ** (m - 1)


def epsilon_residue(m: int, n: int, z, k: int, prec: int = DEFAULT_PRECISION):
    """epsilon_k^m(n, z) from the numerically expanded residue at w = (2k+1) pi i.

    d_{m-1} is the s^(m-1) coefficient of
    (-1)^m e^{yz} (s/(e^s-1))^m e^{zs} (s+y)^(-n-1); then
    epsilon = -2^(m-1) d_{m-1} y^(n+1) e^{-yz}.
    """
    if m < 1:
        raise DomainError("epsilon coefficients need m >= 1")
    ctx = context(prec)
    one = ctx.mpc(1)
    y = _odd_pole(k, ctx)
    zc = to_hp(z, prec)
    order = m - 1
    kernel = series_pow(s_over_expm1(order, one), m)
    shift = series_pow(PowerSeries([one, 1 / y], order), -n - 1) / y ** (n + 1)
    local = series_mul(series_mul(kernel, exp_series(order, zc)), shift)
    d = (-1) ** m * local[order]
    return -(2 ** (m - 1)) * d * y ** (n + 1)


def fourier_Em(n: int, m: int, z, K: int | None = None, prec: int = DEFAULT_PRECISION) -> ApproxValue:
    """Residue series over the poles (2k+1) pi i, pairing k with -1-k, k = 0..K."""
    if m < 1:
        raise DomainError("fourier_Em needs m >= 1")
    if K is None:
        K = default_fourier_terms(n, m, prec)
    if m == 1:
        return fourier_E1(n, z, K, prec)
    if n < 0 or K < 0:
        raise DomainError("fourier_Em needs n >= 0 and K >= 0")
    wp = working_precision(prec, n)
    ctx = context(wp)
    zc = to_hp(z, wp)
    eps = epsilon_polynomial(m, n)

    def term(k):
        y = _odd_pole(k, ctx)
        weight = _poly_eval(eps, zc, y) / y ** (m - 1)
        return 2 * ctx.factorial(n) * weight * ctx.exp(y * zc) / y ** (n + 1)

    total = ctx.mpc(0)
    for k in range(K + 1):
        total += term(k) + term(-1 - k)
    err = abs(term(K + 1)) + abs(term(-K - 2))
    real_unit = zc.imag == 0 and 0 <= zc.real <= 1
    return ApproxValue(total, Method.FOURIER, terms_used=K + 1, error_estimate=err,
                       confidence=Confidence.CONVERGENT if real_unit else Confidence.ASYMPTOTIC)


def leading_Em(n: int, m: int, z, prec: int = DEFAULT_PRECISION):
    """Poles +-pi i only, with per-nu phases tau = (z - n/2 - (m-1)/2 - nu/2) pi."""
    if m < 1:
        raise DomainError("leading_Em needs m >= 1")
    wp = working_precision(prec, n)
    ctx = context(wp)
    zc = to_hp(z, wp)
    p = ctx.pi
    total = ctx.mpc(0)
    for nu in range(m):
        b_nu = bernoulli_polynomial(nu, m)(zc)
        ratio = ctx.mpf(math.factorial(n + m - nu - 1)) / math.factorial(n + m - 1)
        tau = (zc - ctx.mpf(n) / 2 - ctx.mpf(m - 1) / 2 - ctx.mpf(nu) / 2) * p
        total += b_nu * math.comb(m - 1, nu) * ratio * p**nu * ctx.sin(tau)
    return 2 ** (m + 1) * ctx.factorial(n) / p ** (n + m) * math.comb(n + m - 1, m - 1) * total


def watson_h_coeffs(mu, z, K: int, prec: int = DEFAULT_PRECISION) -> list:
    """h_0..h_K of h(s) = e^{zu} (pi i s/(e^u-1))^mu, u = pi i (e^s - 1)."""
    if K < 0:
        raise DomainError("K must be >= 0")
    ctx = context(prec)
    return loop_coefficients(ctx.mpc(0, ctx.pi), mu, z, K, mu_shift=False)


def h_closed_forms(mu, z, prec: int = DEFAULT_PRECISION) -> list:
    """The tabulated h_0..h_3 as (real, imaginary) pairs, kept verbatim.

    The table's h_2 real part and the leading factor z on h_3's real part do
    not follow from the series; they are kept so comparisons show the gap.
    """
    ctx = context(prec)
    mu = to_hp(mu, prec).real
    zr = to_hp(z, prec).real
    p = ctx.pi
    zeta = p * (zr - mu / 2)
    return [
        (ctx.mpf(1), ctx.mpf(0)),
        (-mu / 2, zeta),
        ((3 * (1 - 2 * p**2) * mu**2 + (13 * p**2 - 12 * zeta * p - 1) * mu - 12 * zeta**2) / 24,
         (1 - mu) * zeta / 2),
        (zr * (-mu**3 + (1 - p**2) * mu**2 + 2 * (p**2 + 6 * zeta**2) * mu - 24 * zeta**2) / 48,
         zeta * (3 * mu**2 + (p**2 - 7) * mu - 4 * zeta**2 + 4) / 24),
    ]


def watson_expansion_E(n: int, mu, z, K: int, prec: int = DEFAULT_PRECISION) -> ApproxValue:
    """Loop-integral expansion of E_n^mu(z), terms k = 0..K, mu not an integer."""
    return _watson(n, mu, z, K, prec, Family.EULER)


def watson_leading_E(n: int, mu, z, prec: int = DEFAULT_PRECISION):
    """2^(mu+1) n! n^(mu-1)/(pi^(n+mu) Gamma(mu)) cos pi(z - mu/2 - n/2)."""
    wp = working_precision(prec, n)
    ctx = context(wp)
    muc, zc = to_hp(mu, wp), to_hp(z, wp)
    pre = 2 ** (muc + 1) * ctx.factorial(n) * ctx.power(n, muc - 1) / (ctx.pi ** (n + muc) * ctx.gamma(muc))
    return pre * ctx.cos(ctx.pi * (zc - muc / 2 - ctx.mpf(n) / 2))


# -- two-point expansions about +-pi i --------------------------------------


def euler_twopoint_local(mu, z, prec: int):
    """Local series of g(w) = ((w^2+pi^2)/(2pi))^mu (e^w+1)^-mu e^{wz} at w0 = +-pi i.

    Continued from w = 0 the bracket has phase -pi/2 at +pi i, so
    g(w0 + t) = e^{-+ i pi mu/2} [(1 + t/(2 w0)) t/(e^t-1)]^mu e^{(w0+t) z}.
    """
    ctx = context(prec)
    muc, zc = to_hp(mu, prec), to_hp(z, prec)
    one = ctx.mpc(1)

    def local(w0, order):
        sign = 1 if w0.imag > 0 else -1
        base = series_mul(PowerSeries([one, 1 / (2 * w0)], order), s_over_expm1(order, one))
        phase = ctx.exp(-sign * 1j * ctx.pi * muc / 2)
        return series_mul(series_pow(base, muc), exp_series(order, zc)) * (phase * ctx.exp(w0 * zc))

    return local


def euler_twopoint_function(w, mu, z, prec: int = DEFAULT_PRECISION):
    """g(w) with principal powers; valid near the positive real axis."""
    ctx = context(prec)
    w, muc, zc = to_hp(w, prec), to_hp(mu, prec), to_hp(z, prec)
    return (ctx.power((w * w + ctx.pi**2) / (2 * ctx.pi), muc)
            * ctx.power(1 / (ctx.exp(w) + 1), muc) * ctx.exp(w * zc))


def twopoint_coeffs_E(mu, z, K: int, flavor: Flavor = Flavor.STANDARD,
                      prec: int = DEFAULT_PRECISION) -> TwoPointSeries:
    """(gamma_k, delta_k) (or tilde versions) for k = 0..K."""
    return two_point_expand(euler_twopoint_local(mu, z, prec), context(prec).pi, flavor, K)


def twopoint_closed_forms_E(mu, z, prec: int = DEFAULT_PRECISION) -> list:
    """Tabulated (gamma_k, delta_k) for k = 0, 1, 2."""
    P = ExpansionParams(0, mu, z, Family.EULER, prec)
    ctx = P.ctx
    p, m, eta = ctx.pi, P.mu_hp, P.eta
    c, s = ctx.cos(P.zeta), ctx.sin(P.zeta)
    return [
        (c, s / p),
        (-(m * c + p * eta * s) / (4 * p**2),
         (p * eta * c + (2 - m) * s) / (4 * p**3)),
        (((-9 * m - 3 * p**2 * eta**2 + p**2 * m + 3 * m**2) * c
          + 6 * p * eta * (m - 1) * s) / (96 * p**4),
         (6 * p * eta * (3 - m) * c
          + (36 - 21 * m + 3 * m**2 + p**2 * m - 3 * p**2 * eta**2) * s) / (96 * p**5)),
    ]


def psi(k: int, half_n: int, mu, prec: int = DEFAULT_PRECISION):
    """Psi_k^{(2n)} = pi^{2k - 2mu - 2n} C(k - mu, n), n = half_n."""
    ctx = context(prec)
    muc = to_hp(mu, prec)
    c = binomial(Fraction(k) - mu, half_n) if is_exact(mu) else binomial(k - muc, half_n)
    return ctx.power(ctx.pi, 2 * k - 2 * muc - 2 * half_n) * to_hp(c, prec)


def psi_tilde(k: int, half_n: int, mu, prec: int = DEFAULT_PRECISION):
    """(-1)^{n+k} pi^{-2mu-2n} (mu - k)_{n+k}/(n+k)!."""
    ctx = context(prec)
    muc = to_hp(mu, prec)
    poch = pochhammer(Fraction(mu) - k, half_n + k) if is_exact(mu) else pochhammer(muc - k, half_n + k)
    return ((-1) ** (half_n + k) * ctx.power(ctx.pi, -2 * muc - 2 * half_n) * to_hp(poch, prec)
            / math.factorial(half_n + k))


def twopoint_sum_E(n: int, mu, z, K: int, flavor: Flavor = Flavor.STANDARD,
                   prec: int = DEFAULT_PRECISION) -> ApproxValue:
    """E_n^mu(z) = (4 pi)^mu n! sum gamma_k Psi_k (even n) or delta_k Psi_k (odd n)."""
    return _twopoint_sum(n, mu, z, K, flavor, prec, Family.EULER)


def psi_ratio(half_n: int, mu, k: int, prec: int = DEFAULT_PRECISION):
    """Psi_{k+1}^{(2n)} / Psi_k^{(2n)} from the two Psi values."""
    denom = psi(k, half_n, mu, prec)
    if denom == 0:
        raise DomainError("Psi_k vanishes: the ratio has a pole")
    return psi(k + 1, half_n, mu, prec) / denom


def twopoint_leading_E(half_n: int, mu, z, prec: int = DEFAULT_PRECISION):
    """(-1)^n (2n)! 2^{2mu}/(pi^{2n+mu} Gamma(mu)) Gamma(n+mu)/n! cos pi(z - mu/2)."""
    n2 = 2 * half_n
    wp = working_precision(prec, n2)
    ctx = context(wp)
    muc, zc = to_hp(mu, wp), to_hp(z, wp)
    return ((-1) ** half_n * ctx.factorial(n2) * 4**muc / (ctx.pi ** (n2 + muc) * ctx.gamma(muc))
            * ctx.gamma(half_n + muc) / ctx.factorial(half_n) * ctx.cos(ctx.pi * (zc - muc / 2)))


def watson_leading_even_E(half_n: int, mu, z, prec: int = DEFAULT_PRECISION):
    """(-1)^n (2n)! 2^{2mu} n^{mu-1}/(pi^{2n+mu} Gamma(mu)) cos pi(z - mu/2)."""
    n2 = 2 * half_n
    wp = working_precision(prec, n2)
    ctx = context(wp)
    muc, zc = to_hp(mu, wp), to_hp(z, wp)
    return ((-1) ** half_n * ctx.factorial(n2) * 4**muc * ctx.power(half_n, muc - 1)
            / (ctx.pi ** (n2 + muc) * ctx.gamma(muc)) * ctx.cos(ctx.pi * (zc - muc / 2)))

"""Large-degree approximations of the generalized Bernoulli polynomials.

Three regimes, by the order mu:

* mu = -m (m = 0, 1, ...): a finite sum; for large n one or two of its terms
  dominate depending on Re z versus -m/2.
* mu = m (m = 1, 2, ...): residue (Fourier) series over the poles 2*pi*i*k,
  with polynomial weights beta_k^m(n, z).
* other mu: Watson's lemma on loops around the branch points +-2*pi*i, and the
  two-point Taylor expansions about the same pair of points.

The phase used everywhere is zeta = pi*(z - mu/2), chi = 2*zeta - n*pi/2.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .approx import ApproxValue, Confidence, Method, RegionCase
from .numeric_core import (
    DEFAULT_PRECISION,
    DomainError,
    ExpansionParams,
    Family,
    binomial,
    context,
    is_exact,
    is_hp,
    is_integer,
    as_int,
    pi,
    pochhammer,
    real_part,
    to_hp,
    working_precision,
)
from .oracle import bernoulli_polynomial
from .series import (
    Flavor,
    PowerSeries,
    TwoPointSeries,
    exp_series,
    expm1_over_s,
    s_over_expm1,
    series_compose,
    series_exp,
    series_inv,
    series_mul,
    series_pow,
    two_point_expand,
)

FOURIER_MAX_TERMS = 64


def _hp(x, prec):
    return to_hp(x, prec)


# -- mu = -m ---------------------------------------------------------------


def region_classify(m: int, z, prec: int = DEFAULT_PRECISION) -> RegionCase:
    """Which end of the finite sum dominates for mu = -m."""
    x = real_part(z)
    if is_exact(x):
        d = Fraction(x) + Fraction(m, 2)
        if d == 0:
            return RegionCase.BOUNDARY
        return RegionCase.UPPER_DOMINANT if d > 0 else RegionCase.LOWER_DOMINANT
    ctx = context(prec)
    d = ctx.convert(x) + ctx.mpf(m) / 2
    if abs(d) <= ctx.ldexp(1, -(prec // 2)):
        return RegionCase.BOUNDARY
    return RegionCase.UPPER_DOMINANT if d > 0 else RegionCase.LOWER_DOMINANT


def _neg_int_terms(n, m, z, power, sign):
    """Finite-sum terms indexed by r, without the overall scale."""
    return [sign(r) * math.comb(m, r) * (z + r) ** power for r in range(m + 1)]


def _leading_from_terms(terms, region, scale):
    m = len(terms) - 1
    if region is RegionCase.UPPER_DOMINANT:
        lead_idx = (m,)
    elif region is RegionCase.LOWER_DOMINANT:
        lead_idx = (0,)
    else:
        lead_idx = (0, m) if m else (0,)
    lead = sum(terms[r] for r in lead_idx)
    rest = [abs(terms[r]) for r in range(m + 1) if r not in lead_idx]
    if lead == 0:
        raise DomainError("leading term vanishes; relative error undefined (degenerate z)")
    err = max(rest) / abs(lead) if rest else 0
    if is_exact(err) and not isinstance(err, int):
        err = Fraction(err)
    confidence = Confidence.EXACT if not rest else Confidence.ASYMPTOTIC
    value = lead * scale
    return ApproxValue(value, Method.LEADING, terms_used=len(lead_idx), error_estimate=err,
                       confidence=confidence, notes=(f"region: {region.value}",))


def neg_int_leading(n: int, m: int, z, prec: int = DEFAULT_PRECISION) -> ApproxValue:
    """Dominant part of B_n^{-m}(z); error_estimate is |next-largest term|/|leading|."""
    if m < 0 or n < 0:
        raise DomainError("neg_int_leading needs n, m >= 0")
    if m == 0 and z == 0 and n > 0:
        raise DomainError("degenerate point |z+m| = |z| = 0")
    z = Fraction(z) if is_exact(z) else _hp(z, prec)
    terms = _neg_int_terms(n, m, z, n + m, lambda r: (-1) ** (m - r))
    if is_exact(z):
        scale = Fraction(math.factorial(n), math.factorial(n + m))
    else:
        scale = z.context.factorial(n) / z.context.factorial(n + m)
    return _leading_from_terms(terms, region_classify(m, z, prec), scale)


# -- mu = m: residue / Fourier series ---------------------------------------


def fourier_B1(n: int, z, K: int, prec: int = DEFAULT_PRECISION) -> ApproxValue:
    """Partial sum k = 1..K of the cos/sin Fourier series of B_n(z)."""
    if n < 1:
        raise DomainError("fourier_B1 needs n >= 1")
    wp = working_precision(prec, n)
    ctx = context(wp)
    zc = _hp(z, wp)
    x, y = zc.real, zc.imag
    if n == 1 and not (0 < x < 1):
        raise DomainError("n = 1 Fourier series needs 0 < Re z < 1")
    if K < 1:
        raise DomainError("fourier_B1 needs K >= 1")
    two_pi = 2 * pi(wp)
    half, odd = divmod(n, 2)
    trig = ctx.sin if odd else ctx.cos
    sign = -1 if half % 2 == 0 else 1  # (-1)^(half+1)
    scale = 2 * sign * ctx.factorial(n)
    total = ctx.mpc(0)
    for k in range(1, K + 1):
        total += trig(two_pi * k * zc) / (two_pi * k) ** n
    envelope = 2 * ctx.factorial(n) * ctx.cosh(two_pi * (K + 1) * y) / (two_pi * (K + 1)) ** n
    real_unit = y == 0 and (0 <= x <= 1 if n > 1 else 0 < x < 1)
    return ApproxValue(scale * total, Method.FOURIER, terms_used=K, error_estimate=envelope,
                       confidence=Confidence.CONVERGENT if real_unit else Confidence.ASYMPTOTIC)


def leading_B1(n: int, z, prec: int = DEFAULT_PRECISION):
    """2(-1)^(n+1) n!/(2pi)^n cos(2 pi z + pi n/2): the k = +-1 terms."""
    wp = working_precision(prec, n)
    ctx = context(wp)
    zc = _hp(z, wp)
    p = pi(wp)
    return 2 * (-1) ** (n + 1) * ctx.factorial(n) / (2 * p) ** n * ctx.cos(2 * p * zc + p * n / 2)


# beta_k^m(n, z) as an exact polynomial in z and x = 2*pi*i*k.
# Keys are (power of z, power of x).


def _poly_add(p, q, c=1):
    out = dict(p)
    for key, v in q.items():
        out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v != 0}


def _poly_mul(p, q):
    out = {}
    for (a, b), u in p.items():
        for (c, d), v in q.items():
            key = (a + c, b + d)
            out[key] = out.get(key, 0) + u * v
    return {k: v for k, v in out.items() if v != 0}


def _poly_dz(p):
    return {(a - 1, b): a * v for (a, b), v in p.items() if a > 0}


def _poly_eval(p, z, x):
    total = 0
    for (a, b), v in p.items():
        total += v * z**a * x**b
    return total


def beta_polynomial(m: int, n: int) -> dict:
    """beta_k^m(n, z) from the closed form, as {(i, j): coeff of z^i x^j}, x = 2 pi i k."""
    if m < 1:
        raise DomainError("beta coefficients need m >= 1")
    if m > n:
        raise DomainError("Fourier form needs m <= n")
    out = {}
    lead = (-1) ** (m - 1) * math.comb(n - 1, m - 1)
    for nu in range(m):
        b_nu = bernoulli_polynomial(nu, m)
        weight = Fraction(lead * math.comb(m - 1, nu) * math.factorial(n - nu - 1), math.factorial(n - 1))
        weight *= (-1) ** nu
        term = {(i, nu): weight * c for i, c in enumerate(b_nu) if c != 0}
        out = _poly_add(out, term)
    return out


def beta_recurrence_polynomial(m: int, n: int) -> dict:
    """beta_k^m(n, z) built by the raise-order recurrence from beta^1 = 1."""
    if m < 1:
        raise DomainError("beta coefficients need m >= 1")
    beta = {(0, 0): Fraction(1)}
    for j in range(1, m):
        # j beta^{j+1} = [j - n + x(z - j)] beta^j + (z - j) d/dz beta^j
        factor = {(0, 0): Fraction(j - n), (1, 1): Fraction(1), (0, 1): Fraction(-j)}
        z_minus_j = {(1, 0): Fraction(1), (0, 0): Fraction(-j)}
        nxt = _poly_add(_poly_mul(factor, beta), _poly_mul(z_minus_j, _poly_dz(beta)))
        beta = {key: v / j for key, v in nxt.items()}
    return beta


def _two_pi_i_k(k, ctx):
    return ctx.mpc(0, 2 * ctx.pi * k)


def beta_coeff(m: int, n: int, z, k: int, prec: int = DEFAULT_PRECISION):
    """Weight beta_k^m(n, z) of the pole at 2 pi i k, from the closed form."""
    if k == 0:
        raise DomainError("beta_k is defined for k != 0")
    ctx = context(prec)
    return _poly_eval(beta_polynomial(m, n), _hp(z, prec), _two_pi_i_k(k, ctx))


def beta_coeff_recurrence(m: int, n: int, z, k: int, prec: int = DEFAULT_PRECISION):
    if k == 0:
        raise DomainError("beta_k is defined for k != 0")
    ctx = context(prec)
    return _poly_eval(beta_recurrence_polynomial(m, n), _hp(z, prec), _two_pi_i_k(k, ctx))


def beta_residue(m: int, n: int, z, k: int, prec: int = DEFAULT_PRECISION):
    """beta_k^m(n, z) from a numerically expanded residue at w = 2 pi i k.

    c_{m-1} is read off the local series of
    e^{xz} (s/(e^s-1))^m e^{zs} (s+x)^{m-n-1}, x = 2 pi i k, and
    beta = c_{m-1} x^n e^{-xz}.
    """
    if k == 0:
        raise DomainError("beta_k is defined for k != 0")
    ctx = context(prec)
    one = ctx.mpc(1)
    x = _two_pi_i_k(k, ctx)
    zc = _hp(z, prec)
    order = m - 1
    kernel = series_pow(s_over_expm1(order, one), m)
    shift = series_pow(PowerSeries([one, 1 / x], order), m - n - 1) * x ** (m - n - 1)
    local = series_mul(series_mul(kernel, exp_series(order, zc)), shift)
    # the e^{xz} of the expansion cancels against beta's e^{-xz}
    return local[order] * x**n


def default_fourier_terms(n: int, m: int = 1, prec: int = DEFAULT_PRECISION) -> int:
    """Smallest K whose first omitted term is below 2^-prec relative to the first."""
    if n - m + 1 <= 0:
        return FOURIER_MAX_TERMS
    for K in range(1, FOURIER_MAX_TERMS + 1):
        if (n - m + 1) * math.log2(K + 1) > prec:
            return K
    return FOURIER_MAX_TERMS


def fourier_Bm(n: int, m: int, z, K: int | None = None, prec: int = DEFAULT_PRECISION) -> ApproxValue:
    """Partial residue series over k = +-1..+-K for B_n^m(z)."""
    if m < 1 or m >= n:
        raise DomainError("fourier_Bm needs 1 <= m < n")
    if K is None:
        K = default_fourier_terms(n, m, prec)
    if m == 1:
        return fourier_B1(n, z, K, prec)
    wp = working_precision(prec, n)
    ctx = context(wp)
    zc = _hp(z, wp)
    beta = beta_polynomial(m, n)

    def term(k):
        x = _two_pi_i_k(k, ctx)
        return -ctx.factorial(n) * _poly_eval(beta, zc, x) * ctx.exp(x * zc) / x**n

    total = ctx.mpc(0)
    for k in range(1, K + 1):
        total += term(k) + term(-k)
    err = abs(term(K + 1)) + abs(term(-K - 1))
    real_unit = zc.imag == 0 and 0 < zc.real < 1
    return ApproxValue(total, Method.FOURIER, terms_used=K, error_estimate=err,
                       confidence=Confidence.CONVERGENT if real_unit else Confidence.ASYMPTOTIC)


def leading_Bm(n: int, m: int, z, prec: int = DEFAULT_PRECISION):
    """Two-term (k = +-1) form with per-nu phases sigma = (2z + n/2 - nu/2) pi."""
    if m < 1 or m > n:
        raise DomainError("leading_Bm needs 1 <= m <= n")
    wp = working_precision(prec, n)
    ctx = context(wp)
    zc = _hp(z, wp)
    p = pi(wp)
    total = ctx.mpc(0)
    for nu in range(m):
        b_nu = bernoulli_polynomial(nu, m)(zc)
        ratio = ctx.mpf(math.factorial(n - nu - 1)) / math.factorial(n - 1)
        sigma = (2 * zc + ctx.mpf(n) / 2 - ctx.mpf(nu) / 2) * p
        total += b_nu * math.comb(m - 1, nu) * ratio * (2 * p) ** nu * ctx.cos(sigma)
    return 2 * (-1) ** (m + n) * ctx.factorial(n) / (2 * p) ** n * math.comb(n - 1, m - 1) * total


# -- general mu: Watson's lemma on the loops --------------------------------


def loop_coefficients(a, mu, z, K: int, mu_shift: bool) -> list:
    """Taylor coefficients of (a s/(e^u - 1))^mu e^{z u (+ mu s)}, u = a(e^s - 1).

    ``a`` is the branch point (+-2 pi i for Bernoulli, +-pi i for Euler);
    ``mu_shift`` adds the e^{mu s} factor of the Bernoulli integrand.
    """
    one = a * 0 + 1
    mu = to_hp(mu, a.context.prec)
    z = to_hp(z, a.context.prec)
    order = K
    e_minus_1 = exp_series(order, one) - 1
    u = e_minus_1 * a
    # a s/(e^u - 1) = [s/(e^s - 1)] / [(e^u - 1)/u]
    q_of_u = series_compose(expm1_over_s(order, one), u)
    ratio = series_mul(s_over_expm1(order, one), series_inv(q_of_u))
    body = series_pow(ratio, mu)
    exponent = u * z
    if mu_shift:
        exponent = exponent + PowerSeries.variable(order, one) * mu
    return list(series_mul(body, series_exp(exponent)).coeffs)


def watson_g_coeffs(mu, z, K: int, prec: int = DEFAULT_PRECISION) -> list:
    """g_0..g_K of g(s) = (2 pi i s/(e^u-1))^mu e^{zu + mu s}, u = 2 pi i (e^s - 1)."""
    if K < 0:
        raise DomainError("K must be >= 0")
    ctx = context(prec)
    a = ctx.mpc(0, 2 * ctx.pi)
    return loop_coefficients(a, mu, z, K, mu_shift=True)


def g_closed_forms(mu, z, prec: int = DEFAULT_PRECISION) -> list:
    """The tabulated g_0..g_3 as (real part, imaginary part) in terms of zeta."""
    ctx = context(prec)
    mu = _hp(mu, prec).real
    p = ctx.pi
    zeta = p * (_hp(z, prec).real - mu / 2)
    return [
        (ctx.mpf(1), ctx.mpf(0)),
        (mu / 2, 2 * zeta),
        ((3 * mu**2 + (4 * p**2 - 1) * mu - 48 * zeta**2) / 24, (1 + mu) * zeta),
        ((mu**3 + (4 * p**2 - 1) * mu**2 + 8 * (p**2 - 6 * zeta**2) * mu - 96 * zeta**2) / 48,
         zeta * (3 * mu**2 + (4 * p**2 + 5) * mu - 16 * zeta**2 + 4) / 12),
    ]


def _reject_integer_mu(mu):
    if is_integer(mu):
        raise DomainError(
            f"the loop expansion needs non-integer mu (got {mu}); use the finite-sum path "
            "for mu <= 0 or the Fourier path for mu >= 1"
        )


def _watson(n, mu, z, K, prec, family):
    """Sum over both loops: pre * [e^{i chi} S_+ + e^{-i chi} S_-] with half-normalized pre."""
    if n < 1:
        raise DomainError("Watson expansion needs n >= 1")
    if K < 0:
        raise DomainError("K must be >= 0")
    _reject_integer_mu(mu)
    wp = working_precision(prec, n)
    ctx = context(wp)
    params = ExpansionParams(n, mu, z, family, wp)
    muc, zc = params.mu_hp, params.z_hp
    if family is Family.BERNOULLI:
        a = ctx.mpc(0, 2 * ctx.pi)
        pre = ctx.factorial(n) * ctx.power(n, muc - 1) / ((2 * ctx.pi) ** n * ctx.gamma(muc))
        shift = True
    else:
        a = ctx.mpc(0, ctx.pi)
        pre = 2**muc * ctx.factorial(n) * ctx.power(n, muc - 1) / (ctx.pi ** (n + muc) * ctx.gamma(muc))
        shift = False
    upper = loop_coefficients(a, muc, zc, K + 1, shift)
    lower = loop_coefficients(-a, muc, zc, K + 1, shift)
    chi = params.chi
    e_plus, e_minus = ctx.exp(1j * chi), ctx.exp(-1j * chi)

    def term(k):
        w = pochhammer(1 - muc, k) / ctx.power(n, k)
        return w * (e_plus * upper[k] + e_minus * lower[k])

    total = ctx.mpc(0)
    for k in range(K + 1):
        total += term(k)
    err = abs(pre * term(K + 1))
    return ApproxValue(pre * total, Method.WATSON, terms_used=K + 1, error_estimate=err,
                       confidence=Confidence.ASYMPTOTIC)


def watson_expansion_B(n: int, mu, z, K: int, prec: int = DEFAULT_PRECISION) -> ApproxValue:
    """Loop-integral expansion of B_n^mu(z), terms k = 0..K, mu not an integer."""
    return _watson(n, mu, z, K, prec, Family.BERNOULLI)


def watson_leading_B(n: int, mu, z, prec: int = DEFAULT_PRECISION):
    """2 n! n^(mu-1)/((2pi)^n Gamma(mu)) cos pi(2z - mu - n/2)."""
    wp = working_precision(prec, n)
    ctx = context(wp)
    muc, zc = _hp(mu, wp), _hp(z, wp)
    pre = 2 * ctx.factorial(n) * ctx.power(n, muc - 1) / ((2 * ctx.pi) ** n * ctx.gamma(muc))
    return pre * ctx.cos(ctx.pi * (2 * zc - muc - ctx.mpf(n) / 2))


# -- general mu: two-point Taylor expansions about +-2 pi i -----------------


def bernoulli_twopoint_local(mu, z, prec: int):
    """Local Taylor series of f(w) = (8pi^2)^-mu [(w^2+4pi^2) w/(e^w-1)]^mu e^{wz} at w0 = +-2pi i.

    The bracket has phase -pi at +2 pi i when continued from w = 0, so
    f(w0 + t) = e^{-+ i pi mu} [(1 + t/(2 w0))(1 + t/w0) t/(e^t-1)]^mu e^{(w0+t) z}.
    """
    ctx = context(prec)
    muc, zc = _hp(mu, prec), _hp(z, prec)
    one = ctx.mpc(1)

    def local(w0, order):
        sign = 1 if w0.imag > 0 else -1
        base = series_mul(
            series_mul(PowerSeries([one, 1 / (2 * w0)], order), PowerSeries([one, 1 / w0], order)),
            s_over_expm1(order, one),
        )
        phase = ctx.exp(-sign * 1j * ctx.pi * muc)
        return series_mul(series_pow(base, muc), exp_series(order, zc)) * (phase * ctx.exp(w0 * zc))

    return local


def bernoulli_twopoint_function(w, mu, z, prec: int = DEFAULT_PRECISION):
    """f(w) evaluated directly with principal powers; valid near the positive real axis."""
    ctx = context(prec)
    w, muc, zc = _hp(w, prec), _hp(mu, prec), _hp(z, prec)
    p = ctx.pi
    return (2 ** (-3 * muc) * p ** (-2 * muc) * ctx.power(w * w + 4 * p * p, muc)
            * ctx.power(w / ctx.expm1(w), muc) * ctx.exp(w * zc))


def twopoint_coeffs_B(mu, z, K: int, flavor: Flavor = Flavor.STANDARD,
                      prec: int = DEFAULT_PRECISION) -> TwoPointSeries:
    """(alpha_k, beta_k) (or their tilde versions) for k = 0..K."""
    local = bernoulli_twopoint_local(mu, z, prec)
    return two_point_expand(local, 2 * pi(prec), flavor, K)


def twopoint_closed_forms_B(mu, z, prec: int = DEFAULT_PRECISION) -> list:
    """Tabulated (alpha_k, beta_k) for k = 0, 1, 2."""
    P = ExpansionParams(0, mu, z, Family.BERNOULLI, prec)
    ctx = P.ctx
    p, m, eta = ctx.pi, P.mu_hp, P.eta
    c, s = ctx.cos(2 * P.zeta), ctx.sin(2 * P.zeta)
    return [
        (c, s / (2 * p)),
        (-(3 * m * c + 2 * p * eta * s) / (16 * p**2),
         (2 * p * eta * c + (2 - 3 * m) * s) / (32 * p**3)),
        (((-12 * p**2 * eta**2 + 4 * m * p**2 - 33 * m + 27 * m**2) * c
          + 12 * p * eta * (3 * m - 1) * s) / (1536 * p**4),
         (-36 * p * eta * (m - 1) * c
          + (36 - 69 * m + 27 * m**2 + 4 * m * p**2 - 12 * p**2 * eta**2) * s) / (3072 * p**5)),
    ]


def phi(k: int, half_n: int, mu, prec: int = DEFAULT_PRECISION):
    """Phi_k^{(2n)} = (2pi)^{2k - 2mu - 2n} C(k - mu, n), n = half_n."""
    ctx = context(prec)
    muc = _hp(mu, prec)
    c = binomial(Fraction(k) - mu, half_n) if is_exact(mu) else binomial(k - muc, half_n)
    return ctx.power(2 * ctx.pi, 2 * k - 2 * muc - 2 * half_n) * _hp(c, prec)


def phi_tilde(k: int, half_n: int, mu, prec: int = DEFAULT_PRECISION):
    """(-1)^{n+k} (2pi)^{-2mu-2n} (mu - k)_{n+k}/(n+k)!."""
    ctx = context(prec)
    muc = _hp(mu, prec)
    poch = pochhammer(Fraction(mu) - k, half_n + k) if is_exact(mu) else pochhammer(muc - k, half_n + k)
    sign = (-1) ** (half_n + k)
    return sign * ctx.power(2 * ctx.pi, -2 * muc - 2 * half_n) * _hp(poch, prec) / math.factorial(half_n + k)


def _twopoint_terms(mu, flavor, K, half_n):
    if flavor is Flavor.STANDARD:
        if is_integer(mu):
            m = as_int(mu)
            if m <= 0:
                raise DomainError("standard two-point expansion needs mu not in {0, -1, ...}; use the finite-sum path")
            if K >= half_n + m:
                raise DomainError(f"standard two-point expansion for integer mu = {m} breaks down once k reaches n + m = {half_n + m}; use K < {half_n + m} or the tilde flavor")
        return K
    if is_integer(mu):
        m = as_int(mu)
        if m <= 0:
            raise DomainError("tilde two-point expansion vanishes identically for mu = 0, -1, ...; use the finite-sum path")
        return min(K, m - 1)
    return K


def degree_weight(weight, k: int, degree: int, mu, prec: int = DEFAULT_PRECISION):
    """``weight(k, degree/2)`` for even degree >= 0 and exactly 0 for odd (or negative) degree."""
    if degree < 0 or degree % 2:
        return 0
    return weight(k, degree // 2, mu, prec)


def _twopoint_sum(n, mu, z, K, flavor, prec, family):
    if n < 0 or K < 0:
        raise DomainError("two-point sums need n >= 0 and K >= 0")
    half_n = n // 2
    last = _twopoint_terms(mu, flavor, K, half_n)
    wp = working_precision(prec, n)
    ctx = context(wp)
    muc = _hp(mu, wp)
    truncated_by_zeros = last < K or (flavor is Flavor.TILDE and is_integer(mu))
    # first omitted k whose weight is nonzero; integer mu skips m <= k < n + m
    nxt = last + 1
    if flavor is Flavor.STANDARD and is_integer(mu) and nxt >= as_int(mu):
        nxt = half_n + as_int(mu)
    if family is Family.BERNOULLI:
        coeffs = twopoint_coeffs_B(mu, z, nxt, flavor, wp)
        prefactor = ctx.factorial(n) * ctx.power(8, muc) * ctx.power(ctx.pi, 2 * muc)
        weight = phi if flavor is Flavor.STANDARD else phi_tilde
    else:
        from .euler import psi, psi_tilde, twopoint_coeffs_E

        coeffs = twopoint_coeffs_E(mu, z, nxt, flavor, wp)
        prefactor = ctx.factorial(n) * ctx.power(4 * ctx.pi, muc)
        weight = psi if flavor is Flavor.STANDARD else psi_tilde
    a_row, b_row = coeffs.a, coeffs.b

    def term(k):
        # the sum runs over a_k W_k^(n) + b_k W_k^(n-1); W vanishes at odd degree
        return prefactor * (a_row[k] * degree_weight(weight, k, n, mu, wp)
                            + b_row[k] * degree_weight(weight, k, n - 1, mu, wp))

    total = ctx.mpc(0)
    for k in range(last + 1):
        total += term(k)
    err = ctx.mpf(0) if truncated_by_zeros else abs(term(nxt))
    notes = ("series terminates; exponentially small remainder not estimated",) if truncated_by_zeros else ()
    method = Method.TWOPOINT if flavor is Flavor.STANDARD else Method.TWOPOINT_TILDE
    confidence = Confidence.CONVERGENT if flavor is Flavor.STANDARD else Confidence.ASYMPTOTIC
    return ApproxValue(total, method, terms_used=last + 1, error_estimate=err,
                       confidence=confidence, notes=notes)


def twopoint_sum_B(n: int, mu, z, K: int, flavor: Flavor = Flavor.STANDARD,
                   prec: int = DEFAULT_PRECISION) -> ApproxValue:
    """B_n^mu(z) from the two-point expansion; even n uses alpha, odd n beta."""
    return _twopoint_sum(n, mu, z, K, flavor, prec, Family.BERNOULLI)


def twopoint_ratio_check(half_n: int, mu, k: int, prec: int = DEFAULT_PRECISION):
    """Phi_{k+1}^{(2n)} / Phi_k^{(2n)} computed from the two Phi values."""
    denom = phi(k, half_n, mu, prec)
    if denom == 0:
        raise DomainError("Phi_k vanishes: the ratio has a pole")
    return phi(k + 1, half_n, mu, prec) / denom


def twopoint_leading_B(half_n: int, mu, z, prec: int = DEFAULT_PRECISION):
    """(-1)^n (2n)! 2^mu/((2pi)^{2n} Gamma(mu)) Gamma(n+mu)/n! cos pi(2z - mu)."""
    n2 = 2 * half_n
    wp = working_precision(prec, n2)
    ctx = context(wp)
    muc, zc = _hp(mu, wp), _hp(z, wp)
    return ((-1) ** half_n * ctx.factorial(n2) * 2**muc / ((2 * ctx.pi) ** n2 * ctx.gamma(muc))
            * ctx.gamma(half_n + muc) / ctx.factorial(half_n) * ctx.cos(ctx.pi * (2 * zc - muc)))


def watson_leading_even_B(half_n: int, mu, z, prec: int = DEFAULT_PRECISION):
    """(-1)^n (2n)! 2^mu n^{mu-1}/((2pi)^{2n} Gamma(mu)) cos pi(2z - mu)."""
    n2 = 2 * half_n
    wp = working_precision(prec, n2)
    ctx = context(wp)
    muc, zc = _hp(mu, wp), _hp(z, wp)
    return ((-1) ** half_n * ctx.factorial(n2) * 2**muc * ctx.power(half_n, muc - 1)
            / ((2 * ctx.pi) ** n2 * ctx.gamma(muc)) * ctx.cos(ctx.pi * (2 * zc - muc)))

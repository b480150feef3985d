"""Truncated power series over the exact or the high-precision field.

A :class:`PowerSeries` of order ``N`` stores ``c_0 .. c_N``; coefficients past
``N`` are unknown, not zero, so binary operations truncate to the smaller
order. The same code runs on :class:`fractions.Fraction` and on mpmath ``mpc``
coefficients.

The module also holds the two-point Taylor machinery: expansions of an
analytic ``f`` in powers of ``(w^2 + c^2)`` (or ``(w^2 + c^2)/w^2``) with
coefficient pairs ``(a_k + w*b_k)``, built from local Taylor series of ``f``
at the two expansion points ``w = +ic`` and ``w = -ic``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .numeric_core import FieldError, coerce, is_exact, is_hp, is_integer, to_hp


class PowerSeries:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = [Fraction(x) if isinstance(x, int) else x for x in coeffs]
        if not c:
            raise ValueError("a power series needs at least one coefficient")
        precs = [x.context.prec for x in c if is_hp(x)]
        if precs and len(precs) < len(c) or len(set(precs)) > 1:
            c = [to_hp(x, max(precs)) for x in c]
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            zero = c[0] * 0
            c = (c + [zero] * (order + 1 - len(c)))[: order + 1]
        self._c = tuple(c)

    @classmethod
    def variable(cls, order: int, one=Fraction(1)) -> "PowerSeries":
        """The series ``s`` itself."""
        return cls([one * 0, one], order)

    @classmethod
    def constant(cls, value, order: int) -> "PowerSeries":
        return cls([value], order)

    @classmethod
    def from_function(cls, coeff: Callable[[int], object], order: int) -> "PowerSeries":
        return cls([coeff(k) for k in range(order + 1)])

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, k):
        return self._c[k]

    def __iter__(self):
        return iter(self._c)

    def __repr__(self) -> str:
        return f"PowerSeries({list(self._c)!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._c == other._c

    __hash__ = None

    @property
    def is_exact(self) -> bool:
        return all(is_exact(x) for x in self._c)

    def to_hp(self, prec: int) -> "PowerSeries":
        return PowerSeries([to_hp(x, prec) for x in self._c])

    def map(self, fn: Callable) -> "PowerSeries":
        return PowerSeries([fn(x) for x in self._c])

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return PowerSeries(self._c[: order + 1])

    def __neg__(self):
        return PowerSeries([-x for x in self._c])

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            a, b = _align(self, other)
            return PowerSeries([x + y for x, y in zip(a, b)])
        c = list(self._c)
        c[0] = c[0] + coerce(other, c[0])
        return PowerSeries(c)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return series_mul(self, other)
        k = coerce(other, self._c[0])
        return PowerSeries([x * k for x in self._c])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return series_mul(self, series_inv(other))
        k = coerce(other, self._c[0])
        return PowerSeries([x / k for x in self._c])

    def derivative(self) -> "PowerSeries":
        if self.order == 0:
            return PowerSeries([self._c[0] * 0])
        return PowerSeries([k * self._c[k] for k in range(1, len(self._c))])

    def shift_down(self) -> "PowerSeries":
        """Divide by ``s``; the constant term is discarded and one order is lost."""
        if self.order == 0:
            raise ValueError("order-0 series cannot be divided by s")
        return PowerSeries(self._c[1:])

    def __call__(self, x):
        """Evaluate the truncated polynomial at ``x`` (Horner)."""
        acc = self._c[-1] * 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc


def _align(a: PowerSeries, b: PowerSeries):
    """Truncate to the common order and put both into one field."""
    n = min(a.order, b.order)
    ax, bx = list(a.coeffs[: n + 1]), list(b.coeffs[: n + 1])
    a_exact, b_exact = a.is_exact, b.is_exact
    if a_exact != b_exact:
        raise FieldError("cannot combine exact and high-precision series")
    if not a_exact:
        prec = max(x.context.prec for x in ax + bx if is_hp(x))
        ax = [to_hp(x, prec) for x in ax]
        bx = [to_hp(x, prec) for x in bx]
    return ax, bx


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated to ``min(a.order, b.order)``."""
    ax, bx = _align(a, b)
    n = len(ax)
    out = []
    for k in range(n):
        acc = ax[0] * bx[k]
        for j in range(1, k + 1):
            acc += ax[j] * bx[k - j]
        out.append(acc)
    return PowerSeries(out)


def series_inv(a: PowerSeries) -> PowerSeries:
    """Multiplicative inverse; needs a nonzero constant term."""
    c0 = a[0]
    if c0 == 0:
        raise ValueError("series with zero constant term has no inverse")
    inv0 = 1 / c0
    out = [inv0]
    for k in range(1, len(a)):
        acc = a[1] * out[k - 1]
        for j in range(2, k + 1):
            acc += a[j] * out[k - j]
        out.append(-acc * inv0)
    return PowerSeries(out)


def series_log(a: PowerSeries) -> PowerSeries:
    """log(a) for a series with constant term exactly 1, via L' = a'/a."""
    if a[0] != 1:
        raise ValueError("series_log needs constant term 1 (normalize first)")
    n = a.order
    zero = a[0] * 0
    L = [zero] * (n + 1)
    for k in range(1, n + 1):
        acc = k * a[k]
        for j in range(1, k):
            acc -= j * L[j] * a[k - j]
        L[k] = acc / k
    return PowerSeries(L)


def series_exp(a: PowerSeries) -> PowerSeries:
    """exp(a) for a series with zero constant term, via E' = a'E."""
    if a[0] != 0:
        raise ValueError("series_exp needs a zero constant term")
    n = a.order
    E = [a[0] * 0 + 1]
    for k in range(1, n + 1):
        acc = a[1] * E[k - 1]
        for j in range(2, k + 1):
            acc += j * a[j] * E[k - j]
        E.append(acc / k)
    return PowerSeries(E)


def series_pow(a: PowerSeries, mu) -> PowerSeries:
    """Principal-branch ``a**mu`` = c0**mu * exp(mu * log(a / c0)).

    In the exact field a non-integer ``mu`` is only allowed when ``c0 == 1``;
    otherwise convert the series to high precision first.
    """
    c0 = a[0]
    if c0 == 0:
        raise ValueError("series_pow needs a nonzero constant term")
    if a.is_exact and is_hp(mu):
        a = a.to_hp(mu.context.prec)
        c0 = a[0]
    if is_exact(mu) and mu == 0:
        return PowerSeries([c0 * 0 + 1], a.order)
    if a.is_exact:
        mu = Fraction(mu) if is_exact(mu) else mu
        if c0 == 1:
            lead = Fraction(1)
        elif is_integer(mu):
            lead = Fraction(c0) ** int(mu)
        else:
            raise FieldError("non-integer power of a non-unit rational: use the high-precision field")
    else:
        mu = coerce(mu, c0)
        lead = c0 ** mu
    normalized = list((a / c0).coeffs)
    normalized[0] = normalized[0] * 0 + 1
    logs = series_log(PowerSeries(normalized))
    return series_exp(logs * mu) * lead


def series_compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """outer(inner(s)) truncated to ``outer.order``; needs inner(0) == 0."""
    if inner[0] != 0:
        raise ValueError("series_compose needs inner(0) == 0")
    if inner.order < outer.order:
        raise ValueError("inner series order must be >= outer order")
    inner = inner.truncate(outer.order)
    acc = PowerSeries([outer[-1]], outer.order)
    for c in reversed(outer.coeffs[:-1]):
        acc = series_mul(acc, inner) + c
    return acc


def exp_series(order: int, scale=Fraction(1)) -> PowerSeries:
    """exp(scale * s)."""
    coeffs, term = [], scale * 0 + 1
    for k in range(order + 1):
        coeffs.append(term)
        term = term * scale / (k + 1)
    return PowerSeries(coeffs)


def expm1_over_s(order: int, one=Fraction(1)) -> PowerSeries:
    """(e^s - 1)/s, coefficients 1/(k+1)!."""
    return PowerSeries([one / math.factorial(k + 1) for k in range(order + 1)])


def s_over_expm1(order: int, one=Fraction(1)) -> PowerSeries:
    """s/(e^s - 1), built by inverting (e^s - 1)/s to avoid the 0/0 at s=0."""
    return series_inv(expm1_over_s(order, one))


# -- two-point Taylor expansions -------------------------------------------


class Flavor(enum.Enum):
    STANDARD = "standard"
    TILDE = "tilde"


@dataclass(frozen=True)
class TwoPointSeries:
    """Coefficient pairs of f(w) = sum (a_k + w b_k) * omega(w)^k.

    ``omega = w^2 + c^2`` for the standard flavor and ``(w^2 + c^2)/w^2`` for
    the tilde flavor.
    """

    pairs: tuple
    center: object
    flavor: Flavor = Flavor.STANDARD

    @property
    def a(self) -> list:
        return [p[0] for p in self.pairs]

    @property
    def b(self) -> list:
        return [p[1] for p in self.pairs]

    def omega(self, w):
        base = w * w + self.center * self.center
        return base if self.flavor is Flavor.STANDARD else base / (w * w)

    def resum(self, w, terms: int | None = None):
        K = len(self.pairs) - 1 if terms is None else terms
        om = self.omega(w)
        acc = self.pairs[0][0] * 0
        for a_k, b_k in reversed(self.pairs[: K + 1]):
            acc = acc * om + (a_k + w * b_k)
        return acc


LocalExpansion = Callable[[object, int], PowerSeries]


def two_point_expand(local: LocalExpansion, c, flavor: Flavor, K: int) -> TwoPointSeries:
    """Two-point Taylor coefficients of ``f`` at ``w = +ic`` and ``w = -ic``.

    ``local(w0, order)`` must return the Taylor series of ``f(w0 + t)`` in
    ``t``. The recursion strips ``a_j + w b_j`` and divides by
    ``w^2 + c^2 = t(2 w0 + t)`` (times ``w^2`` for the tilde flavor) on both
    local series; each step costs one order, so order ``K + 2`` suffices.
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    ic = c * 1j if not is_hp(c) else c * c.context.mpc(0, 1)
    points = (ic, -ic)
    try:
        local_series = [local(w0, K + 2) for w0 in points]
    except (ZeroDivisionError, ValueError) as exc:
        raise ValueError(f"cannot expand f at the points +-ic: {exc}") from exc
    pairs = []
    for j in range(K + 1):
        fp, fm = local_series[0][0], local_series[1][0]
        a_j = (fp + fm) / 2
        b_j = (fp - fm) / (2 * ic)
        pairs.append((a_j, b_j))
        if j == K:
            break
        local_series = [_strip(s, w0, a_j, b_j, flavor) for s, w0 in zip(local_series, points)]
    return TwoPointSeries(tuple(pairs), c, flavor)


def _strip(s: PowerSeries, w0, a_j, b_j, flavor: Flavor) -> PowerSeries:
    t = PowerSeries.variable(s.order, s[0] * 0 + 1)
    rest = s - (t + w0) * b_j - a_j
    rest = PowerSeries([rest[0] * 0] + list(rest.coeffs[1:]))
    quotient = rest.shift_down() / PowerSeries([2 * w0, 1], rest.order - 1)
    if flavor is Flavor.TILDE:
        w_sq = PowerSeries([w0 * w0, 2 * w0, 1], quotient.order)
        quotient = quotient * w_sq
    return quotient


def polynomial_eval(coeffs: Sequence, x):
    acc = coeffs[-1] * 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc

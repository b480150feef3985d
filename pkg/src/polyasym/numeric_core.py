"""Exact and configurable-precision scalar arithmetic shared by every module.

Two coefficient fields are used throughout the package:

* exact rationals (:class:`fractions.Fraction`, plain ``int`` is accepted too),
* high-precision complex numbers: mpmath ``mpc`` values that live in a
  per-precision :class:`mpmath.ctx_mp.MPContext`.

Every mpmath value carries its context, so arithmetic on values created by
``context(p)`` runs at ``p`` bits without touching the global ``mpmath.mp``
state. That keeps evaluation thread-safe.
"""

from __future__ import annotations

import enum
import math
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from mpmath.ctx_mp import MPContext

Rational = Fraction

DEFAULT_PRECISION = 128
MIN_PRECISION = 64
GUARD_BITS = 32

_contexts: dict[int, MPContext] = {}
_pi_cache: dict[int, object] = {}
_lock = threading.Lock()


class DomainError(ValueError):
    """A precondition of an expansion or oracle is violated."""


class FieldError(TypeError):
    """Operands come from incompatible coefficient fields."""


class Family(enum.Enum):
    BERNOULLI = "bernoulli"
    EULER = "euler"


def context(prec: int = DEFAULT_PRECISION) -> MPContext:
    """Return the shared mpmath context working at ``prec`` bits."""
    prec = max(int(prec), MIN_PRECISION)
    ctx = _contexts.get(prec)
    if ctx is None:
        with _lock:
            ctx = _contexts.get(prec)
            if ctx is None:
                ctx = MPContext()
                ctx.prec = prec
                _contexts[prec] = ctx
    return ctx


def pi(prec: int = DEFAULT_PRECISION):
    """pi materialized at ``prec`` bits, cached per precision."""
    prec = max(int(prec), MIN_PRECISION)
    value = _pi_cache.get(prec)
    if value is None:
        ctx = context(prec)
        with _lock:
            value = _pi_cache.setdefault(prec, +ctx.pi)
    return value


def working_precision(target: int, n: int = 0) -> int:
    """Bits needed so that degree-``n`` sums keep ``target`` bits of accuracy.

    The (2*pi)^-n style prefactors span ~n*log2(2*pi) binary orders of
    magnitude between the largest and smallest terms that get combined.
    """
    extra = math.ceil(max(n, 0) * math.log2(2 * math.pi))
    return max(int(target), MIN_PRECISION) + GUARD_BITS + extra


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def is_hp(x) -> bool:
    return hasattr(x, "context") and isinstance(getattr(x, "context"), MPContext)


def precision_of(x) -> int | None:
    return x.context.prec if is_hp(x) else None


def to_hp(x, prec: int = DEFAULT_PRECISION):
    """Convert an exact or Python number (or HP value) to an ``mpc`` at ``prec`` bits."""
    ctx = context(prec)
    if is_hp(x):
        return ctx.mpc(ctx.convert(x.real), ctx.convert(x.imag)) if hasattr(x, "imag") else ctx.mpc(ctx.convert(x))
    if isinstance(x, complex):
        return ctx.mpc(x.real, x.imag)
    return ctx.mpc(ctx.convert(x))


def coerce(x, like):
    """Bring ``x`` into the field of ``like`` (exact stays exact when possible)."""
    if is_hp(like):
        if is_hp(x) and x.context is like.context:
            return x
        return to_hp(x, like.context.prec)
    if is_exact(like) and is_exact(x):
        return Fraction(x)
    if is_exact(like):
        raise FieldError(f"cannot place {x!r} into the exact rational field")
    return x


def unify(*values):
    """Coerce values into one field: exact if all exact, else HP at the max precision."""
    if all(is_exact(v) for v in values):
        return tuple(Fraction(v) for v in values)
    precs = [precision_of(v) for v in values if is_hp(v)]
    prec = max(precs) if precs else DEFAULT_PRECISION
    return tuple(to_hp(v, prec) for v in values)


def is_integer(x) -> bool:
    if isinstance(x, int):
        return True
    if isinstance(x, Fraction):
        return x.denominator == 1
    if is_hp(x):
        im = getattr(x, "imag", 0)
        return im == 0 and x.context.isint(x.real)
    if isinstance(x, (float, complex)):
        return complex(x).imag == 0 and float(complex(x).real).is_integer()
    return False


def as_int(x) -> int:
    if isinstance(x, Fraction):
        return int(x)
    if is_hp(x):
        return int(x.real)
    return int(complex(x).real)


def real_part(x):
    if is_exact(x):
        return Fraction(x)
    return x.real


def pochhammer(a, k: int):
    """Rising factorial a(a+1)...(a+k-1); 1 for k == 0."""
    if k < 0:
        raise DomainError("pochhammer needs k >= 0")
    if isinstance(a, int):
        a = Fraction(a)
    result = a * 0 + 1
    for j in range(k):
        result *= a + j
    return result


def factorial(n: int) -> Fraction:
    if n < 0:
        raise DomainError("factorial needs n >= 0")
    return Fraction(math.factorial(n))


def binomial(n, k: int):
    """Generalized binomial coefficient (n choose k) = (n-k+1)_k / k!."""
    if k < 0:
        raise DomainError("binomial needs k >= 0")
    if isinstance(n, int):
        n = Fraction(n)
    return pochhammer(n - k + 1, k) / math.factorial(k)


_REAL = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?"
_COMPLEX_RE = re.compile(
    rf"^\s*(?P<re>{_REAL})?\s*(?:(?P<sign>[+-])\s*(?P<im>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?)?\s*[ij])?\s*$"
)
_PURE_IMAG_RE = re.compile(rf"^\s*(?P<im>{_REAL})?\s*[ij]\s*$")


def parse_number(text: str, prec: int = DEFAULT_PRECISION):
    """Parse ``"a"``, ``"a+bi"``, ``"a-bi"`` or ``"bi"``.

    Real inputs are returned as exact :class:`Fraction` (decimal strings are
    exact decimals); inputs with an imaginary part become ``mpc`` at ``prec``.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty number")
    m = _PURE_IMAG_RE.match(s)
    if m:
        im_text = m.group("im")
        if im_text in (None, "+"):
            im = Fraction(1)
        elif im_text == "-":
            im = Fraction(-1)
        else:
            im = Fraction(im_text)
        return _complex_value(Fraction(0), im, prec)
    m = _COMPLEX_RE.match(s)
    if not m or (m.group("re") is None and m.group("sign") is None):
        raise ValueError(f"cannot parse number {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    if m.group("sign") is None:
        return re_part
    im = Fraction(m.group("im")) if m.group("im") else Fraction(1)
    if m.group("sign") == "-":
        im = -im
    return _complex_value(re_part, im, prec)


def _complex_value(re_part: Fraction, im: Fraction, prec: int):
    if im == 0:
        return re_part
    ctx = context(prec)
    return ctx.mpc(ctx.convert(re_part), ctx.convert(im))


def digits_for(prec: int) -> int:
    return max(1, int(prec * math.log10(2)))


def format_value(x, prec: int | None = None) -> str:
    """Exact fractions print as p/q; HP values as ``re+imi`` (or ``re`` when real)."""
    if is_exact(x):
        return str(Fraction(x))
    ctx = x.context
    digits = digits_for(prec if prec is not None else ctx.prec)
    re_s = ctx.nstr(x.real, digits, strip_zeros=False)
    im = getattr(x, "imag", 0)
    if im == 0:
        return re_s
    im_s = ctx.nstr(abs(im), digits, strip_zeros=False)
    sign = "-" if im < 0 else "+"
    return f"{re_s}{sign}{im_s}i"


Number = Union[int, Fraction, object]


@dataclass(frozen=True)
class ExpansionParams:
    """Degree, order and argument of an evaluation, with the derived phases.

    ``zeta`` is pi*(z - mu/2) for both families; ``chi`` is 2*zeta - n*pi/2
    (Bernoulli) or zeta - n*pi/2 (Euler); ``eta`` is mu - 2z.
    """

    n: int
    mu: Number
    z: Number
    family: Family = Family.BERNOULLI
    prec: int = DEFAULT_PRECISION

    @property
    def ctx(self) -> MPContext:
        return context(self.prec)

    @property
    def mu_hp(self):
        return to_hp(self.mu, self.prec)

    @property
    def z_hp(self):
        return to_hp(self.z, self.prec)

    @property
    def zeta(self):
        return pi(self.prec) * (self.z_hp - self.mu_hp / 2)

    @property
    def chi(self):
        half_turns = pi(self.prec) * self.n / 2
        if self.family is Family.BERNOULLI:
            return 2 * self.zeta - half_turns
        return self.zeta - half_turns

    @property
    def eta(self):
        return self.mu_hp - 2 * self.z_hp

import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyasym.numeric_core import (
    DomainError,
    ExpansionParams,
    Family,
    FieldError,
    binomial,
    context,
    factorial,
    format_value,
    is_exact,
    parse_number,
    pi,
    pochhammer,
    to_hp,
    working_precision,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)


def test_pochhammer_examples():
    assert pochhammer(Fraction(7, 3), 0) == 1
    assert pochhammer(1, 5) == 120
    assert pochhammer(3, 2) == 12


def test_factorial_examples():
    assert factorial(0) == 1
    assert factorial(5) == 120
    assert factorial(20) == 2432902008176640000
    assert isinstance(factorial(5), Fraction)


def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert binomial(17, 0) == 1
    assert binomial(Fraction(1, 2), 2) == Fraction(-1, 8)


@given(st.integers(1, 40), st.data())
def test_pascal_rule(n, data):
    k = data.draw(st.integers(1, n))
    assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


@given(rationals, st.integers(0, 12), st.integers(0, 12))
def test_pochhammer_splits(a, m, n):
    assert pochhammer(a, m + n) == pochhammer(a, m) * pochhammer(a + m, n)


@given(rationals, rationals)
def test_rationals_stay_normalized(a, b):
    s = a + b
    assert s.denominator > 0
    from math import gcd

    assert gcd(abs(s.numerator), s.denominator) == 1


@settings(max_examples=50)
@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(0.1, 10), st.floats(-10, 10))
def test_hp_precision_doubling_agrees(ar, ai, br, bi):
    p = 96
    lo, hi = context(p), context(2 * p)
    x_lo, y_lo = lo.mpc(ar, ai), lo.mpc(br, bi)
    x_hi, y_hi = hi.mpc(ar, ai), hi.mpc(br, bi)
    for op in (lambda x, y: x * y + x, lambda x, y: x / y, lambda x, y: lo.exp(x / 8) if x.context is lo else hi.exp(x / 8)):
        r_lo, r_hi = op(x_lo, y_lo), op(x_hi, y_hi)
        if r_hi != 0:
            assert abs(hi.convert(r_lo) - r_hi) <= abs(r_hi) * hi.ldexp(1, -p + 4)


def test_pi_cache_concurrent_init():
    results = []
    threads = [threading.Thread(target=lambda: results.append(pi(333))) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len({id(r) for r in results}) == 1
    assert context(333) is context(333)


def test_working_precision_grows_with_degree():
    assert working_precision(128, 0) == 160
    assert working_precision(128, 40) > working_precision(128, 10) > 160


def test_parse_number_forms():
    assert parse_number("0.3") == Fraction(3, 10)
    assert parse_number("1/3") == Fraction(1, 3)
    assert parse_number("-2") == -2
    z = parse_number("1.5+0.25i", 64)
    assert (z.real, z.imag) == (1.5, 0.25)
    assert parse_number("2-3i", 64).imag == -3
    assert parse_number("-4i", 64).imag == -4
    assert parse_number("7+0i") == 7
    with pytest.raises(ValueError):
        parse_number("1+")
    with pytest.raises(ValueError):
        parse_number("abc")


def test_format_value():
    assert format_value(Fraction(1, 6)) == "1/6"
    ctx = context(64)
    assert format_value(ctx.mpc(1.5, -0.25), 64).endswith("i")
    assert "-" in format_value(ctx.mpc(1.5, -0.25), 64)
    assert format_value(ctx.mpf(0.5), 64).startswith("0.5")


def test_to_hp_precision_and_exactness():
    x = to_hp(Fraction(1, 3), 200)
    assert x.context.prec == 200
    assert is_exact(Fraction(1, 3)) and not is_exact(x)


def test_expansion_params_phases():
    p = ExpansionParams(10, Fraction(1, 2), Fraction(3, 10), Family.BERNOULLI, 128)
    ctx = p.ctx
    zeta = ctx.pi * (ctx.mpf(3) / 10 - ctx.mpf(1) / 4)
    assert abs(p.zeta - zeta) < ctx.ldexp(1, -120)
    assert abs(p.chi - (2 * zeta - 5 * ctx.pi)) < ctx.ldexp(1, -118)
    assert abs(p.eta - (ctx.mpf(1) / 2 - ctx.mpf(3) / 5)) < ctx.ldexp(1, -120)
    e = ExpansionParams(10, Fraction(1, 2), Fraction(3, 10), Family.EULER, 128)
    assert abs(e.chi - (zeta - 5 * ctx.pi)) < ctx.ldexp(1, -118)


def test_error_types():
    assert issubclass(DomainError, ValueError)
    assert issubclass(FieldError, TypeError)

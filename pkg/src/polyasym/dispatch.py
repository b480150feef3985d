"""Method dispatch shared by the command line and the report runner."""

from __future__ import annotations

from . import bernoulli as B
from . import euler as E
from .approx import ApproxValue, Confidence, Method
from .numeric_core import (
    DEFAULT_PRECISION,
    DomainError,
    Family,
    as_int,
    context,
    is_exact,
    is_integer,
    to_hp,
)
from .oracle import (
    bernoulli_neg_int,
    bernoulli_values,
    euler_neg_int,
    euler_values,
    saddle_estimate_neg_int,
)
from .series import Flavor

METHODS = tuple(m.value for m in Method if m is not Method.LEADING)
DEFAULT_TERMS = {"watson": 3, "twopoint": 12, "twopoint-tilde": 12}
COEFF_KINDS = ("g", "h", "alpha", "beta", "gamma", "delta", "beta-residue", "epsilon-residue")


def parse_family(name: str) -> Family:
    try:
        return Family(name.lower())
    except ValueError:
        raise DomainError(f"unknown family {name!r}; expected bernoulli or euler") from None


def oracle_value(family: Family, n: int, mu, z, prec: int = DEFAULT_PRECISION):
    values = bernoulli_values if family is Family.BERNOULLI else euler_values
    exact = is_exact(mu) and is_exact(z)
    return values(n, mu, z, prec=None if exact else prec)[n]


def _nonpositive_int(mu, method):
    if not (is_integer(mu) and as_int(mu) <= 0):
        raise DomainError(f"method {method} needs mu = -m with m = 0, 1, 2, ... (got {mu})")
    return -as_int(mu)


def _positive_int(mu, method):
    if not (is_integer(mu) and as_int(mu) >= 1):
        raise DomainError(f"method {method} needs a positive integer mu (got {mu})")
    return as_int(mu)


def evaluate(family: Family, n: int, mu, z, method: str, terms: int | None = None,
             prec: int = DEFAULT_PRECISION) -> ApproxValue:
    """Evaluate the degree-n polynomial of ``family`` with one named method."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if terms is not None and terms < 0:
        raise DomainError("--terms must be >= 0")
    bern = family is Family.BERNOULLI
    if method == "oracle":
        return ApproxValue(oracle_value(family, n, mu, z, prec), Method.ORACLE,
                           confidence=Confidence.EXACT)
    if method == "finite-sum":
        m = _nonpositive_int(mu, method)
        value = bernoulli_neg_int(n, m, z) if bern else euler_neg_int(n, m, z)
        return ApproxValue(value, Method.FINITE_SUM, terms_used=m + 1, confidence=Confidence.EXACT)
    if method == "fourier":
        m = _positive_int(mu, method)
        return (B.fourier_Bm if bern else E.fourier_Em)(n, m, z, terms, prec)
    if method == "saddle":
        if not bern:
            raise DomainError("the saddle-point estimate exists only for the Bernoulli family")
        return saddle_estimate_neg_int(n, _nonpositive_int(mu, method), z, prec)
    K = DEFAULT_TERMS.get(method) if terms is None else terms
    if method == "watson":
        return (B.watson_expansion_B if bern else E.watson_expansion_E)(n, mu, z, K, prec)
    if method in ("twopoint", "twopoint-tilde"):
        flavor = Flavor.STANDARD if method == "twopoint" else Flavor.TILDE
        return (B.twopoint_sum_B if bern else E.twopoint_sum_E)(n, mu, z, K, flavor, prec)
    raise DomainError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")


def _pairs_to_complex(pairs, prec):
    ctx = context(prec)
    return [ctx.mpc(re, im) for re, im in pairs]


def coefficient_rows(kind: str, mu, z, K: int, prec: int = DEFAULT_PRECISION,
                     flavor: Flavor = Flavor.STANDARD, m: int | None = None,
                     n: int | None = None) -> list[dict]:
    """Rows ``{k, value, residual}``; residual is None where no closed form is tabulated."""
    if K < 0:
        raise DomainError("K must be >= 0")
    closed = []
    if kind in ("g", "h"):
        values = (B.watson_g_coeffs if kind == "g" else E.watson_h_coeffs)(mu, z, K, prec)
        if is_exact(mu) or to_hp(mu, prec).imag == 0:
            forms = B.g_closed_forms if kind == "g" else E.h_closed_forms
            closed = _pairs_to_complex(forms(mu, z, prec), prec)
        ks = range(K + 1)
    elif kind in ("alpha", "beta", "gamma", "delta"):
        bern = kind in ("alpha", "beta")
        series = (B.twopoint_coeffs_B if bern else E.twopoint_coeffs_E)(mu, z, K, flavor, prec)
        first_row = kind in ("alpha", "gamma")
        values = list(series.a if first_row else series.b)[: K + 1]
        if flavor is Flavor.STANDARD:
            forms = (B.twopoint_closed_forms_B if bern else E.twopoint_closed_forms_E)(mu, z, prec)
            closed = [pair[0 if first_row else 1] for pair in forms]
        ks = range(K + 1)
    elif kind in ("beta-residue", "epsilon-residue"):
        if m is None or n is None:
            raise DomainError(f"kind {kind} needs --m and --n")
        if kind == "beta-residue":
            ks = range(1, K + 1)
            values = [B.beta_residue(m, n, z, k, prec) for k in ks]
            closed = [None] + [B.beta_coeff(m, n, z, k, prec) for k in ks]
        else:
            ks = range(K + 1)
            values = [E.epsilon_residue(m, n, z, k, prec) for k in ks]
            closed = [E.epsilon_coeff(m, n, z, k, prec) for k in ks]
    else:
        raise DomainError(f"unknown coefficient kind {kind!r}; expected one of {', '.join(COEFF_KINDS)}")
    rows = []
    for k, value in zip(ks, values):
        ref = closed[k] if k < len(closed) else None
        rows.append({"k": k, "value": value, "residual": None if ref is None else abs(value - ref)})
    return rows

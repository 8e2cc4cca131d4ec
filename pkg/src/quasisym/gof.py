"""Likelihood-ratio goodness of fit and chi-square tail probabilities."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_EPS = 1e-16
_MAX_TERMS = 10_000


@dataclass(frozen=True)
class GofReport:
    g2: float
    df: int
    p_value: float


def g2(n, m_hat) -> float:
    """Deviance ``2 sum n_ij log(n_ij / m_ij)``; zero counts contribute nothing."""
    n = np.asarray(getattr(n, "counts", n), dtype=float)
    m = np.asarray(m_hat, dtype=float)
    mask = n > 0
    if np.any(m[mask] <= 0):
        return math.inf
    value = 2.0 * float(np.sum(n[mask] * np.log(n[mask] / m[mask])))
    if value < 0:
        if value < -1e-9:
            raise ValueError(f"negative deviance {value}; expected frequencies do not match counts")
        value = 0.0
    return value


def model_df(I: int, family: str) -> int:
    if I < 2:
        raise ValueError("I must be at least 2")
    family = family.upper()
    if family == "QS":
        return (I - 1) * (I - 2) // 2
    if family == "QSI":
        return (I - 1) ** 2
    raise ValueError(f"unknown family {family!r}")


def _lower_series(s: float, x: float) -> float:
    # P(s, x) by the power series of gamma(s, x) e^x x^-s
    term = 1.0 / s
    total = term
    k = s
    for _ in range(_MAX_TERMS):
        k += 1.0
        term *= x / k
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + s * math.log(x) - math.lgamma(s))


def _upper_fraction(s: float, x: float) -> float:
    # Q(s, x) by the Legendre continued fraction, modified Lentz evaluation
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_TERMS):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + s * math.log(x) - math.lgamma(s))


def upper_regularized_gamma(s: float, x: float) -> float:
    """Q(s, x) = Gamma(s, x) / Gamma(s) for ``s > 0``, ``x >= 0``."""
    if s <= 0:
        raise ValueError("shape must be positive")
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < s + 1.0:
        return 1.0 - _lower_series(s, x)
    return _upper_fraction(s, x)


def chisq_sf(x: float, df: int) -> float:
    """Upper tail probability of the chi-square distribution with ``df`` degrees of freedom."""
    if df < 1:
        raise ValueError("df must be a positive integer")
    if x < 0:
        raise ValueError("x must be nonnegative")
    return upper_regularized_gamma(df / 2.0, x / 2.0)


def gof_report(n, m_hat, family: str) -> GofReport:
    n_arr = np.asarray(getattr(n, "counts", n))
    value = g2(n_arr, m_hat)
    df = model_df(n_arr.shape[0], family)
    if df == 0:
        # 2x2 QS is saturated
        return GofReport(g2=value, df=0, p_value=1.0)
    return GofReport(g2=value, df=df, p_value=chisq_sf(value, df))

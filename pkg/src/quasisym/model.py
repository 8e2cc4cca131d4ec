"""The QS_t and QSI_t parametrizations.

Both families perturb a symmetric table off the diagonal by

    p_ij = s_ij * (1 + c_ij),   c_ij = (1+t)(a_i - a_j) / (2 + (1-t)(a_i + a_j)),

with ``s_ij`` a symmetric table (QS_t) or the rank-one table ``s_i s_j``
(QSI_t).  Since ``c_ji = -c_ij`` every pair ``(i, j), (j, i)`` keeps its
sum ``2 s_ij``, so the table stays normalized for every ``a``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tables import SymmetricTable

FAMILIES = ("QS", "QSI")
CONSTRAINTS = ("last_zero", "weighted_mean_zero")

DENOMINATOR_GUARD = 1e-12


class FeasibilityError(ValueError):
    """Raised when the a-vector leaves the region where the table is a probability."""


@dataclass(frozen=True)
class ModelSpec:
    family: str = "QS"
    t: float = 0.0
    constraint: str = "last_zero"

    def __post_init__(self):
        fam = self.family.upper()
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        object.__setattr__(self, "family", fam)
        if not 0.0 <= float(self.t) <= 1.0:
            raise ValueError(f"t must lie in [0, 1], got {self.t}")
        object.__setattr__(self, "t", float(self.t))
        if self.constraint not in CONSTRAINTS:
            raise ValueError(
                f"unknown constraint {self.constraint!r}; expected one of {CONSTRAINTS}"
            )


def _sym_values(s) -> np.ndarray:
    if isinstance(s, SymmetricTable):
        return s.values
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or not np.allclose(s, s.T, rtol=0, atol=1e-15):
        raise ValueError("s must be a symmetric matrix")
    return s


def pair_denominators(a, t: float) -> np.ndarray:
    """``2 + (1-t)(a_i + a_j)`` for every pair."""
    a = np.asarray(a, dtype=float)
    return 2.0 + (1.0 - t) * (a[:, None] + a[None, :])


def correction(a, t: float) -> np.ndarray:
    """Antisymmetric matrix of the multiplicative corrections ``c_ij``."""
    a = np.asarray(a, dtype=float)
    d = pair_denominators(a, t)
    off = ~np.eye(a.size, dtype=bool)
    if np.any(d[off] <= DENOMINATOR_GUARD):
        raise FeasibilityError("nonpositive denominator 2 + (1-t)(a_i + a_j)")
    c = np.zeros_like(d)
    c[off] = (1.0 + t) * (a[:, None] - a[None, :])[off] / d[off]
    return c


def is_feasible(a, t: float) -> bool:
    """Check ``t * max(a) - min(a) <= 1``."""
    a = np.asarray(a, dtype=float)
    return bool(t * a.max() - a.min() <= 1.0)


def _perturb(base: np.ndarray, a, t: float) -> np.ndarray:
    c = correction(a, t)
    p = base * (1.0 + c)
    if np.any(p < -1e-15):
        raise FeasibilityError("a-vector produces a negative cell probability")
    return p


def qs_prob(s, a, t: float) -> np.ndarray:
    """Probability table of QS_t at symmetric table ``s`` and a-vector ``a``.

    Diagonal cells equal ``s_ii``.
    """
    s = _sym_values(s)
    a = np.asarray(a, dtype=float)
    if a.shape != (s.shape[0],):
        raise ValueError(f"a must have length {s.shape[0]}")
    return _perturb(s, a, t)


def qsi_prob(s, a, t: float) -> np.ndarray:
    """Probability table of QSI_t; ``s`` is the vector of category weights."""
    s = np.asarray(s, dtype=float)
    a = np.asarray(a, dtype=float)
    if s.ndim != 1 or a.shape != s.shape:
        raise ValueError("s and a must be vectors of the same length")
    return _perturb(np.outer(s, s), a, t)


def to_simple_form(s, a, t: float) -> np.ndarray:
    """Symmetric table ``x`` with ``qs_prob(s, a, t) == x_ij (1 + a_i - t a_j)`` off the diagonal."""
    s = _sym_values(s)
    a = np.asarray(a, dtype=float)
    factor = 1.0 + (1.0 - t) * (a[:, None] + a[None, :]) / 2.0
    np.fill_diagonal(factor, 1.0)
    if np.any(factor <= DENOMINATOR_GUARD):
        raise FeasibilityError("nonpositive divisor 1 + (1-t)(a_i + a_j)/2")
    return s / factor


def simple_form_prob(x, a, t: float) -> np.ndarray:
    """Evaluate ``x_ij (1 + a_i - t a_j)`` off the diagonal, ``x_ii`` on it."""
    x = np.asarray(x, dtype=float)
    a = np.asarray(a, dtype=float)
    p = x * (1.0 + a[:, None] - t * a[None, :])
    np.fill_diagonal(p, np.diag(x))
    return p


def marginal_inhomogeneity(x, a, t: float) -> np.ndarray:
    """``(1+t) x_i+ (a_i - sum_j x_ij a_j / x_i+)``, i.e. ``p_i+ - p_+i`` in simple form."""
    x = np.asarray(x, dtype=float)
    a = np.asarray(a, dtype=float)
    rows = x.sum(axis=1)
    if np.any(rows <= 0):
        raise ValueError("every row of x needs a positive margin")
    return (1.0 + t) * rows * (a - (x @ a) / rows)


def fiber_point(a, t: float, scale: float) -> np.ndarray:
    """Move ``a`` along its non-identifiable line.

    The table depends on ``a`` only through the ratios of
    ``beta_i = 1 + (1-t) a_i``; scaling ``beta`` by ``scale`` gives another
    point of the same fiber.  At ``t = 1`` the fiber is a translation and
    ``scale`` is used as the shift.
    """
    a = np.asarray(a, dtype=float)
    if t == 1.0:
        return a + scale
    beta = 1.0 + (1.0 - t) * a
    return (scale * beta - 1.0) / (1.0 - t)

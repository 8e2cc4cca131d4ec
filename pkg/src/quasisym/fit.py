"""Maximum likelihood fitting of QS_t and QSI_t by unidimensional Newton steps.

The likelihood splits into a part depending on the symmetric parameters
only (maximized in closed form, see :mod:`quasisym.tables`) and a part in
the a-vector,

    l_a(a) = sum_{i != j} n_ij log(1 + c_ij(a)),

which is the same for both families.  Score and Hessian below are
derivatives of ``l_a`` and therefore of the full log-likelihood.  The
identifiability constraint ``a_I = 0`` is built in: derivatives are taken
with respect to ``a_1 .. a_{I-1}`` only.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .model import (
    FeasibilityError,
    ModelSpec,
    correction,
    fiber_point,
    is_feasible,
    pair_denominators,
    qs_prob,
    qsi_prob,
    to_simple_form,
)
from .tables import ContingencyTable, SymmetricTable, si_mle, symmetric_mle

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FitConfig:
    max_iter: int = 500
    tol: float = 1e-10
    init: str = "zero"  # or "margin_ratio"
    damping: float = 1.0
    method: str = "coordinate"  # or "full"
    max_halvings: int = 30

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not 0 < self.damping <= 1:
            raise ValueError("damping must lie in (0, 1]")
        if self.init not in ("zero", "margin_ratio"):
            raise ValueError(f"unknown init {self.init!r}")
        if self.method not in ("coordinate", "full"):
            raise ValueError(f"unknown method {self.method!r}")


@dataclass
class FitResult:
    spec: ModelSpec
    a_hat: np.ndarray
    s_hat: SymmetricTable | np.ndarray
    p_hat: np.ndarray
    m_hat: np.ndarray
    loglik: float
    iterations: int
    converged: bool
    grad_norm: float
    hessian_negdef: bool
    history: list = field(default_factory=list, repr=False)


def _as_counts(n) -> np.ndarray:
    if isinstance(n, ContingencyTable):
        return n.counts.astype(float)
    return np.asarray(n, dtype=float)


def loglik(n, p) -> float:
    """``sum n_ij log p_ij`` with ``0 log 0 = 0``; ``-inf`` if a count sits on a zero cell."""
    n = _as_counts(n)
    p = np.asarray(p, dtype=float)
    mask = n > 0
    if np.any(p[mask] <= 0):
        return -np.inf
    return float(np.sum(n[mask] * np.log(p[mask])))


def _pair_terms(n: np.ndarray, a: np.ndarray, t: float):
    d = pair_denominators(a, t)
    c = correction(a, t)
    up, down = 1.0 + c, 1.0 - c
    nt = n.T
    # s_ij (n_ij/p_ij - n_ji/p_ji) and s_ij^2 (n_ij/p_ij^2 + n_ji/p_ji^2)
    first = np.divide(n, up, out=np.zeros_like(n), where=n > 0) - np.divide(
        nt, down, out=np.zeros_like(n), where=nt > 0
    )
    second = np.divide(n, up**2, out=np.zeros_like(n), where=n > 0) + np.divide(
        nt, down**2, out=np.zeros_like(n), where=nt > 0
    )
    np.fill_diagonal(first, 0.0)
    np.fill_diagonal(second, 0.0)
    return d, c, first, second


def _a_loglik(n: np.ndarray, a: np.ndarray, t: float) -> float:
    c = correction(a, t)
    up = 1.0 + c
    off = ~np.eye(n.shape[0], dtype=bool) & (n > 0)
    if np.any(up[off] <= 0):
        return -np.inf
    return float(np.sum(n[off] * np.log(up[off])))


def _score_full(n, a, t):
    d, c, first, _ = _pair_terms(n, a, t)
    kappa = (1.0 - t) / (1.0 + t)
    return (1.0 + t) * np.sum((1.0 - kappa * c) / d * first, axis=1)


def _hessian_full(n, a, t):
    d, c, first, second = _pair_terms(n, a, t)
    kappa = (1.0 - t) / (1.0 + t)
    d2 = d**2
    lin = 1.0 - kappa * c
    off = (2.0 * (1.0 - t) ** 2 * c / d2) * first + (
        (1.0 + t) ** 2 * (1.0 - (kappa * c) ** 2) / d2
    ) * second
    diag = -(1.0 + t) * np.sum(2.0 * (1.0 - t) * lin / d2 * first, axis=1) - (1.0 + t) * np.sum(
        (1.0 + t) * lin**2 / d2 * second, axis=1
    )
    H = off.copy()
    np.fill_diagonal(H, diag)
    return H


def score(n, a, t: float) -> np.ndarray:
    """Gradient of the log-likelihood in ``a_1 .. a_{I-1}`` (``a_I`` held fixed).

    The symmetric parameters cancel from the a-derivatives, so the same
    function serves QS_t and QSI_t.
    """
    return _score_full(_as_counts(n), np.asarray(a, dtype=float), t)[:-1]


def hessian(n, a, t: float) -> np.ndarray:
    """Matrix of second derivatives in ``a_1 .. a_{I-1}``."""
    return _hessian_full(_as_counts(n), np.asarray(a, dtype=float), t)[:-1, :-1]


def _admissible(a, t) -> bool:
    if not is_feasible(a, t):
        return False
    d = pair_denominators(a, t)
    return bool(np.all(d[~np.eye(a.size, dtype=bool)] > 1e-12))


def _to_last_zero(a, t: float) -> np.ndarray:
    """Representative of ``a``'s fiber with last coordinate zero (zeros if none exists)."""
    a = np.asarray(a, dtype=float)
    if t == 1.0:
        out = a - a[-1]
    else:
        beta_last = 1.0 + (1.0 - t) * a[-1]
        if beta_last <= 0:
            return np.zeros_like(a)
        out = fiber_point(a, t, 1.0 / beta_last)
    out[-1] = 0.0
    return out


def margin_ratio_start(n, t: float) -> np.ndarray:
    """Start ``a_i = (n_i+ - n_+i)/(n_i+ + n_+i)`` moved along its fiber to ``a_I = 0``."""
    n = _as_counts(n)
    rows, cols = n.sum(axis=1), n.sum(axis=0)
    tot = rows + cols
    r = np.divide(rows - cols, tot, out=np.zeros_like(tot), where=tot > 0)
    return _to_last_zero(r, t)


def _shift_to_weighted_mean(a, s_table, t):
    """Move ``a`` along its fiber so that ``sum_ij x_ij a_j = 0``."""

    def h(scale):
        b = fiber_point(a, t, scale)
        x = to_simple_form(s_table, b, t)
        return float(np.sum(x @ b))

    if t == 1.0:
        x = np.asarray(s_table)
        return fiber_point(a, t, -np.sum(x @ a) / x.sum())
    lo, hi = 1e-9, 1.0
    if h(lo) >= 0:
        raise FeasibilityError("weighted-mean constraint has no positive-scale solution")
    while h(hi) <= 0:
        hi *= 2.0
        if hi > 1e12:
            raise FeasibilityError("weighted-mean constraint has no positive-scale solution")
    scale = brentq(h, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    return fiber_point(a, t, scale)


def newton_fit(n, spec: ModelSpec = ModelSpec(), cfg: FitConfig = FitConfig(), a0=None) -> FitResult:
    """Fit ``spec`` to table ``n`` by maximum likelihood.

    Each iteration moves every free coordinate by its own Newton step,
    ``a_i <- a_i - score_i / H_ii``, using the derivatives at the previous
    iterate.  Steps are halved (at most ``cfg.max_halvings`` times) while
    they leave the feasible region or lower the likelihood.

    Parameters
    ----------
    n : ContingencyTable or array_like
        Observed counts.  Plain arrays may hold nonnegative reals.
    spec : ModelSpec
        Family, the fixed ``t`` and the identifiability constraint.
    cfg : FitConfig
        Iteration controls.
    a0 : array_like, optional
        Warm start; its last coordinate is moved to zero along the fiber.

    Returns
    -------
    FitResult
        ``converged`` is False when the gradient never dropped below
        ``cfg.tol``; the remaining fields then describe the last iterate.
    """
    counts = _as_counts(n)
    I = counts.shape[0]
    t = spec.t

    if a0 is not None:
        a = _to_last_zero(a0, t)
    elif cfg.init == "margin_ratio":
        a = margin_ratio_start(counts, t)
    else:
        a = np.zeros(I)
    if not _admissible(a, t):
        log.debug("start %s infeasible at t=%g; using zeros", a, t)
        a = np.zeros(I)

    f = _a_loglik(counts, a, t)
    history = []
    converged = False
    it = 0
    g = _score_full(counts, a, t)[:-1]
    gnorm = float(np.max(np.abs(g))) if I > 1 else 0.0
    while True:
        if gnorm <= cfg.tol:
            converged = True
            break
        if it >= cfg.max_iter:
            break
        H = _hessian_full(counts, a, t)[:-1, :-1]
        step = None
        if cfg.method == "full":
            try:
                cand = np.linalg.solve(H, -g)
                if cand @ g > 0:
                    step = cand
            except np.linalg.LinAlgError:
                pass
        if step is None:
            h = np.diag(H)
            step = g / np.maximum(np.abs(h), 1e-12)

        lam = cfg.damping
        accepted = False
        slack = 1e-13 * (1.0 + abs(f))
        for _ in range(cfg.max_halvings + 1):
            cand = a.copy()
            cand[:-1] += lam * step
            if _admissible(cand, t):
                f_new = _a_loglik(counts, cand, t)
                if np.isfinite(f_new) and f_new >= f - slack:
                    accepted = True
                    break
            lam /= 2.0
        if not accepted:
            log.warning("step rejected after %d halvings at iteration %d", cfg.max_halvings, it)
            break
        a, f = cand, f_new
        it += 1
        g = _score_full(counts, a, t)[:-1]
        gnorm = float(np.max(np.abs(g)))
        history.append((it, gnorm, lam))

    H = _hessian_full(counts, a, t)[:-1, :-1]
    try:
        np.linalg.cholesky(-H)
        negdef = True
    except np.linalg.LinAlgError:
        negdef = False

    if spec.family == "QS":
        s_hat = symmetric_mle(counts)
        p_hat = qs_prob(s_hat, a, t)
        base = s_hat.values
    else:
        s_hat = si_mle(counts)
        p_hat = qsi_prob(s_hat, a, t)
        base = np.outer(s_hat, s_hat)

    if spec.constraint == "weighted_mean_zero":
        shifted = _shift_to_weighted_mean(a, base, t)
        p_check = base * (1.0 + correction(shifted, t))
        if np.max(np.abs(p_check - p_hat)) > 1e-12:
            raise FeasibilityError("re-constraining a changed the fitted table")
        a = shifted

    return FitResult(
        spec=spec,
        a_hat=a,
        s_hat=s_hat,
        p_hat=p_hat,
        m_hat=counts.sum() * p_hat,
        loglik=loglik(counts, p_hat),
        iterations=it,
        converged=converged,
        grad_norm=gnorm,
        hessian_negdef=negdef,
        history=history,
    )


# Minimal polynomial over Q of the first coordinate of the MLE for the
# 3x3 table [[2,3,5],[11,13,17],[19,23,29]] at t = 2/3, highest degree first.
# The a^8 coefficient is -14305524252579; DROPPED_DIGIT_POLYNOMIAL_A1 keeps
# the same digits with the leading 1 of that coefficient dropped (-4305524252579);
# its only real root is near -11.54.
MINIMAL_POLYNOMIAL_A1 = (
    62031304,
    2201861910,
    30829909776,
    206135547000,
    528436383696,
    -1126661553720,
    -9740892273264,
    -14305524252579,
    26533957305582,
    88281552626154,
    44254830057030,
    -76332701171853,
    -83490498412056,
    1857597611688,
    29825005557312,
    9354112703280,
)

DROPPED_DIGIT_POLYNOMIAL_A1 = MINIMAL_POLYNOMIAL_A1[:7] + (-4305524252579,) + MINIMAL_POLYNOMIAL_A1[8:]


def _horner(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def verify_minimal_polynomial(a1: float, radius: float = 1e-9, coeffs=MINIMAL_POLYNOMIAL_A1) -> bool:
    """True iff the degree-15 minimal polynomial changes sign on ``[a1 - radius, a1 + radius]``.

    Evaluation is exact: both endpoints are converted to rationals first.
    """
    lo = _horner(coeffs, Fraction(a1) - Fraction(radius))
    hi = _horner(coeffs, Fraction(a1) + Fraction(radius))
    return (lo < 0 < hi) or (hi < 0 < lo) or lo == 0 or hi == 0


def constrained_residual(p_hat, t: float) -> float:
    """Value of the 3x3 QS_t cubic at ``p_hat``; zero on the model.

    Larger tables go through :func:`quasisym.ideal.membership_residual`.
    """
    p = np.asarray(p_hat, dtype=float)
    if p.shape == (3, 3):
        p12, p13, p21, p23, p31, p32 = p[0, 1], p[0, 2], p[1, 0], p[1, 2], p[2, 0], p[2, 1]
        return float(
            (1 + t + t * t) * (p12 * p23 * p31 - p21 * p32 * p13)
            + t
            * (
                p12 * p23 * p13
                + p12 * p32 * p31
                + p21 * p23 * p31
                - p12 * p32 * p13
                - p21 * p23 * p13
                - p21 * p32 * p31
            )
        )
    from .ideal import Graph, membership_residual

    return membership_residual(p, Graph.complete(p.shape[0]), t)

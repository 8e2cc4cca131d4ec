"""phi-divergences between tables and the closest table to symmetry.

The family used here is

    phi_t(u) = f(u) - f(1) - f'(1)(u - 1),   f(u) = (u + sigma) log(u + sigma),

with ``sigma = 2t / (1 - t)``.  At ``t = 0`` this is the Kullback-Leibler
kernel ``u log u - u + 1``.  At ``t = 1`` the shift diverges and the
Pearson kernel ``(u - 1)^2 / 2`` is used instead.  Values are not rescaled:
``phi_t''(1) = (1 - t) / (1 + t)`` is exposed as :meth:`PhiSpec.curvature`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tables import SymmetricTable


class ConvergenceError(RuntimeError):
    pass


class InfeasibleClassError(ValueError):
    pass


@dataclass(frozen=True)
class PhiSpec:
    t: float = 0.0

    def __post_init__(self):
        t = float(self.t)
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"t must lie in [0, 1], got {self.t}")
        object.__setattr__(self, "t", t)
        if abs(float(phi(self, 1.0))) > 1e-12 or abs(float(phi_prime(self, 1.0))) > 1e-12:
            raise ValueError("phi is not normalized at u = 1")
        grid = np.linspace(0.05, 10.0, 200)
        if np.any(phi_second(self, grid) <= 0):
            raise ValueError("phi is not strictly convex on (0, 10]")

    @property
    def kind(self) -> str:
        if self.t == 0.0:
            return "kl"
        if self.t == 1.0:
            return "pearson"
        return "phi_t"

    @property
    def sigma(self) -> float:
        return math.inf if self.t == 1.0 else 2.0 * self.t / (1.0 - self.t)

    def curvature(self) -> float:
        """``phi''(1)``."""
        return float(phi_second(self, 1.0))


def _check_u(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if np.any(u < 0):
        raise ValueError("phi is defined for u >= 0 only")
    return u


def phi(spec: PhiSpec, u):
    u = _check_u(u)
    if spec.t == 1.0:
        out = 0.5 * (u - 1.0) ** 2
    elif spec.t == 0.0:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(u > 0, u * np.log(np.where(u > 0, u, 1.0)), 0.0) - u + 1.0
    else:
        s = spec.sigma
        out = (u + s) * np.log(u + s) - (1 + s) * math.log(1 + s) - (math.log(1 + s) + 1) * (u - 1)
    return out[()] if out.ndim == 0 else out


def phi_prime(spec: PhiSpec, u):
    u = _check_u(u)
    if spec.t == 1.0:
        out = u - 1.0
    else:
        s = spec.sigma
        with np.errstate(divide="ignore"):
            out = np.log(u + s) - math.log(1 + s)
    return out[()] if out.ndim == 0 else out


def phi_second(spec: PhiSpec, u):
    u = _check_u(u)
    if spec.t == 1.0:
        out = np.ones_like(u)
    else:
        with np.errstate(divide="ignore"):
            out = 1.0 / (u + spec.sigma)
    return out[()] if out.ndim == 0 else out


def d_phi(spec: PhiSpec, p, q) -> float:
    """``sum q_ij phi(p_ij / q_ij)``.

    Cells with ``q = 0`` contribute nothing when ``p = 0`` and ``+inf``
    otherwise, since ``phi(u) / u`` is unbounded for every member of the family.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError("p and q must have the same shape")
    if np.any(p < 0) or np.any(q < 0):
        raise ValueError("tables must be nonnegative")
    zero_q = q == 0
    if np.any(p[zero_q] > 0):
        return math.inf
    mask = ~zero_q
    return float(np.sum(q[mask] * phi(spec, p[mask] / q[mask])))


def _pairs(s: np.ndarray):
    I = s.shape[0]
    return [(i, j) for i in range(I) for j in range(i + 1, I) if s[i, j] > 0]


def closest_to_symmetry(
    s, row_margins, t: float, tol: float = 1e-10, max_iter: int = 100
) -> np.ndarray:
    """Minimize ``D_phi_t(p, s)`` over tables with ``p_ij + p_ji = 2 s_ij`` and row sums ``row_margins``.

    Free variables are ``d_ij = p_ij - s_ij = -d_ji`` for ``i < j``; the row
    constraints read ``sum_j d_ij = r_i - s_i+``.  Solved by Newton's method
    on the KKT system from the start ``d = 0``, which need not satisfy the
    constraints, with a backtracking search on the KKT residual that keeps
    every cell strictly positive.
    """
    spec = PhiSpec(t)
    s = s.values if isinstance(s, SymmetricTable) else np.asarray(s, dtype=float)
    r = np.asarray(row_margins, dtype=float)
    I = s.shape[0]
    if r.shape != (I,):
        raise ValueError(f"row_margins must have length {I}")
    b_full = r - s.sum(axis=1)
    if abs(b_full.sum()) > 1e-9 * max(1.0, s.sum()):
        raise InfeasibleClassError("row margins do not have the total of s")
    pairs = _pairs(s)
    if not pairs:
        if np.max(np.abs(b_full)) > tol:
            raise InfeasibleClassError("no free cells but margins differ from those of s")
        return s.copy()
    m = len(pairs)
    # one row constraint is implied by the others
    A = np.zeros((I - 1, m))
    for k, (i, j) in enumerate(pairs):
        if i < I - 1:
            A[i, k] = 1.0
        if j < I - 1:
            A[j, k] = -1.0
    b = b_full[: I - 1]
    sv = np.array([s[i, j] for i, j in pairs])

    def grad_hess(d):
        up, dn = 1.0 + d / sv, 1.0 - d / sv
        g = phi_prime(spec, up) - phi_prime(spec, dn)
        h = (phi_second(spec, up) + phi_second(spec, dn)) / sv
        return np.atleast_1d(g), np.atleast_1d(h)

    def residual(d, nu):
        g, _ = grad_hess(d)
        return np.concatenate([g + A.T @ nu, A @ d - b])

    def inside(d):
        return bool(np.all(np.abs(d) < sv))

    d = np.zeros(m)
    nu = np.zeros(I - 1)
    for _ in range(max_iter):
        res = residual(d, nu)
        norm = np.linalg.norm(res)
        if norm < tol:
            break
        g, h = grad_hess(d)
        kkt = np.block([[np.diag(h), A.T], [A, np.zeros((I - 1, I - 1))]])
        try:
            step = np.linalg.solve(kkt, -res)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(kkt, -res, rcond=None)[0]
        dd, dnu = step[:m], step[m:]
        alpha = 1.0
        while alpha > 1e-12:
            d_new, nu_new = d + alpha * dd, nu + alpha * dnu
            if inside(d_new) and np.linalg.norm(residual(d_new, nu_new)) <= (1 - 0.01 * alpha) * norm:
                break
            alpha *= 0.5
        else:
            raise InfeasibleClassError("no strictly positive table satisfies the margin constraints")
        d, nu = d_new, nu_new
    else:
        raise ConvergenceError(f"KKT residual {norm:.3g} after {max_iter} iterations")
    p = s.copy()
    for k, (i, j) in enumerate(pairs):
        p[i, j] = s[i, j] + d[k]
        p[j, i] = s[i, j] - d[k]
    return p

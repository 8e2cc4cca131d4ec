"""Profiles of the fit over t, consensus t for several tables, and the best t for one."""
from __future__ import annotations

import csv
import io
import logging
import os
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .fit import FitConfig, FitResult, newton_fit
from .gof import gof_report
from .model import ModelSpec

log = logging.getLogger(__name__)

DEFAULT_GRID_SIZE = 101
REFINE_TOL = 1e-4
FLAT_TOL = 1e-8


def default_grid(size: int = DEFAULT_GRID_SIZE) -> np.ndarray:
    if size < 2:
        raise ValueError("a grid needs at least two points")
    return np.linspace(0.0, 1.0, size)


def _clean_grid(grid) -> np.ndarray:
    g = np.unique(np.concatenate([np.asarray(grid, dtype=float).ravel(), [0.0, 1.0]]))
    if g[0] < 0 or g[-1] > 1:
        raise ValueError("grid values must lie in [0, 1]")
    return g


@dataclass
class TProfile:
    family: str
    grid: np.ndarray
    loglik: np.ndarray
    g2: np.ndarray
    p_value: np.ndarray
    a_hat: np.ndarray  # one row per grid point
    converged: np.ndarray

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "loglik", "g2", "p_value"])
        for row in zip(self.grid, self.loglik, self.g2, self.p_value):
            w.writerow([f"{v:.10g}" for v in row])
        return buf.getvalue()

    def write_csv(self, path: str | os.PathLike) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())


def _fit_at(n, family: str, t: float, cfg: FitConfig, a0=None) -> FitResult:
    return newton_fit(n, ModelSpec(family, t), cfg, a0=a0)


def profile(n, family: str = "QS", grid=None, cfg: FitConfig = FitConfig()) -> TProfile:
    """Fit at every grid point, warm-starting each fit from the previous one.

    Non-converged points are kept and flagged.
    """
    grid = _clean_grid(default_grid() if grid is None else grid)
    lls, g2s, ps, avs, conv = [], [], [], [], []
    prev = None
    for t in grid:
        res = _fit_at(n, family, float(t), cfg, a0=prev)
        if not res.converged:
            log.warning("fit did not converge at t=%g", t)
        rep = gof_report(n, res.m_hat, family)
        lls.append(res.loglik)
        g2s.append(rep.g2)
        ps.append(rep.p_value)
        avs.append(res.a_hat)
        conv.append(res.converged)
        prev = res.a_hat
    return TProfile(
        family=family.upper(),
        grid=grid,
        loglik=np.array(lls),
        g2=np.array(g2s),
        p_value=np.array(ps),
        a_hat=np.array(avs),
        converged=np.array(conv),
    )


@dataclass
class ConsensusResult:
    alpha: float
    interval: tuple | None  # longest qualifying stretch, refined
    crossing: float | None
    crossing_value: float | None  # common p-value (or G^2) at the crossing
    segments: list = field(default_factory=list)  # every qualifying stretch
    flat: bool = False  # the two curves coincide on the whole grid
    statistic: str = "p_value"
    profiles: list = field(default_factory=list, repr=False)


def _stat(n, family, t, cfg, statistic):
    res = _fit_at(n, family, t, cfg)
    rep = gof_report(n, res.m_hat, family)
    return rep.p_value if statistic == "p_value" else rep.g2


def _refine_root(f, lo, hi, tol):
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        return 0.5 * (lo + hi)
    return float(brentq(f, lo, hi, xtol=tol))


def consensus(
    tables,
    family: str = "QS",
    alpha: float = 0.05,
    grid=None,
    cfg: FitConfig = FitConfig(),
    statistic: str = "p_value",
    tol: float = REFINE_TOL,
) -> ConsensusResult:
    """Range of t acceptable for all tables at level ``alpha`` and, for two tables, where their curves cross.

    ``statistic`` picks the curves compared for the crossing: ``"p_value"``
    or ``"g2"``.
    """
    if len(tables) < 2:
        raise ValueError("consensus needs at least two tables")
    dims = {np.asarray(getattr(n, "counts", n)).shape for n in tables}
    if len(dims) != 1:
        raise ValueError("all tables must have the same dimension")
    if statistic not in ("p_value", "g2"):
        raise ValueError("statistic must be 'p_value' or 'g2'")
    grid = _clean_grid(default_grid() if grid is None else grid)
    profs = [profile(n, family, grid, cfg) for n in tables]
    pmin = np.min([p.p_value for p in profs], axis=0)
    ok = pmin >= alpha

    def margin(t):
        return min(_stat(n, family, t, cfg, "p_value") for n in tables) - alpha

    segments = []
    k = 0
    while k < len(grid):
        if not ok[k]:
            k += 1
            continue
        start = k
        while k + 1 < len(grid) and ok[k + 1]:
            k += 1
        lo = grid[start] if start == 0 else _refine_root(margin, grid[start - 1], grid[start], tol)
        hi = grid[k] if k == len(grid) - 1 else _refine_root(margin, grid[k], grid[k + 1], tol)
        segments.append((float(lo), float(hi)))
        k += 1
    interval = max(segments, key=lambda s: s[1] - s[0]) if segments else None

    crossing = value = None
    flat = False
    if len(tables) == 2:
        curves = [p.p_value if statistic == "p_value" else p.g2 for p in profs]
        diff = curves[0] - curves[1]
        if np.all(np.abs(diff) <= 1e-12):
            flat = True
        else:
            def gap(t):
                return _stat(tables[0], family, t, cfg, statistic) - _stat(
                    tables[1], family, t, cfg, statistic
                )

            brackets = [
                k for k in range(len(grid) - 1)
                if diff[k] == 0 or np.sign(diff[k]) != np.sign(diff[k + 1])
            ]
            if brackets:
                # prefer a crossing inside the consensus interval
                inside = [
                    k for k in brackets
                    if interval and interval[0] <= grid[k + 1] and grid[k] <= interval[1]
                ]
                k = (inside or brackets)[0]
                crossing = float(grid[k]) if diff[k] == 0 else _refine_root(gap, grid[k], grid[k + 1], tol)
                value = float(_stat(tables[0], family, crossing, cfg, statistic))
    return ConsensusResult(
        alpha=alpha,
        interval=interval,
        crossing=crossing,
        crossing_value=value,
        segments=segments,
        flat=flat,
        statistic=statistic,
        profiles=profs,
    )


@dataclass
class BestT:
    t: float
    fit: FitResult
    flat: bool
    profile: TProfile = field(repr=False)


def best_t(n, family: str = "QS", tol: float = REFINE_TOL, grid=None, cfg: FitConfig = FitConfig()) -> BestT:
    """Maximize the profile log-likelihood over ``[0, 1]``.

    The best point of a coarse grid is refined by bounded scalar
    minimization on the two neighbouring grid cells.
    """
    prof = profile(n, family, default_grid() if grid is None else grid, cfg)
    ll = prof.loglik
    flat = bool(np.max(ll) - np.min(ll) <= FLAT_TOL * max(1.0, abs(np.max(ll))))
    k = int(np.argmax(ll))
    best_t_val, best_ll = float(prof.grid[k]), float(ll[k])
    if not flat:
        lo = float(prof.grid[max(k - 1, 0)])
        hi = float(prof.grid[min(k + 1, len(prof.grid) - 1)])
        start = prof.a_hat[k]
        out = minimize_scalar(
            lambda t: -_fit_at(n, family, t, cfg, a0=start).loglik,
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": tol},
        )
        if -out.fun > best_ll:
            best_t_val, best_ll = float(out.x), float(-out.fun)
    fit = _fit_at(n, family, best_t_val, cfg)
    return BestT(t=best_t_val, fit=fit, flat=flat, profile=prof)

"""The fitted QS_t table is the phi_t-projection of the symmetric fit.

Minimizing D_phi_t(p, s_hat) over tables with the fitted row margins and
with p + p^T = 2 s_hat lands exactly on the maximum-likelihood QS_t table.
"""
import numpy as np

from quasisym import ModelSpec, newton_fit
from quasisym.datasets import VISION
from quasisym.divergence import PhiSpec, closest_to_symmetry, d_phi

for t in (0.0, 0.5, 1.0):
    fit = newton_fit(VISION, ModelSpec("QS", t))
    p = closest_to_symmetry(fit.s_hat, fit.p_hat.sum(axis=1), t)
    spec = PhiSpec(t)
    print(f"t = {t:.1f} ({spec.kind}): max |projection - p_hat| = {np.max(np.abs(p - fit.p_hat)):.2e}, "
          f"D = {d_phi(spec, p, fit.s_hat.values):.3e}, phi''(1) = {spec.curvature():.3f}")

"""How often is the log-likelihood non-concave in a?

Random count tables and random feasible a.  At small t the Hessian in a is
often indefinite, yet in b = log(1 + (1 - t) a) every sample is concave.
"""
import numpy as np

from quasisym.fit import hessian, score


def sample_a(rng, I, t):
    while True:
        a = np.append(rng.uniform(-1.5, 1.5, I - 1), 0.0)
        if t * a.max() - a.min() < 0.95:
            return a


rng = np.random.default_rng(0)
print(" I     t   indefinite in a   indefinite in b")
for I in (3, 4, 5):
    for t in (0.0, 0.25, 0.5, 1.0):
        in_a = in_b = 0
        for _ in range(500):
            n = rng.integers(1, 60, size=(I, I)).astype(float)
            a = sample_a(rng, I, t)
            H = hessian(n, a, t)
            in_a += np.linalg.eigvalsh(H)[-1] >= 0
            if t < 1:
                e = 1 + (1 - t) * a[:-1]
                J = np.diag(e / (1 - t))
                Hb = J @ H @ J + np.diag(score(n, a, t) * e / (1 - t))
                in_b += np.linalg.eigvalsh(Hb)[-1] >= 0
        print(f"{I:2d}  {t:4.2f}   {in_a:5d}/500         {in_b if t < 1 else '-':>5}")

"""Quadratic generators of the QSI_1 model ``p_ij = s_i s_j (1 + a_i - a_j)``."""
from __future__ import annotations

from itertools import product

from .poly import Poly, lex_key


def _quadric_families(I: int):
    p = Poly.var
    idx = range(1, I + 1)
    for i, j in product(idx, repeat=2):
        yield (p(i, j) + p(j, i)) ** 2 - 4 * p(i, i) * p(j, j)
    for i, j, k in product(idx, repeat=3):
        yield p(k, k) * (p(i, j) - p(j, i)) + p(k, i) * p(j, k) - p(i, k) * p(k, j)
        yield (p(i, j) - p(j, i)) * (p(j, k) - p(k, j)) + 4 * (p(j, j) * p(k, i) - p(j, i) * p(k, j))
    for i, j, k, l in product(idx, repeat=4):
        yield p(l, i) * (p(j, k) - p(k, j)) + p(l, j) * (p(k, i) - p(i, k)) + p(l, k) * (p(i, j) - p(j, i))
        yield p(i, l) * (p(j, k) - p(k, j)) + p(j, l) * (p(k, i) - p(i, k)) + p(k, l) * (p(i, j) - p(j, i))


def qsi1_quadrics(I: int) -> list[Poly]:
    """All distinct nonzero quadrics of the five families, up to sign, over every index choice."""
    if I < 3:
        raise ValueError("I must be at least 3")
    seen = {}
    for q in _quadric_families(I):
        if not q:
            continue
        q = q.primitive().normalized()
        seen.setdefault(q, None)
    return sorted(seen, key=lambda q: [lex_key(m) for m, _ in q.sorted_terms()])

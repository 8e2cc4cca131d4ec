"""Cycle polynomials, the t = 0 Markov basis and membership residuals.

For a cycle ``C = (v_0, ..., v_{n-1})`` an orientation picks a direction for
every edge ``{v_k, v_{k+1}}``.  The reference orientation ``o_C`` follows the
vertex sequence; ``c(delta) = 2 #(edges agreeing with o_C) - n``.  Each
orientation contributes its monomial ``prod p_ij`` with a coefficient that
depends only on ``n`` and ``c``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .graph import Graph, canonical_cycle, enumerate_cycles
from .poly import Poly, TPoly, make_monomial

MAX_CYCLE_LENGTH = 12


@dataclass(frozen=True)
class OrientedCycle:
    """A cycle together with one direction per edge (``True`` = along the sequence)."""

    vertices: tuple
    forward: tuple

    def __post_init__(self):
        if len(self.vertices) != len(self.forward):
            raise ValueError("need one direction per cycle edge")

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def oriented_edges(self) -> tuple:
        vs, n = self.vertices, len(self.vertices)
        return tuple(
            (vs[k], vs[(k + 1) % n]) if f else (vs[(k + 1) % n], vs[k])
            for k, f in enumerate(self.forward)
        )

    @property
    def c_value(self) -> int:
        return 2 * sum(self.forward) - self.length

    @property
    def monomial(self) -> tuple:
        return make_monomial(self.oriented_edges)


def orientations(cycle) -> list[OrientedCycle]:
    """All ``2^n`` orientations; index 0 is ``o_C`` and index ``-1`` its reverse."""
    vs = tuple(cycle)
    return [OrientedCycle(vs, bits) for bits in product((True, False), repeat=len(vs))]


def coeff_formula(n: int, c: int) -> TPoly:
    """Coefficient of an orientation with ``c(delta) = c`` on an ``n``-cycle."""
    if n < 3:
        raise ValueError("cycles have length at least 3")
    if c == 0:
        raise ValueError("c = 0 has no closed-form coefficient; see cycle_polynomial")
    if abs(c) > n or (c - n) % 2:
        raise ValueError(f"c = {c} is impossible on a cycle of length {n}")
    m = abs(c)
    sign = 1 if c > 0 else -1
    if n % 2 == 0:
        r = n // 2
        powers = range(r - m // 2, r + m // 2 - 1, 2)
    else:
        r = (n + 1) // 2
        powers = range(r - (m + 1) // 2, r + (m - 1) // 2)
    out = [0] * (max(powers) + 1)
    for k in powers:
        out[k] = sign
    return TPoly(out)


def _orientation_value(bits, a, t):
    # product over edges of (1 + a_i - t a_j), x factored out
    n = len(bits)
    val = 1
    for k, f in enumerate(bits):
        i, j = (k, (k + 1) % n) if f else ((k + 1) % n, k)
        val *= 1 + a[i] - t * a[j]
    return val


def _vanishes(coeffs: list, n: int, trials: int = 4, seed: int = 0) -> bool:
    """Exact check that ``sum coeff * p^delta`` vanishes on random parameter points."""
    rng = random.Random(seed)
    bits_list = list(product((True, False), repeat=n))
    for _ in range(trials):
        a = [Fraction(rng.randint(-97, 97), rng.randint(1, 31)) for _ in range(n)]
        t = Fraction(rng.randint(-50, 50), rng.randint(1, 17))
        total = sum(c(t) * _orientation_value(b, a, t) for c, b in zip(coeffs, bits_list) if c)
        if total != 0:
            return False
    return True


@lru_cache(maxsize=None)
def _template(n: int) -> tuple:
    """Coefficients for the ``2^n`` orientations of an ``n``-cycle, in ``orientations`` order.

    Orientations with ``c = 0`` (even ``n``) get coefficient zero.  That choice
    is certified here by exact vanishing at random points: the relation
    supported on orientation monomials is unique up to scale, so any
    vanishing completion of the nonzero coefficients is the relation itself.
    """
    if not 3 <= n <= MAX_CYCLE_LENGTH:
        raise ValueError(f"cycle length must lie in 3..{MAX_CYCLE_LENGTH}")
    coeffs = []
    for bits in product((True, False), repeat=n):
        c = 2 * sum(bits) - n
        coeffs.append(TPoly() if c == 0 else coeff_formula(n, c))
    if not _vanishes(coeffs, n):
        raise RuntimeError(f"coefficient template for n = {n} does not vanish on the model")
    return tuple(coeffs)


def cycle_polynomial(cycle) -> Poly:
    """The generator ``P^C`` of the model ideal attached to a cycle."""
    vs = canonical_cycle(cycle)
    coeffs = _template(len(vs))
    return Poly({o.monomial: c for o, c in zip(orientations(vs), coeffs) if c})


def leading_orientation(cycle, order: str = "lex") -> tuple[tuple, tuple]:
    """Monomials ``(p^{o_C}, p^{bar o_C})`` labelled so the first is larger in ``order``."""
    from .poly import TERM_ORDERS

    vs = canonical_cycle(cycle)
    fwd = OrientedCycle(vs, (True,) * len(vs)).monomial
    rev = OrientedCycle(vs, (False,) * len(vs)).monomial
    return (fwd, rev) if TERM_ORDERS[order](fwd, rev) else (rev, fwd)


def markov_binomial(cycle) -> Poly:
    """``p^{o_C} - p^{bar o_C}`` with ``o_C`` following the canonical vertex order."""
    vs = canonical_cycle(cycle)
    fwd = OrientedCycle(vs, (True,) * len(vs)).monomial
    rev = OrientedCycle(vs, (False,) * len(vs)).monomial
    return Poly({fwd: 1, rev: -1})


def markov_basis(g: Graph) -> list[Poly]:
    """Cycle binomials of ``g``: the moves connecting tables with equal sufficient statistics."""
    return [markov_binomial(c) for c in enumerate_cycles(g)]


def cycle_generators(g: Graph) -> list[Poly]:
    return [cycle_polynomial(c) for c in enumerate_cycles(g)]


def membership_residual(p, g: Graph, t: float) -> float:
    """Largest ``|P^C(p)|`` over the cycles of ``g`` with coefficients at ``t``.

    ``p`` is an ``I x I`` array (0-based) or a mapping keyed by ``(i, j)``.
    """
    if hasattr(p, "shape") or isinstance(p, (list, tuple)):
        p = np.asarray(p, dtype=float)
    worst = 0.0
    for c in enumerate_cycles(g):
        val = abs(float(cycle_polynomial(c).specialize(t).evaluate(p)))
        worst = max(worst, val)
    return worst

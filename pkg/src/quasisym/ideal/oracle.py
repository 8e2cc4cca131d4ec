"""Independent derivation of cycle polynomials by exact linear algebra.

For a fixed rational ``t`` the model relation on an ``n``-cycle spans the
kernel of the matrix whose rows are the orientation monomials evaluated at
parameter points ``p_ij = x_ij (1 + a_i - t a_j)``.  The product of the
``x`` over the cycle edges is common to every orientation and drops out, so
only ``a`` is sampled.  Kernels for several integer ``t`` are then glued
together by rational interpolation in ``t``.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import reduce
from itertools import product

from sympy import QQ, ZZ, Poly as SymPoly, Symbol
from sympy.polys.matrices import DomainMatrix

from .cycles import OrientedCycle, _orientation_value
from .graph import canonical_cycle
from .poly import Poly, TPoly

MAX_ORACLE_LENGTH = 8

_T = Symbol("t")


class OracleError(RuntimeError):
    pass


def _kernel_at(n: int, t: int, rng: random.Random, extra_rows: int = 8) -> list[Fraction]:
    bits_list = list(product((True, False), repeat=n))
    m = len(bits_list)
    rows = []
    for _ in range(m + extra_rows):
        a = [rng.randint(-7, 7) for _ in range(n)]
        rows.append([ZZ(_orientation_value(b, a, t)) for b in bits_list])
    mat = DomainMatrix(rows, (len(rows), m), ZZ).convert_to(QQ)
    basis = mat.nullspace().to_Matrix()
    if basis.shape[0] != 1:
        raise OracleError(f"kernel at t = {t} has dimension {basis.shape[0]}, expected 1")
    vec = [Fraction(int(v.p), int(v.q)) for v in basis.row(0)]
    if vec[0] == 0:
        raise OracleError(f"reference orientation has zero coefficient at t = {t}")
    return [v / vec[0] for v in vec]


def _rational_fit(ts: list[int], values: list[Fraction], deg: int):
    """Find ``N/D`` with degrees <= ``deg`` through the points; returns sympy polys."""
    # unknowns: N_0..N_deg, D_0..D_deg ; equations N(t_k) - v_k D(t_k) = 0
    rows = []
    for tk, vk in zip(ts, values):
        pw = [Fraction(tk) ** d for d in range(deg + 1)]
        rows.append([QQ(x.numerator, x.denominator) for x in pw]
                    + [QQ((-vk * x).numerator, (-vk * x).denominator) for x in pw])
    mat = DomainMatrix(rows, (len(rows), 2 * deg + 2), QQ)
    basis = mat.nullspace().to_Matrix()
    if basis.shape[0] == 0:
        raise OracleError("no rational function of the allowed degree fits the kernel data")
    sol = list(basis.row(0))
    num = SymPoly(list(reversed(sol[: deg + 1])), _T, domain=QQ)
    den = SymPoly(list(reversed(sol[deg + 1:])), _T, domain=QQ)
    g = num.gcd(den)
    return num.quo(g), den.quo(g)


def cycle_polynomial_oracle(cycle, seed: int = 0) -> Poly:
    """Recompute ``P^C`` from scratch, normalized so the ``o_C`` coefficient is 1 at ``t = 0``."""
    vs = canonical_cycle(cycle)
    n = len(vs)
    if n > MAX_ORACLE_LENGTH:
        raise OracleError(f"oracle is limited to cycles of length <= {MAX_ORACLE_LENGTH}")
    deg = n - 1
    # more points than the 2n unknowns of each rational fit
    ts = list(range(2, 2 * deg + 6))
    rng = random.Random(seed)
    kernels = [_kernel_at(n, t, rng) for t in ts]
    m = len(kernels[0])
    fracs = [_rational_fit(ts, [k[idx] for k in kernels], deg) for idx in range(m)]
    common = reduce(lambda acc, nd: acc.lcm(nd[1]), fracs, SymPoly(1, _T, domain=QQ))
    polys = [num * common.quo(den) for num, den in fracs]
    lead0 = polys[0].eval(0)
    if lead0 == 0:
        raise OracleError("reference coefficient vanishes at t = 0")
    polys = [p * (1 / lead0) for p in polys]
    # clear denominators, then make integer coefficients primitive
    dens = [int(c.q) for p in polys for c in p.all_coeffs()]
    scale = math.lcm(*dens)
    int_polys = [[int(c * scale) for c in reversed(p.all_coeffs())] for p in polys]
    content = math.gcd(*(c for p in int_polys for c in p))
    orients = [OrientedCycle(vs, bits) for bits in product((True, False), repeat=n)]
    terms = {}
    for o, coeffs in zip(orients, int_polys):
        tp = TPoly(c // content for c in coeffs)
        if tp:
            terms[o.monomial] = tp
    result = Poly(terms)
    # the glued polynomial must reproduce every per-t kernel
    for t, k in zip(ts, kernels):
        ref = terms[orients[0].monomial](t)
        for o, v in zip(orients, k):
            got = terms.get(o.monomial, TPoly())(t)
            if Fraction(got) != v * ref:
                raise OracleError(f"interpolated polynomial disagrees with the kernel at t = {t}")
    return result

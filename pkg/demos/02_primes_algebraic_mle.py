"""The MLE of a small table is an algebraic number.

For the 3x3 table of primes under QS_{2/3}, the first coordinate of a_hat is
a root of a degree-15 integer polynomial.  Eliminating a2 from the two score
equations with a resultant recovers that polynomial from scratch.
"""
import sympy as sp

from quasisym import ModelSpec, newton_fit
from quasisym.datasets import PRIMES
from quasisym.fit import MINIMAL_POLYNOMIAL_A1, constrained_residual, verify_minimal_polynomial

fit = newton_fit(PRIMES, ModelSpec("QS", 2 / 3))
print("a_hat =", [f"{x:.20f}" for x in fit.a_hat])
print("p_hat =")
print(fit.p_hat.round(7))
print("cubic constraint at p_hat:", constrained_residual(fit.p_hat, 2 / 3))
print("a1 is a root of the stored polynomial:", verify_minimal_polynomial(fit.a_hat[0]))

a1, a2 = sp.symbols("a1 a2")
t = sp.Rational(2, 3)
n = PRIMES.counts.tolist()
a = [a1, a2, 0]
numerators = []
for i in range(2):
    expr = 0
    for j in range(3):
        if j != i:
            num = (1 + a[j] - t * a[j]) * (n[i][j] * (1 + a[j] - t * a[i]) - n[j][i] * (1 + a[i] - t * a[j]))
            den = (1 + a[i] - t * a[j]) * (1 + a[j] - t * a[i]) * (2 + (1 - t) * (a[i] + a[j]))
            expr += num / den
    numerators.append(sp.expand(sp.fraction(sp.together(expr))[0]))

res = sp.factor_list(sp.resultant(numerators[0], numerators[1], a2))
for f, mult in res[1]:
    print(f"factor of degree {sp.degree(f, a1)} (multiplicity {mult})")
big = next(f for f, _ in res[1] if sp.degree(f, a1) == 15)
coeffs = [int(c) for c in sp.Poly(big, a1).all_coeffs()]
coeffs = coeffs if coeffs[0] > 0 else [-c for c in coeffs]
print("matches stored coefficients:", tuple(coeffs) == MINIMAL_POLYNOMIAL_A1)
print("real roots:", [f"{float(r):.12f}" for r in sp.Poly(big, a1).real_roots()])

"""Generators of the model ideal from cycles, and the t = 0 degeneration."""
from quasisym.ideal import (
    Graph,
    cycle_polynomial,
    cycle_polynomial_oracle,
    enumerate_cycles,
    markov_binomial,
    monomial_ideal_components,
    spanning_trees,
)
from quasisym.datasets import K4_MINUS_EDGE

print("triangle:")
print(" ", cycle_polynomial((1, 2, 3)))
print("  at t = 0:", cycle_polynomial((1, 2, 3)).specialize(0))

square = cycle_polynomial((1, 2, 3, 4))
print("\n4-cycle has", len(square.terms), "terms; balanced orientations drop out")
print(" ", square)

# the closed form is checked against an interpolation of exact kernels
for n in (3, 4, 5):
    cyc = tuple(range(1, n + 1))
    print(f"n = {n}: closed form equals interpolated kernel:", cycle_polynomial_oracle(cyc) == cycle_polynomial(cyc))

g = Graph.from_edges(K4_MINUS_EDGE)
print("\ngraph with edges", g.sorted_edges)
for c in enumerate_cycles(g):
    print("  cycle", c, " Markov move:", markov_binomial(c))
dec = monomial_ideal_components(g)
print(len(spanning_trees(g)), "spanning trees, one prime component each:")
for tree, comp in zip(dec.trees, dec.component_strings()):
    print("  ", sorted(tree), "->", comp)
print("intersection equals the initial ideal:", dec.verified)

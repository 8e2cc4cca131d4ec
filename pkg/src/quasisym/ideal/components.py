"""Prime decomposition of the initial monomial ideal of the t = 0 model."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cycles import leading_orientation
from .graph import DisconnectedGraphError, Graph, canonical_cycle, enumerate_cycles, spanning_trees, tree_path
from .poly import TERM_ORDERS, monomial_str, var_name

EXHAUSTIVE_CHECK_VARS = 14


@dataclass(frozen=True)
class MonomialDecomposition:
    trees: tuple  # spanning trees, aligned with components
    components: tuple  # frozensets of variables (i, j)
    generators: tuple  # leading monomials p^{o_C}, one per cycle
    verified: bool | None  # None when the exhaustive check was skipped

    def component_strings(self) -> list[str]:
        return ["<" + ",".join(var_name(v) for v in sorted(c)) + ">" for c in self.components]

    def generator_strings(self) -> list[str]:
        return [monomial_str(m) for m in self.generators]


def _oriented_vars(g: Graph):
    return sorted([e for e in g.edges] + [(j, i) for i, j in g.edges])


def _intersection_matches(variables, components, generators) -> bool:
    # both ideals are squarefree, so comparing their squarefree members suffices
    supports = [frozenset(m) for m in generators]
    for k in range(len(variables) + 1):
        for subset in combinations(variables, k):
            s = frozenset(subset)
            in_gens = any(sup <= s for sup in supports)
            in_meet = all(s & comp for comp in components)
            if in_gens != in_meet:
                return False
    return True


def monomial_ideal_components(g: Graph, order: str = "lex", verify: bool | None = None) -> MonomialDecomposition:
    """One monomial prime per spanning tree.

    For a tree ``T`` and an edge ``{i, j}`` outside it, ``T + {i, j}`` holds a
    unique cycle ``C``; the component of ``T`` collects the orientation of
    ``{i, j}`` that appears in the leading monomial of ``C``.
    """
    if order not in TERM_ORDERS:
        raise ValueError(f"unknown term order {order!r}")
    if not g.is_connected():
        raise DisconnectedGraphError("graph is not connected")
    trees = spanning_trees(g)
    components = []
    for tree in trees:
        comp = set()
        for i, j in sorted(g.edges - tree):
            cycle = canonical_cycle(tree_path(tree, i, j))
            lead, _ = leading_orientation(cycle, order)
            comp.add((i, j) if (i, j) in lead else (j, i))
        components.append(frozenset(comp))
    generators = [leading_orientation(c, order)[0] for c in enumerate_cycles(g)]
    variables = _oriented_vars(g)
    if verify is None:
        verify = len(variables) <= EXHAUSTIVE_CHECK_VARS
    verified = _intersection_matches(variables, components, generators) if verify else None
    return MonomialDecomposition(tuple(trees), tuple(components), tuple(generators), verified)

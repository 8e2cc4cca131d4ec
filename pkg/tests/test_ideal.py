import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from quasisym.ideal import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    Poly,
    TPoly,
    canonical_cycle,
    coeff_formula,
    cycle_generators,
    cycle_polynomial,
    cycle_polynomial_oracle,
    enumerate_cycles,
    format_graph,
    leading_orientation,
    load_graph,
    markov_basis,
    markov_binomial,
    matrix_tree_count,
    membership_residual,
    monomial_ideal_components,
    orientations,
    parse_graph,
    qsi1_quadrics,
    spanning_trees,
)
from quasisym.model import qs_prob, qsi_prob
from quasisym.tables import SymmetricTable

from conftest import random_feasible_a

ONE_T_T2 = TPoly([1, 1, 1])
T = TPoly([0, 1])


def p(i, j):
    return Poly.var(i, j)


def test_k3_cubic_matches_displayed_form():
    expected = ONE_T_T2 * (p(1, 2) * p(2, 3) * p(3, 1) - p(2, 1) * p(3, 2) * p(1, 3)) + T * (
        p(1, 2) * p(2, 3) * p(1, 3)
        + p(1, 2) * p(3, 2) * p(3, 1)
        + p(2, 1) * p(2, 3) * p(3, 1)
        - p(1, 2) * p(3, 2) * p(1, 3)
        - p(2, 1) * p(2, 3) * p(1, 3)
        - p(2, 1) * p(3, 2) * p(3, 1)
    )
    got = cycle_polynomial((1, 2, 3))
    assert got == expected
    assert str(got).startswith("t*p12*p13*p23 - t*p12*p13*p32 + (1+t+t^2)*p12*p23*p31")


def test_k3_orientation_table():
    rows = {
        ((1, 2), (2, 3), (1, 3)): (1, T),
        ((1, 2), (2, 3), (3, 1)): (3, ONE_T_T2),
        ((1, 2), (3, 2), (1, 3)): (-1, -T),
        ((1, 2), (3, 2), (3, 1)): (1, T),
        ((2, 1), (2, 3), (1, 3)): (-1, -T),
        ((2, 1), (2, 3), (3, 1)): (1, T),
        ((2, 1), (3, 2), (1, 3)): (-3, -ONE_T_T2),
        ((2, 1), (3, 2), (3, 1)): (-1, -T),
    }
    poly = cycle_polynomial((1, 2, 3))
    seen = {}
    for o in orientations((1, 2, 3)):
        key = tuple(sorted(o.oriented_edges))
        seen[frozenset(key)] = (o.c_value, poly.coefficient(o.monomial))
    assert len(seen) == 8
    for edges, (c, coeff) in rows.items():
        assert seen[frozenset(edges)] == (c, coeff)
        assert coeff_formula(3, c) == coeff


def test_coeff_formula_examples():
    assert str(coeff_formula(4, 4)) == "1+t^2"
    assert str(coeff_formula(4, -2)) == "-t"
    assert str(coeff_formula(5, 1)) == "t^2"
    assert str(coeff_formula(5, 3)) == "t+t^2+t^3"
    assert str(coeff_formula(6, 4)) == "t+t^3"
    for n in range(3, 9):
        top = [1] * n if n % 2 else [1 - k % 2 for k in range(n - 1)]
        assert coeff_formula(n, n) == TPoly(top)
        for c in range(-n, n + 1, 2):
            if c:
                assert coeff_formula(n, -c) == -coeff_formula(n, c)
    with pytest.raises(ValueError):
        coeff_formula(4, 0)
    with pytest.raises(ValueError):
        coeff_formula(4, 3)


def test_k4_generators():
    gens = cycle_generators(Graph.complete(4))
    assert len(gens) == 7
    assert sorted(g.degree for g in gens) == [3, 3, 3, 3, 4, 4, 4]
    assert [len(c) for c in enumerate_cycles(Graph.complete(4))] == [3, 3, 3, 3, 4, 4, 4]


def test_even_cycles_drop_balanced_orientations():
    # orientations with as many forward as backward edges get coefficient zero
    assert len(cycle_polynomial((1, 2, 3, 4)).terms) == 10
    assert len(cycle_polynomial(tuple(range(1, 7))).terms) == 44
    assert len(cycle_polynomial((1, 2, 3, 4, 5)).terms) == 32


def test_k4_minus_edge(data_dir):
    g = load_graph(data_dir / "k4_minus_edge.txt")
    assert len(spanning_trees(g)) == 8
    dec = monomial_ideal_components(g)
    assert dec.verified is True
    assert sorted(dec.component_strings()) == sorted(
        [
            "<p12,p13>", "<p12,p32>", "<p12,p24>", "<p12,p41>",
            "<p23,p41>", "<p23,p24>", "<p24,p31>", "<p31,p41>",
        ]
    )
    assert dec.generator_strings() == ["p12*p23*p31", "p12*p24*p41", "p13*p24*p32*p41"]
    gens = cycle_generators(g)
    assert [len(q.terms) for q in gens] == [8, 8, 10]


@pytest.mark.parametrize("I", [3, 4, 5])
def test_t0_specialization_gives_markov_binomials(I):
    g = Graph.complete(I)
    for c, gen, b in zip(enumerate_cycles(g), cycle_generators(g), markov_basis(g)):
        assert gen.specialize(0) == b
        assert b == markov_binomial(c)
        lead, trail = leading_orientation(c)
        assert b.coefficient(lead) == 1 and b.coefficient(trail) == -1


def _exact_qs_point(rnd, n, t):
    """Exact rational table on n categories with QS_t form."""
    a = [Fraction(rnd.randint(-4, 4), 11) for _ in range(n)]
    p = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            s = Fraction(rnd.randint(1, 9), rnd.randint(1, 9))
            ai, aj = a[i - 1], a[j - 1]
            c = (1 + t) * (ai - aj) / (2 + (1 - t) * (ai + aj))
            p[(i, j)] = s * (1 + c)
            p[(j, i)] = s * (1 - c)
    return p


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_cycle_polynomial_vanishes_exactly(n):
    rnd = random.Random(n)
    poly = cycle_polynomial(tuple(range(1, n + 1)))
    for _ in range(100):
        t = Fraction(rnd.randint(0, 12), 12)
        vals = _exact_qs_point(rnd, n, t)
        assert poly.evaluate(vals, t) == 0
    # a generic table does not lie on the hypersurface
    vals = {(i, j): Fraction(rnd.randint(1, 50)) for i in range(1, n + 1) for j in range(1, n + 1)}
    assert poly.evaluate(vals, Fraction(1, 3)) != 0


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_oracle_agrees_with_formula(n):
    cycle = tuple(range(1, n + 1))
    assert cycle_polynomial_oracle(cycle) == cycle_polynomial(cycle)


def test_oracle_on_relabelled_cycle():
    assert cycle_polynomial_oracle((2, 4, 1)) == cycle_polynomial((1, 2, 4))


def _random_connected_graph(rnd, I):
    order = list(range(1, I + 1))
    rnd.shuffle(order)
    edges = {tuple(sorted((order[k], order[rnd.randrange(k)]))) for k in range(1, I)}
    for i, j in itertools.combinations(range(1, I + 1), 2):
        if rnd.random() < 0.3:
            edges.add((i, j))
    return Graph.from_edges(edges, I)


def test_spanning_trees_match_matrix_tree_theorem():
    rnd = random.Random(11)
    for _ in range(20):
        g = _random_connected_graph(rnd, rnd.randint(3, 8))
        trees = spanning_trees(g)
        assert len(trees) == matrix_tree_count(g)
        assert len(set(trees)) == len(trees)
        assert all(len(tr) == g.n_vertices - 1 for tr in trees)
    assert matrix_tree_count(Graph.complete(6)) == 6**4


def test_components_one_per_tree():
    rnd = random.Random(5)
    for _ in range(12):
        g = _random_connected_graph(rnd, rnd.randint(3, 6))
        dec = monomial_ideal_components(g)
        assert len(dec.components) == len(spanning_trees(g))
        if 2 * len(g.edges) <= 14:
            assert dec.verified is True
        assert len(dec.generators) == len(enumerate_cycles(g))
    assert len(monomial_ideal_components(Graph.complete(4)).components) == 16
    assert sorted(monomial_ideal_components(Graph.complete(3)).component_strings()) == ["<p12>", "<p23>", "<p31>"]


def test_cycle_enumeration_is_canonical():
    assert canonical_cycle((3, 1, 2)) == canonical_cycle((1, 3, 2))
    assert canonical_cycle((2, 3, 1)) == (1, 2, 3)
    cycles = enumerate_cycles(Graph.complete(5))
    assert len(cycles) == 10 + 15 + 12
    assert len(set(cycles)) == len(cycles)


def test_membership_residual(rng):
    g = Graph.complete(4)
    for t in (0.0, 0.4, 1.0):
        m = rng.random((4, 4))
        s = SymmetricTable((m + m.T) / (m + m.T).sum())
        a = random_feasible_a(rng, 4, t, scale=0.5)
        assert membership_residual(qs_prob(s, a, t), g, t) < 1e-14
    q = qs_prob(s, np.array([0.3, -0.2, 0.1, 0.0]), 0.0)
    assert membership_residual(q, g, 0.0) < 1e-14
    # cubic terms are of order 1e-4 here, so these are far above rounding noise
    assert membership_residual(q, g, 1.0) > 1e-7
    assert membership_residual(rng.random((4, 4)), g, 0.5) > 1e-4


def test_qsi1_quadrics():
    assert [len(qsi1_quadrics(I)) for I in (3, 4)] == [12, 50]
    quads = qsi1_quadrics(4)
    rnd = random.Random(3)
    for _ in range(100):
        w = [Fraction(rnd.randint(1, 20)) for _ in range(4)]
        a = [Fraction(rnd.randint(-5, 5), 13) for _ in range(4)]
        vals = {(i, j): w[i - 1] * w[j - 1] * (1 + (a[i - 1] - a[j - 1] if i != j else 0))
                for i in range(1, 5) for j in range(1, 5)}
        assert all(q.evaluate(vals) == 0 for q in quads)
    off = {(i, j): Fraction(rnd.randint(1, 30)) for i in range(1, 5) for j in range(1, 5)}
    assert any(q.evaluate(off) != 0 for q in quads)


def test_qsi1_quadrics_against_float_model(rng):
    quads = qsi1_quadrics(3)
    for _ in range(20):
        w = rng.random(3)
        a = random_feasible_a(rng, 3, 1.0, scale=0.4)
        table = qsi_prob(w / w.sum(), a, 1.0)
        assert max(abs(q.evaluate(table)) for q in quads) < 1e-14


def test_graph_parsing(data_dir):
    g = parse_graph("# triangle\n1 2\n2 3\n\n3 1\n")
    assert g == Graph.complete(3)
    assert parse_graph(format_graph(g)) == g
    assert load_graph(data_dir / "k4.txt") == Graph.complete(4)
    for bad in ("1 1", "0 2", "1 x", "1 2 3"):
        with pytest.raises(GraphError):
            parse_graph(bad)
    with pytest.raises(DisconnectedGraphError):
        monomial_ideal_components(Graph.from_edges([(1, 2), (3, 4)]))
    with pytest.raises(GraphError):
        enumerate_cycles(Graph.complete(13))

import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings

from conftest import graphs
from minorfree.constructions import complete, complete_bipartite, split_graph, split_matching_graph
from minorfree.graph import Graph, GraphError, empty
from minorfree.spectral import (
    CharPoly,
    ConvergenceError,
    adjacency_matrix,
    char_poly,
    exact_spectral_radius,
    lambda_F_closed,
    lambda_F_even,
    lambda_F_odd,
    lambda_S_closed,
    largest_root,
    odd_cubic,
    quotient_matrix,
    quotient_radius,
    spectral_radius,
)


def test_small_values():
    assert spectral_radius(complete_bipartite(2, 7)).lam == pytest.approx(math.sqrt(14), abs=1e-10)
    assert spectral_radius(complete(5)).lam == pytest.approx(4, abs=1e-10)
    assert spectral_radius(empty(3)).lam == 0.0


@settings(max_examples=80)
@given(graphs(max_n=10))
def test_power_iteration_matches_numpy(g):
    res = spectral_radius(g)
    expected = max(np.linalg.eigvalsh(adjacency_matrix(g))) if g.n > 1 else 0.0
    assert res.lam == pytest.approx(expected, abs=1e-8)
    assert res.residual <= 1e-10
    assert res.vector.max() == pytest.approx(1.0) and res.vector.min() >= 0


def test_disconnected_uses_largest_component():
    g = Graph.from_edges(6, [(0, 1), (2, 3), (3, 4), (4, 2)])
    res = spectral_radius(g)
    assert res.lam == pytest.approx(2.0)
    assert res.vector[0] == 0 and res.vector[5] == 0


def test_convergence_error_carries_estimate():
    with pytest.raises(ConvergenceError) as info:
        spectral_radius(Graph.from_edges(6, [(i, i + 1) for i in range(5)]), max_iter=2)
    assert info.value.result.iterations == 2


def test_char_poly_small():
    assert char_poly(complete(3)).coeffs == (1, 0, -3, -2)
    assert char_poly(Graph.from_edges(3, [(0, 1), (1, 2)])).coeffs == (1, 0, -2, 0)
    with pytest.raises(GraphError):
        char_poly(empty(21))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=9))
def test_char_poly_matches_sympy(g):
    x = sympy.Symbol("x")
    expected = sympy.Matrix(adjacency_matrix(g).astype(int).tolist()).charpoly(x).all_coeffs()
    assert list(char_poly(g).coeffs) == [int(c) for c in expected]


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=2, max_n=10))
def test_exact_radius_matches_power(g):
    if g.edge_count():
        assert exact_spectral_radius(g) == pytest.approx(spectral_radius(g).lam, abs=1e-9)


def test_largest_root_reports_bad_bracket():
    with pytest.raises(ArithmeticError):
        largest_root(CharPoly((1, 0, -4)), lo=3, hi=4)


def test_largest_root_repeated_root():
    # (x - 2)^2 (x + 1) = x^3 - 3x^2 + 4
    assert largest_root(CharPoly((1, -3, 0, 4)), lo=1, hi=3) == pytest.approx(2.0, abs=1e-11)


@pytest.mark.parametrize("n,r", [(10, 5), (12, 6), (7, 4), (20, 8)])
def test_split_closed_form(n, r):
    assert lambda_S_closed(n, r) == pytest.approx(spectral_radius(split_graph(n, r - 3)).lam, abs=1e-9)


def test_matching_even_closed_form_and_printed_variant():
    assert lambda_F_even(10, 5) == pytest.approx(5.0, abs=1e-12)
    assert lambda_F_even(10, 5, strict=True) == pytest.approx(4.5, abs=1e-12)
    with pytest.raises(ValueError):
        lambda_F_even(9, 5)


def test_matching_odd_cubic():
    assert odd_cubic(9, 5) == (1, -2, -13, 2)
    assert lambda_F_odd(9, 5) == pytest.approx(spectral_radius(split_matching_graph(9, 2)).lam, abs=1e-10)
    with pytest.raises(ValueError):
        lambda_F_odd(10, 5)


def test_odd_cubic_is_quotient_characteristic_polynomial():
    """Symbolic check: det(xI - Q) for the three-class quotient of F(n, t)."""
    x, n, t = sympy.symbols("x n t")
    q = sympy.Matrix([[t - 1, n - t - 1, 1], [t, 1, 0], [t, 0, 0]])
    det = sympy.expand((x * sympy.eye(3) - q).det())
    r = t + 3
    cubic = x**3 - t * x**2 - (t * n - (r**2 - 5 * r + 5)) * x + t
    assert sympy.simplify(det - cubic) == 0


def test_quotient_of_matching_graph():
    g = split_matching_graph(9, 2)
    cells = [[0, 1], list(range(2, 8)), [8]]
    assert quotient_matrix(g, cells).tolist() == [[1, 6, 1], [2, 1, 0], [2, 0, 0]]
    assert quotient_radius(g, cells) == pytest.approx(lambda_F_closed(9, 5), abs=1e-10)
    with pytest.raises(ValueError):
        quotient_matrix(g, [[0, 1, 2], list(range(3, 9))])

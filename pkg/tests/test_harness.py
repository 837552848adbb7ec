import pytest

from minorfree.constructions import PatternSpec, pattern_graph
from minorfree.graph import Graph
from minorfree.harness import (
    harness_clique_completion,
    harness_rewire,
    harness_structure,
    rewire,
)
from minorfree.minor import find_minor, oracle_has_minor


def test_deterministic_by_seed():
    a = harness_rewire(60, 4, 7, seed=11).to_json()
    b = harness_rewire(60, 4, 7, seed=11).to_json()
    assert a == b
    assert harness_rewire(60, 4, 7, seed=12).to_json() != a


def test_structure_harness_small():
    rep = harness_structure(150, 4, 8, seed=2)
    assert rep.passed and rep.checked.get("minus", 0) > 0


def test_structure_skips_when_b_too_small():
    rep = harness_structure(10, 5, 6, seed=0)
    assert rep.skipped == 10 and rep.sampled == 0


def test_planted_p3_yields_minor():
    # |A| = 2, B = {2..6} with a path 2-3-4 inside B: K5^- must appear
    edges = [(0, 1)] + [(a, b) for a in (0, 1) for b in range(2, 7)] + [(2, 3), (3, 4)]
    g = Graph.from_edges(7, edges)
    assert find_minor(g, pattern_graph(PatternSpec.kr_minus(5))) is not None


def test_clique_completion_skips_infeasible_sizes():
    rep = harness_clique_completion(20, 5, 8, seed=0)
    assert rep.skipped == 20


def test_rewire_fixed_point():
    g = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3)])
    assert rewire(g, [0], [1], 3) == g


def test_rewire_counterexample_is_genuine():
    """Both deciders agree: the paw is K4^- -free but its rewiring is K4^-."""
    h = pattern_graph(PatternSpec.kr_minus(4))
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 1)])
    g_star = rewire(g, [0], [1], 3)
    assert find_minor(g, h) is None and not oracle_has_minor(g, h)
    assert find_minor(g_star, h) is not None and oracle_has_minor(g_star, h)


def test_failures_carry_oracle_verdicts():
    rep = harness_rewire(200, 4, 6, seed=1)
    assert rep.checker_disagreements == 0
    assert all(f.oracle_confirms for f in rep.failures)

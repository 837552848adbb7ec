import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from minorfree.canon import canonical_form, canonical_labelling, is_isomorphic
from minorfree.graph import Graph
from test_graph import to_nx


@settings(max_examples=150)
@given(graphs(max_n=9), st.randoms())
def test_invariant_under_relabelling(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    assert canonical_form(g) == canonical_form(g.relabel(perm))


@settings(max_examples=150)
@given(graphs(min_n=5, max_n=7), graphs(min_n=5, max_n=7))
def test_agrees_with_networkx_isomorphism(g, h):
    if g.n == h.n:
        assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


@given(graphs(max_n=9))
def test_labelling_reproduces_form(g):
    rows, order = canonical_labelling(g)
    pos = [0] * g.n
    for k, v in enumerate(order):
        pos[v] = k
    assert g.relabel(pos).adj == rows


def test_regular_graphs_distinguished():
    # two 3-regular graphs on 6 vertices: the prism and K_{3,3}
    prism = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    k33 = Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])
    assert not is_isomorphic(prism, k33)

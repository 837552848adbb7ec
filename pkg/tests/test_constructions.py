import pytest

from minorfree.canon import is_isomorphic
from minorfree.constructions import (
    PatternClass,
    PatternSpec,
    catalog_spec,
    classify_deletion,
    complete,
    complete_bipartite,
    figure1_catalog,
    is_path_forest,
    pattern_graph,
    predicted_extremal,
    split_graph,
    split_matching_graph,
)
from minorfree.graph import Graph, GraphError

# degree sequences of the named catalogue, F1..F19
CATALOG_DEGREES = [
    [3, 3, 2, 2], [2, 2, 2, 2], [3, 2, 2, 1], [2, 2, 2, 0], [2, 2, 1, 1], [1, 1, 1, 1],
    [4, 4, 4, 3, 3], [4, 3, 3, 3, 3], [4, 4, 3, 3, 2], [4, 3, 3, 3, 1], [3, 3, 3, 3, 2],
    [4, 3, 3, 2, 2], [3, 3, 3, 3, 0], [3, 3, 3, 2, 1], [3, 3, 2, 2, 2], [4, 2, 2, 2, 2],
    [3, 2, 2, 2, 1], [2, 2, 2, 2, 2], [2, 2, 2, 1, 1],
]


def test_split_graph_shape():
    s = split_graph(10, 2)
    assert s.edge_count() == 1 + 2 * 8
    assert s.degrees()[:2] == [9, 9] and set(s.degrees()[2:]) == {2}


@pytest.mark.parametrize("n,t", [(10, 2), (9, 2), (6, 1), (7, 1)])
def test_split_matching_graph_shape(n, t):
    f = split_matching_graph(n, t)
    m = (n - t) // 2
    assert f.edge_count() == t * (t - 1) // 2 + t * (n - t) + m
    tail = f.degrees()[t:]
    assert tail.count(t + 1) == 2 * m and tail.count(t) == (n - t) % 2


def test_split_rejects_bad_parameters():
    for n, t in [(3, 0), (3, 3), (65, 2)]:
        with pytest.raises(GraphError):
            split_graph(n, t)


def test_complete_bipartite():
    assert complete_bipartite(2, 7).edge_count() == 14


def test_path_family_pattern():
    g = pattern_graph(PatternSpec.path_family(7, (3, 2)))
    assert g.edge_count() == 21 - 3
    assert not g.has_edge(0, 1) and not g.has_edge(1, 2) and not g.has_edge(3, 4)
    assert g.has_edge(0, 2)


@pytest.mark.parametrize("r,paths", [(3, (4,)), (5, (3, 3)), (4, (1,))])
def test_path_family_rejects_overfull(r, paths):
    with pytest.raises(GraphError):
        PatternSpec.path_family(r, paths)


def test_explicit_rejects_duplicates_and_range():
    with pytest.raises(GraphError):
        PatternSpec.explicit(4, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        PatternSpec.explicit(4, [(0, 4)])


def test_catalogue_degrees():
    cat = figure1_catalog()
    assert [name for name, _ in cat] == [f"F{k}" for k in range(1, 20)]
    for (name, g), degs in zip(cat, CATALOG_DEGREES):
        assert sorted(g.degrees(), reverse=True) == degs, name


def test_catalogue_pairwise_distinct():
    cat = [g for _, g in figure1_catalog()]
    for i in range(len(cat)):
        for j in range(i + 1, len(cat)):
            assert not is_isomorphic(cat[i], cat[j])


def test_named_shortcuts():
    assert is_isomorphic(pattern_graph(catalog_spec("F1")), pattern_graph(PatternSpec.kr_minus(4)))
    assert is_isomorphic(pattern_graph(catalog_spec("F3")), pattern_graph(PatternSpec.kr_double_minus(4)))
    assert is_isomorphic(pattern_graph(catalog_spec("F7")), pattern_graph(PatternSpec.kr_minus(5)))
    assert is_isomorphic(pattern_graph(catalog_spec("F9")), pattern_graph(PatternSpec.kr_double_minus(5)))
    assert pattern_graph(PatternSpec.clique(5)) == complete(5)


@pytest.mark.parametrize(
    "name,cls,pred",
    [
        ("F1", PatternClass.MATCHING, "F"),
        ("F2", PatternClass.MATCHING, "F"),
        ("F3", PatternClass.NON_MATCHING_TRIANGLE_FREE_CONNECTED, "S"),
        ("F4", PatternClass.NON_MATCHING_TRIANGLE_FREE_CONNECTED, "S"),
        ("F5", PatternClass.NON_MATCHING_TRIANGLE_FREE_CONNECTED, "S"),
        ("F6", PatternClass.NON_MATCHING_TRIANGLE_FREE_CONNECTED, "S"),
        ("F8", PatternClass.MATCHING, "F"),
        ("F11", PatternClass.OTHER, "S"),
        ("F19", PatternClass.NON_MATCHING_TRIANGLE_FREE_CONNECTED, "S"),
    ],
)
def test_classification(name, cls, pred):
    spec = catalog_spec(name)
    assert classify_deletion(spec) is cls
    assert predicted_extremal(spec) == pred


def test_triangle_deletion_has_no_prediction():
    spec = PatternSpec.explicit(5, [(0, 1), (1, 2), (0, 2)])
    assert classify_deletion(spec) is PatternClass.OTHER
    assert not is_path_forest(spec)
    assert predicted_extremal(spec) is None


def test_unknown_catalogue_name():
    with pytest.raises(GraphError):
        catalog_spec("F20")


def test_spec_json():
    assert PatternSpec.kr_minus(5).to_json() == {"r": 5, "label": "K5-", "paths": [2]}
    assert catalog_spec("F2").to_json()["edges"] == [[0, 1], [2, 3]]
    assert Graph.from_edges(2, [(0, 1)]) == pattern_graph(PatternSpec.clique(2))

import json
import random

import pytest

from minorfree.canon import canonical_form
from minorfree.constructions import PatternSpec, catalog_spec, complete, split_graph, split_matching_graph
from minorfree.extremal import (
    compare_spectral_radii,
    edge_bound,
    enumerate_labeled,
    isomorphism_classes,
    merge_reports,
    search_extremal,
    search_extremal_many,
    verify_edge_bounds,
)
from minorfree.graph import Graph, GraphError, from_graph6, to_graph6
from minorfree.minor import find_minor


def test_labelled_counts_and_order():
    assert sum(1 for _ in enumerate_labeled(3)) == 8
    first = [g.edges() for g in enumerate_labeled(3)][:4]
    assert first == [[], [(0, 1)], [(0, 2)], [(0, 1), (0, 2)]]
    with pytest.raises(GraphError):
        next(enumerate_labeled(8))


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
def test_isomorphism_class_counts(n, count):
    assert len(isomorphism_classes(n)) == count


def test_connected_class_count():
    assert sum(1 for _ in enumerate_labeled(6, dedup=True, connected_only=True)) == 112


def test_single_graph_corpus():
    rep = search_extremal([split_graph(8, 1)], PatternSpec.kr_double_minus(4))
    assert rep.family_size == 1 and rep.argmax == [to_graph6(from_graph6(rep.argmax[0]))]
    assert rep.matches_theorem == "S"


def test_empty_corpus():
    rep = search_extremal([], PatternSpec.kr_minus(4))
    assert rep.family_size == 0 and rep.argmax == [] and rep.max_lambda is None


def test_mixed_orders_rejected():
    with pytest.raises(GraphError):
        search_extremal([complete(3), complete(4)], PatternSpec.kr_minus(4))


def test_search_n6_matching_pattern():
    rep = search_extremal(enumerate_labeled(6), PatternSpec.kr_minus(4))
    assert rep.corpus_size == 32768
    assert 0 < rep.family_size <= rep.corpus_size
    assert rep.matches_theorem == "F"
    assert canonical_form(from_graph6(rep.argmax[0])) == canonical_form(split_matching_graph(6, 1))
    for s in rep.argmax:
        assert find_minor(from_graph6(s), complete(4).delete_edge(0, 1)) is None


def test_order_independence_and_merge():
    spec = catalog_spec("F3")
    corpus = list(enumerate_labeled(5))
    base = search_extremal(corpus, spec).to_json()
    random.Random(3).shuffle(corpus)
    assert search_extremal(corpus, spec).to_json() == base
    parts = [search_extremal(corpus[i::4], spec) for i in range(4)]
    assert merge_reports(parts).to_json() == base
    assert merge_reports(parts[::-1]).to_json() == base


def test_parallel_equals_serial():
    spec = catalog_spec("F2")
    serial = search_extremal(enumerate_labeled(5), spec).to_json()
    assert search_extremal(enumerate_labeled(5), spec, workers=2, chunk_size=100).to_json() == serial


def test_many_equals_single():
    specs = [catalog_spec("F1"), catalog_spec("F5")]
    many = search_extremal_many(enumerate_labeled(5), specs, connected_only=True)
    for spec, rep in zip(specs, many):
        assert rep.to_json() == search_extremal(enumerate_labeled(5), spec, connected_only=True).to_json()


def test_ties_are_kept():
    # two non-isomorphic graphs with the same spectrum: K_{1,4} and C4 + K1
    star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    c4k1 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert compare_spectral_radii(star, c4k1) == 0
    rep = search_extremal([star, c4k1], PatternSpec.clique(5))
    assert len(rep.argmax) == 2


def test_exact_tiebreak_separates_close_radii():
    g = split_graph(7, 1)
    h = split_matching_graph(7, 1)
    assert compare_spectral_radii(h, g) == 1
    assert compare_spectral_radii(g, h) == -1


def test_report_json_round_trips():
    rep = search_extremal(enumerate_labeled(4), PatternSpec.kr_minus(4))
    assert json.loads(json.dumps(rep.to_json())) == rep.to_json()


def test_edge_bounds_small():
    assert edge_bound("kr", 5, 7) == 15
    assert edge_bound("kr", 4, 6) == 9
    assert edge_bound("kr-minus", 5, 6) == 11
    chk = verify_edge_bounds(enumerate_labeled(5), 4)
    assert chk.violations == [] and chk.checked == 1024 and chk.bound == 7


def test_edge_bound_sanity_row():
    # K_{r-1} sits far below the bound
    for r in range(3, 8):
        g = complete(r - 1)
        assert g.edge_count() <= edge_bound("kr", r, r - 1 + 1)


def test_edge_bound_flags_exception():
    chk = verify_edge_bounds(enumerate_labeled(6), 5, "kr-minus")
    classes = {canonical_form(from_graph6(s)) for s in chk.flagged}
    assert classes == {canonical_form(split_matching_graph(6, 2))}
    assert chk.violations == []


def test_edge_bound_ranges():
    with pytest.raises(ValueError):
        verify_edge_bounds([], 8, "kr")
    with pytest.raises(ValueError):
        verify_edge_bounds([], 4, "kr-minus")
    with pytest.raises(ValueError):
        verify_edge_bounds([], 5, "nope")

"""Canonical labelling for small graphs by individualisation-refinement.

The canonical form is the lexicographically smallest relabelled adjacency
tuple over all leaves of the search tree.  Refinement is label-independent
(cells split by neighbour counts into every cell), so the leaf set and hence
the minimum is an isomorphism invariant.  Branching skips vertices that are
twins of an already explored vertex in the same cell: the transposition of
twins is an automorphism that fixes the current partition, so their subtrees
yield the same leaves.
"""

from __future__ import annotations

from .graph import Graph, bits

Form = tuple[int, tuple[int, ...]]


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        new_cells: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in cell}
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            for key in sorted(groups):
                new_cells.append(groups[key])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _relabelled(adj: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(adj)
    for k, v in enumerate(order):
        pos[v] = k
    out = []
    for v in order:
        row = 0
        for u in bits(adj[v]):
            row |= 1 << pos[u]
        out.append(row)
    return tuple(out)


def canonical_labelling(g: Graph) -> tuple[tuple[int, ...], list[int]]:
    """Return (canonical adjacency rows, order) where ``order[k]`` is the
    original vertex placed at canonical position ``k``."""
    adj = g.adj
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(adj, cells)
        target = next((k for k, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            rows = _relabelled(adj, order)
            if best[0] is None or rows < best[0]:
                best[0], best[1] = rows, order
            return
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            if any((adj[v] & ~(1 << u)) == (adj[u] & ~(1 << v)) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search([list(range(g.n))])
    return best[0], best[1]


def canonical_form(g: Graph) -> Form:
    """Hashable canonical key; equal iff the graphs are isomorphic."""
    return g.n, canonical_labelling(g)[0]


def canonical_graph(g: Graph) -> Graph:
    return Graph(g.n, canonical_labelling(g)[0])


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    return canonical_form(g) == canonical_form(h)

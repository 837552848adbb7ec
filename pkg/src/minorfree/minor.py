"""Minor containment with certified branch-set witnesses.

:func:`find_minor` is a backtracking search over branch sets.  H-vertices
are placed one at a time; each branch set is enumerated as a connected
vertex set of G whose minimum vertex (in the degree-sorted order) is its
root, so every candidate set is produced exactly once.

:func:`oracle_has_minor` is an independent check that follows the literal
definition: contract edges and delete vertices until |V(G)| = |V(H)|, then
test for H as a subgraph, memoised on canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .canon import canonical_form
from .constructions import PatternSpec, pattern_graph
from .graph import Graph, GraphError, bits

DEFAULT_BUDGET = 10**9
ORACLE_MAX_N = 10
_MEMO_LIMIT = 1 << 20


class BudgetExceeded(RuntimeError):
    """The search visited more nodes than its budget allows."""


@dataclass(frozen=True)
class MinorModel:
    branch_sets: tuple[frozenset[int], ...]

    def to_json(self) -> dict:
        return {"branch_sets": [sorted(s) for s in self.branch_sets]}

    @classmethod
    def from_json(cls, obj: dict) -> MinorModel:
        return cls(tuple(frozenset(s) for s in obj["branch_sets"]))


@dataclass(frozen=True)
class SearchOptions:
    """Pruning switches, each independently toggleable for differential tests."""

    capacity: bool = True  # enough free vertices left for the unfilled sets
    frozen_edges: bool = True  # reject a set as soon as a required edge to a placed set is missing
    connected_growth: bool = True  # grow sets only through neighbours
    lookahead: bool = True  # attachment counts and free-component reachability
    symmetry: bool = True  # twin classes of G and H
    memo: bool = True  # remember failed search states


def model_defects(g: Graph, h: Graph, model: MinorModel) -> list[str]:
    """Reasons ``model`` is not a minor model of h in g (empty when valid)."""
    sets = model.branch_sets
    if len(sets) != h.n:
        return [f"expected {h.n} branch sets, got {len(sets)}"]
    out = []
    masks = []
    for i, s in enumerate(sets):
        if not s:
            out.append(f"branch set {i} is empty")
            masks.append(0)
            continue
        if any(not 0 <= v < g.n for v in s):
            out.append(f"branch set {i} has out-of-range vertices")
            masks.append(0)
            continue
        masks.append(sum(1 << v for v in s))
    if out:
        return out
    seen = 0
    for i, m in enumerate(masks):
        if seen & m:
            out.append(f"branch set {i} overlaps an earlier set")
        seen |= m
        if not g.is_connected_mask(m):
            out.append(f"branch set {i} does not induce a connected subgraph")
    nb = [_nbhd(g.adj, m) for m in masks]
    for i, j in h.edges():
        if not nb[i] & masks[j]:
            out.append(f"no edge between branch sets {i} and {j}")
    return out


def verify_model(g: Graph, h: Graph, model: MinorModel) -> bool:
    return not model_defects(g, h, model)


def _nbhd(adj: Sequence[int], mask: int) -> int:
    out = 0
    for v in bits(mask):
        out |= adj[v]
    return out & ~mask


def _twin_pred(adj: Sequence[int]) -> list[int]:
    """Previous member of each vertex's twin class, or -1."""
    n = len(adj)
    pred = [-1] * n
    last: dict[int, int] = {}
    for v in range(n):
        for rep, prev in last.items():
            if (adj[v] & ~(1 << rep)) == (adj[rep] & ~(1 << v)):
                pred[v] = prev
                last[rep] = v
                break
        else:
            last[v] = v
    return pred


def _h_order(h: Graph) -> list[int]:
    """Descending degree; ties go to vertices with more already-placed neighbours."""
    deg = h.degrees()
    placed = 0
    order = []
    remaining = set(range(h.n))
    while remaining:
        v = min(remaining, key=lambda u: (-deg[u], -(h.adj[u] & placed).bit_count(), u))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def find_minor(
    g: Graph,
    h: Graph,
    budget: int = DEFAULT_BUDGET,
    options: SearchOptions | None = None,
) -> MinorModel | None:
    """Return a verified minor model of h in g, or None if none exists.

    Raises :class:`BudgetExceeded` when the node budget runs out, so an
    exhausted search is never mistaken for minor-freeness.
    """
    opts = options or SearchOptions()
    hn = h.n
    if hn > g.n or h.edge_count() > g.edge_count():
        return None

    deg = g.degrees()
    gorder = sorted(range(g.n), key=lambda v: (-deg[v], v))
    rank = [0] * g.n
    for k, v in enumerate(gorder):
        rank[v] = k
    adj = g.relabel(rank).adj
    gpred = _twin_pred(adj) if opts.symmetry else [-1] * g.n

    hord = _h_order(h)
    hpos = [0] * hn
    for k, v in enumerate(hord):
        hpos[v] = k
    hadj = [sum(1 << hpos[u] for u in bits(h.adj[v])) for v in hord]
    back = [[j for j in bits(hadj[k]) if j < k] for k in range(hn)]
    # pending[j][k]: H-neighbours of j placed at index >= k
    pending = [[(hadj[j] >> k).bit_count() for k in range(hn + 1)] for j in range(hn)]
    htwin_prev = [-1] * hn
    if opts.symmetry:
        for k in range(hn):
            for j in range(k - 1, -1, -1):
                if (hadj[k] & ~(1 << j)) == (hadj[j] & ~(1 << k)):
                    htwin_prev[k] = j
                    break
    twin_anchor = {j for j in htwin_prev if j >= 0}

    sets: list[int] = []
    nbs: list[int] = []
    roots: list[int] = []
    failed: set = set()
    nodes = 0

    def tick() -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"minor search exceeded {budget} nodes")

    def full_check() -> bool:
        return all(nbs[j] & sets[k] for k in range(hn) for j in back[k])

    def place(k: int, free: int) -> bool:
        tick()
        if k == hn:
            return opts.frozen_edges or full_check()
        if opts.capacity and free.bit_count() < hn - k:
            return False
        if opts.lookahead:
            for j in range(k):
                need = pending[j][k]
                if need and (nbs[j] & free).bit_count() < need:
                    return False
            comps = _components(adj, free)
            for u in range(k, hn):
                req = [nbs[j] for j in back[u] if j < k]
                if req and not any(all(c & r for r in req) for c in comps):
                    return False
        key = None
        if opts.memo and opts.frozen_edges:
            key = (
                k,
                free,
                tuple(nbs[j] & free if pending[j][k] else 0 for j in range(k)),
                tuple(roots[j] for j in range(k) if j in twin_anchor),
            )
            if key in failed:
                return False
        min_root = roots[htwin_prev[k]] + 1 if htwin_prev[k] >= 0 else 0
        req = [nbs[j] for j in back[k]] if opts.frozen_edges else []
        for root in bits(free >> min_root << min_root):
            p = gpred[root]
            if p >= 0 and free >> p & 1:
                continue
            allowed = free >> (root + 1) << (root + 1)
            if opts.lookahead and req:
                region = _reach(adj, 1 << root, allowed | 1 << root)
                if not all(region & r for r in req):
                    continue
            rbit = 1 << root
            ext = (adj[root] if opts.connected_growth else allowed) & allowed
            if grow(k, free, rbit, ext, 0, allowed, req, root):
                return True
        if key is not None and len(failed) < _MEMO_LIMIT:
            failed.add(key)
        return False

    def admissible(x: int, free: int, req: list[int]) -> bool:
        if not all(x & r for r in req):
            return False
        if not opts.connected_growth and _reach(adj, x & -x, x) != x:
            return False
        rest = free & ~x
        for v in bits(x):
            p = gpred[v]
            if p >= 0 and rest >> p & 1:
                return False
        return True

    def grow(k: int, free: int, x: int, ext: int, forb: int, allowed: int, req: list[int], root: int) -> bool:
        tick()
        if admissible(x, free, req):
            sets.append(x)
            nbs.append(_nbhd(adj, x))
            roots.append(root)
            ok = place(k + 1, free & ~x)
            if ok:
                return True
            sets.pop()
            nbs.pop()
            roots.pop()
        if opts.capacity and (free & ~x).bit_count() <= hn - k - 1:
            return False
        e = ext
        tried = 0
        while e:
            w = e & -e
            e ^= w
            wv = w.bit_length() - 1
            p = gpred[wv]
            if p >= 0 and p < root and free >> p & 1:
                tried |= w
                continue
            grown = (adj[wv] if opts.connected_growth else 0) | e
            child_ext = grown & allowed & ~x & ~w & ~forb & ~tried
            if grow(k, free, x | w, child_ext, forb | tried, allowed, req, root):
                return True
            tried |= w
        return False

    if not place(0, g.full_mask):
        return None
    model = MinorModel(
        tuple(frozenset(gorder[v] for v in bits(sets[hpos[hv]])) for hv in range(hn))
    )
    if not verify_model(g, h, model):
        raise AssertionError("minor search produced an invalid model")
    return model


def _reach(adj: Sequence[int], start: int, within: int) -> int:
    comp = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        frontier = nxt & within & ~comp
        comp |= frontier
    return comp


def _components(adj: Sequence[int], mask: int) -> list[int]:
    out = []
    while mask:
        c = _reach(adj, mask & -mask, mask)
        out.append(c)
        mask &= ~c
    return out


def has_minor(g: Graph, h: Graph, budget: int = DEFAULT_BUDGET) -> bool:
    return find_minor(g, h, budget) is not None


def is_minor_free(g: Graph, spec: PatternSpec | Graph, budget: int = DEFAULT_BUDGET) -> bool:
    h = spec if isinstance(spec, Graph) else pattern_graph(spec)
    return find_minor(g, h, budget) is None


# independent oracle ---------------------------------------------------------


def _contains_subgraph(gadj: Sequence[int], hadj: Sequence[int]) -> bool:
    """Injective edge-preserving map from h into g, by backtracking."""
    gn, hn = len(gadj), len(hadj)
    hdeg = [row.bit_count() for row in hadj]
    gdeg = [row.bit_count() for row in gadj]
    order = sorted(range(hn), key=lambda v: -hdeg[v])
    image = [-1] * hn

    def extend(k: int, used: int) -> bool:
        if k == hn:
            return True
        v = order[k]
        for w in range(gn):
            if used >> w & 1 or gdeg[w] < hdeg[v]:
                continue
            ok = True
            for u in order[:k]:
                if hadj[v] >> u & 1 and not gadj[w] >> image[u] & 1:
                    ok = False
                    break
            if ok:
                image[v] = w
                if extend(k + 1, used | 1 << w):
                    return True
        image[v] = -1
        return False

    return extend(0, 0)


def oracle_has_minor(g: Graph, h: Graph, memo: dict | None = None) -> bool:
    """Decide h <= g from the definition: contractions, deletions, subgraph test.

    ``memo`` may be shared between calls with the same ``h``.
    """
    if g.n > ORACLE_MAX_N:
        raise GraphError(f"oracle limited to n <= {ORACLE_MAX_N}")
    table: dict = {} if memo is None else memo
    h_edges = h.edge_count()

    def rec(x: Graph) -> bool:
        if x.n < h.n or x.edge_count() < h_edges:
            return False
        key = canonical_form(x)
        if key in table:
            return table[key]
        ans = _contains_subgraph(x.adj, h.adj)
        if not ans and x.n > h.n:
            ans = any(rec(x.delete_vertex(v)) for v in range(x.n)) or any(
                rec(x.contract_edge(i, j)) for i, j in x.edges()
            )
        table[key] = ans
        return ans

    return rec(g)

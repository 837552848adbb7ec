"""Named graph families: complete and complete bipartite graphs, the complete
split graph S(n, t), its matching variant F(n, t), and the forbidden-minor
patterns K_r - E(P_k1 + ... + P_kl) and K_r - M.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, GraphError, MAX_VERTICES, empty, join

Edge = tuple[int, int]


def complete(r: int) -> Graph:
    return Graph.from_edges(r, combinations(range(r), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("both sides of K_{a,b} need at least one vertex")
    return join(empty(a), empty(b))


def _check_split_args(n: int, t: int) -> None:
    if not 1 <= t < n <= MAX_VERTICES:
        raise GraphError(f"need 1 <= t < n <= {MAX_VERTICES}, got n={n}, t={t}")


def split_graph(n: int, t: int) -> Graph:
    """S(n, t): a clique on vertices 0..t-1 joined to an independent set."""
    _check_split_args(n, t)
    return join(complete(t), empty(n - t))


def split_matching_graph(n: int, t: int) -> Graph:
    """F(n, t): S(n, t) plus a maximum matching on the independent side.

    Pairs occupy (t, t+1), (t+2, t+3), ...; when n - t is odd the last
    vertex stays unmatched.
    """
    _check_split_args(n, t)
    return Graph.from_edges(n, split_graph(n, t).edges() + matching_edges(n, t))


def matching_edges(n: int, t: int) -> list[Edge]:
    return [(t + 2 * k, t + 2 * k + 1) for k in range((n - t) // 2)]


# patterns -------------------------------------------------------------------


class PatternClass(enum.Enum):
    MATCHING = "Matching"
    NON_MATCHING_TRIANGLE_FREE_CONNECTED = "NonMatchingTriangleFreeConnected"
    OTHER = "Other"


@dataclass(frozen=True)
class PatternSpec:
    """K_r minus either vertex-disjoint paths (``paths``) or an explicit edge set."""

    r: int
    paths: tuple[int, ...] | None = None
    edges: tuple[Edge, ...] | None = None
    name: str | None = None

    def __post_init__(self) -> None:
        if self.r < (3 if self.paths is not None else 2):
            raise GraphError(f"pattern order r={self.r} is too small")
        if self.r > MAX_VERTICES:
            raise GraphError("pattern exceeds vertex capacity")
        if (self.paths is None) == (self.edges is None):
            raise GraphError("give exactly one of paths or edges")
        if self.paths is not None:
            if any(k < 2 for k in self.paths):
                raise GraphError("every deleted path needs at least 2 vertices")
            if sum(self.paths) > self.r:
                raise GraphError(f"paths {self.paths} do not fit disjointly in K_{self.r}")
        else:
            seen = set()
            for i, j in self.edges:
                if not 0 <= i < j < self.r:
                    raise GraphError(f"edge ({i}, {j}) not in E(K_{self.r}) with i < j")
                if (i, j) in seen:
                    raise GraphError(f"edge ({i}, {j}) listed twice")
                seen.add((i, j))

    @classmethod
    def path_family(cls, r: int, ks, name: str | None = None) -> PatternSpec:
        return cls(r, paths=tuple(sorted(ks, reverse=True)), name=name)

    @classmethod
    def explicit(cls, r: int, m, name: str | None = None) -> PatternSpec:
        norm = tuple(sorted((min(i, j), max(i, j)) for i, j in m))
        return cls(r, edges=norm, name=name)

    @classmethod
    def kr_minus(cls, r: int) -> PatternSpec:
        return cls.path_family(r, (2,), name=f"K{r}-")

    @classmethod
    def kr_double_minus(cls, r: int) -> PatternSpec:
        return cls.path_family(r, (3,), name=f"K{r}=")

    @classmethod
    def clique(cls, r: int) -> PatternSpec:
        return cls(r, edges=(), name=f"K{r}")

    def deleted_edges(self) -> list[Edge]:
        if self.edges is not None:
            return list(self.edges)
        out = []
        start = 0
        for k in self.paths:
            out.extend((v, v + 1) for v in range(start, start + k - 1))
            start += k
        return out

    def label(self) -> str:
        if self.name:
            return self.name
        if self.paths is not None:
            return f"K{self.r}-paths:{','.join(map(str, self.paths))}"
        return f"K{self.r}-edges:{','.join(f'({i},{j})' for i, j in self.edges)}"

    def to_json(self) -> dict:
        out: dict = {"r": self.r, "label": self.label()}
        if self.paths is not None:
            out["paths"] = list(self.paths)
        else:
            out["edges"] = [list(e) for e in self.edges]
        return out


def pattern_graph(spec: PatternSpec) -> Graph:
    g = complete(spec.r)
    for i, j in spec.deleted_edges():
        g = g.delete_edge(i, j)
    return g


def kr_minus(r: int) -> Graph:
    return pattern_graph(PatternSpec.kr_minus(r))


def kr_double_minus(r: int) -> Graph:
    return pattern_graph(PatternSpec.kr_double_minus(r))


def _is_matching(m: list[Edge]) -> bool:
    ends = [v for e in m for v in e]
    return len(ends) == len(set(ends))


def _deletion_graph(m: list[Edge]) -> tuple[dict[int, set[int]], list[set[int]]]:
    nbrs: dict[int, set[int]] = {}
    for i, j in m:
        nbrs.setdefault(i, set()).add(j)
        nbrs.setdefault(j, set()).add(i)
    comps = []
    seen: set[int] = set()
    for v in nbrs:
        if v in seen:
            continue
        stack, comp = [v], {v}
        while stack:
            for u in nbrs[stack.pop()]:
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        comps.append(comp)
    return nbrs, comps


def classify_deletion(spec: PatternSpec) -> PatternClass:
    m = spec.deleted_edges()
    if _is_matching(m):
        return PatternClass.MATCHING
    nbrs, comps = _deletion_graph(m)
    has_triangle = any(nbrs[a] & nbrs[b] for a, b in m)
    if len(comps) == 1 and not has_triangle:
        return PatternClass.NON_MATCHING_TRIANGLE_FREE_CONNECTED
    return PatternClass.OTHER


def is_path_forest(spec: PatternSpec) -> bool:
    """Whether the deleted edges form vertex-disjoint paths."""
    m = spec.deleted_edges()
    nbrs, comps = _deletion_graph(m)
    if any(len(s) > 2 for s in nbrs.values()):
        return False
    n_edges = {id(c): sum(1 for i, _ in m if i in c) for c in comps}
    return all(n_edges[id(c)] == len(c) - 1 for c in comps)


def predicted_extremal(spec: PatternSpec) -> str | None:
    """Which family the extremal results predict for large n.

    ``"F"`` for F(n, r-3) (matching deletions), ``"S"`` for S(n, r-3)
    (disjoint paths with one of order >= 3, or a connected triangle-free
    non-matching deletion set), ``None`` when neither result applies.
    """
    m = spec.deleted_edges()
    if not m or spec.r < 4:
        return None
    cls = classify_deletion(spec)
    if cls is PatternClass.MATCHING:
        return "F"
    if cls is PatternClass.NON_MATCHING_TRIANGLE_FREE_CONNECTED or is_path_forest(spec):
        return "S"
    return None


def predicted_graph(spec: PatternSpec, n: int) -> Graph | None:
    kind = predicted_extremal(spec)
    if kind is None:
        return None
    t = spec.r - 3
    return split_matching_graph(n, t) if kind == "F" else split_graph(n, t)


# named catalogue: K4 - M for F1..F6, K5 - M for F7..F19
_CATALOG_DELETIONS: list[tuple[int, list[Edge]]] = [
    (4, [(0, 1)]),
    (4, [(0, 1), (2, 3)]),
    (4, [(0, 1), (1, 2)]),
    (4, [(0, 1), (0, 2), (0, 3)]),
    (4, [(0, 1), (1, 2), (2, 3)]),
    (4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
    (5, [(0, 1)]),
    (5, [(0, 1), (2, 3)]),
    (5, [(0, 1), (1, 2)]),
    (5, [(0, 1), (0, 2), (0, 3)]),
    (5, [(0, 1), (1, 2), (3, 4)]),
    (5, [(0, 1), (1, 2), (2, 3)]),
    (5, [(0, 1), (0, 2), (0, 3), (0, 4)]),
    (5, [(0, 1), (0, 2), (0, 3), (1, 4)]),
    (5, [(0, 1), (1, 2), (2, 3), (3, 4)]),
    (5, [(0, 1), (1, 2), (2, 3), (0, 3)]),
    (5, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4)]),
    (5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
    (5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
]


def catalog_spec(name: str) -> PatternSpec:
    idx = int(name.upper().lstrip("F")) - 1
    if not 0 <= idx < len(_CATALOG_DELETIONS):
        raise GraphError(f"unknown catalogue graph {name!r}")
    r, m = _CATALOG_DELETIONS[idx]
    return PatternSpec.explicit(r, m, name=f"F{idx + 1}")


def figure1_catalog() -> list[tuple[str, Graph]]:
    return [(f"F{k}", pattern_graph(catalog_spec(f"F{k}"))) for k in range(1, 20)]

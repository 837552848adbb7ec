"""Immutable simple graphs on at most 64 vertices, stored as adjacency bitmasks.

Row ``adj[i]`` has bit ``j`` set iff ``{i, j}`` is an edge.  Every operation
returns a new :class:`Graph`; vertex deletion and contraction renumber the
surviving vertices contiguously, preserving their relative order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_VERTICES = 64


class GraphError(ValueError):
    """Raised on invalid vertices, capacity overflow, or malformed input."""


def _check_capacity(n: int) -> None:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 1..{MAX_VERTICES}")


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_capacity(self.n)
        if len(self.adj) != self.n:
            raise GraphError("adjacency row count does not match n")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full or row >> i & 1:
                raise GraphError(f"row {i} has out-of-range bits or a loop")
            for j in bits(row):
                if not self.adj[j] >> i & 1:
                    raise GraphError(f"asymmetric adjacency at ({i}, {j})")

    # construction ---------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        _check_capacity(n)
        rows = [0] * n
        for i, j in edges:
            _check_pair(n, i, j)
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    # queries --------------------------------------------------------------

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i] >> (i + 1) << (i + 1))]

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return list(bits(self.adj[v]))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def components(self) -> list[frozenset[int]]:
        """Connected components, ordered by their minimum vertex."""
        seen = 0
        out = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = self.reach(1 << v, self.full_mask)
            seen |= comp
            out.append(frozenset(bits(comp)))
        return out

    def reach(self, start: int, within: int) -> int:
        """Mask of vertices reachable from ``start`` inside the mask ``within``."""
        comp = start & within
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & within & ~comp
            comp |= frontier
        return comp

    def is_connected(self) -> bool:
        return self.reach(1, self.full_mask) == self.full_mask

    def is_connected_mask(self, mask: int) -> bool:
        """Whether the subgraph induced on ``mask`` is connected (and nonempty)."""
        if not mask:
            return False
        return self.reach(mask & -mask, mask) == mask

    # minor operations -----------------------------------------------------

    def add_edge(self, i: int, j: int) -> Graph:
        _check_pair(self.n, i, j)
        rows = list(self.adj)
        rows[i] |= 1 << j
        rows[j] |= 1 << i
        return Graph(self.n, tuple(rows))

    def delete_edge(self, i: int, j: int) -> Graph:
        _check_pair(self.n, i, j)
        rows = list(self.adj)
        rows[i] &= ~(1 << j)
        rows[j] &= ~(1 << i)
        return Graph(self.n, tuple(rows))

    def delete_vertex(self, v: int) -> Graph:
        self._check_vertex(v)
        if self.n == 1:
            raise GraphError("cannot delete the only vertex")
        low = (1 << v) - 1
        rows = []
        for i, row in enumerate(self.adj):
            if i != v:
                rows.append((row & low) | (row >> (v + 1) << v))
        return Graph(self.n - 1, tuple(rows))

    def contract_edge(self, i: int, j: int) -> Graph:
        """Merge the endpoints of edge ``{i, j}`` into the lower-numbered one."""
        _check_pair(self.n, i, j)
        if not self.has_edge(i, j):
            raise GraphError(f"({i}, {j}) is not an edge")
        i, j = min(i, j), max(i, j)
        rows = list(self.adj)
        merged = (rows[i] | rows[j]) & ~(1 << i) & ~(1 << j)
        for k in bits(merged):
            rows[k] = (rows[k] | 1 << i) & ~(1 << j)
        rows[i] = merged
        rows[j] = 0
        return Graph(self.n, tuple(rows)).delete_vertex(j)

    def induced(self, vertices: Iterable[int]) -> Graph:
        keep = sorted(set(vertices))
        if not keep:
            raise GraphError("induced subgraph needs a nonempty vertex set")
        for v in keep:
            self._check_vertex(v)
        index = {v: k for k, v in enumerate(keep)}
        rows = []
        for v in keep:
            row = 0
            for u in bits(self.adj[v]):
                if u in index:
                    row |= 1 << index[u]
            rows.append(row)
        return Graph(len(keep), tuple(rows))

    def relabel(self, perm: list[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in bits(self.adj[v]):
                row |= 1 << perm[u]
            rows[perm[v]] = row
        return Graph(self.n, tuple(rows))

    def complement(self) -> Graph:
        full = self.full_mask
        return Graph(self.n, tuple(full & ~row & ~(1 << i) for i, row in enumerate(self.adj)))

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _check_pair(n: int, i: int, j: int) -> None:
    if not (0 <= i < n and 0 <= j < n):
        raise GraphError(f"vertex pair ({i}, {j}) out of range for n={n}")
    if i == j:
        raise GraphError("loops are not allowed")


def empty(n: int) -> Graph:
    _check_capacity(n)
    return Graph(n, (0,) * n)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    _check_capacity(g.n + h.n)
    return Graph(g.n + h.n, g.adj + tuple(row << g.n for row in h.adj))


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    u = disjoint_union(g, h)
    left = g.full_mask
    right = h.full_mask << g.n
    rows = tuple(row | (right if i < g.n else left) for i, row in enumerate(u.adj))
    return Graph(u.n, rows)


# graph6 ---------------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [chr(n + 63)]
    else:
        out = ["~", chr((n >> 12 & 63) + 63), chr((n >> 6 & 63) + 63), chr((n & 63) + 63)]
    acc = 0
    nbits = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise GraphError("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise GraphError("graph6 byte outside 63..126")
    if codes[0] == 63:
        if len(codes) < 4 or codes[1] == 63:
            raise GraphError("unsupported or truncated graph6 size header")
        n = codes[1] << 12 | codes[2] << 6 | codes[3]
        body = codes[4:]
    else:
        n = codes[0]
        body = codes[1:]
    if n < 1 or n > MAX_VERTICES:
        raise GraphError(f"graph6 vertex count {n} outside 1..{MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {need}")
    pad = need * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise GraphError("nonzero graph6 padding bits")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def read_graph6_stream(lines: Iterable[str]) -> Iterator[Graph]:
    """Decode a newline-delimited graph6 stream lazily, skipping blank lines."""
    for line in lines:
        line = line.strip()
        if line:
            yield from_graph6(line)

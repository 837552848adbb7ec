"""Exhaustive extremal search over small-graph corpora and edge-bound checks.

Corpora are streams of :class:`Graph`.  Minor-freeness and the spectral
radius are isomorphism invariants, so both are cached per canonical form
within one scan.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterable, Iterator

import sympy

from .canon import canonical_form
from .constructions import (
    PatternSpec,
    complete,
    pattern_graph,
    predicted_extremal,
    split_graph,
    split_matching_graph,
)
from .graph import Graph, GraphError, from_graph6, to_graph6
from .minor import BudgetExceeded, DEFAULT_BUDGET, find_minor
from .spectral import char_poly, spectral_radius

TIE_TOL = 1e-9
EXACT_TIE_MAX_N = 12
LABELED_MAX_N = 7


# corpora --------------------------------------------------------------------


def enumerate_labeled(n: int, dedup: bool = False, connected_only: bool = False) -> Iterator[Graph]:
    """All 2^(n(n-1)/2) labelled graphs on n vertices.

    Bit k of the counter is the k-th upper-triangle pair in graph6 order
    ((0,1), (0,2), (1,2), (0,3), ...).  With ``dedup`` one canonical
    representative per isomorphism class is emitted instead, sorted by
    canonical form.
    """
    if not 1 <= n <= LABELED_MAX_N:
        raise GraphError(f"labelled enumeration supports 1 <= n <= {LABELED_MAX_N}")
    if dedup:
        for g in isomorphism_classes(n):
            if not connected_only or g.is_connected():
                yield g
        return
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    for code in range(1 << len(pairs)):
        rows = [0] * n
        k = code
        idx = 0
        while k:
            if k & 1:
                i, j = pairs[idx]
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k >>= 1
            idx += 1
        g = Graph(n, tuple(rows))
        if not connected_only or g.is_connected():
            yield g


def isomorphism_classes(n: int) -> list[Graph]:
    """Canonical representatives of all graphs on n vertices, by vertex extension."""
    if n < 1:
        raise GraphError("n must be positive")
    level = {canonical_form(Graph(1, (0,)))}
    for m in range(2, n + 1):
        nxt = set()
        for _, rows in level:
            for nb in range(1 << (m - 1)):
                new = [row | ((nb >> i & 1) << (m - 1)) for i, row in enumerate(rows)]
                new.append(nb)
                nxt.add(canonical_form(Graph(m, tuple(new))))
        level = nxt
    return [Graph(m_, rows) for m_, rows in sorted(level)]


# extremal search ------------------------------------------------------------


@dataclass
class SearchReport:
    pattern: PatternSpec
    n: int | None
    connected_only: bool
    corpus_size: int = 0
    family_size: int = 0
    max_lambda: float | None = None
    argmax: list[str] = field(default_factory=list)
    matches_theorem: str = "neither"
    predicted: str | None = None

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern.to_json(),
            "n": self.n,
            "connected_only": self.connected_only,
            "corpus_size": self.corpus_size,
            "family_size": self.family_size,
            "max_lambda": self.max_lambda,
            "argmax": list(self.argmax),
            "matches_theorem": self.matches_theorem,
            "predicted": self.predicted,
        }


def compare_spectral_radii(g: Graph, h: Graph, tol: float = TIE_TOL) -> int:
    """Sign of lambda(g) - lambda(h); near-ties are settled exactly for small n."""
    a, b = spectral_radius(g).lam, spectral_radius(h).lam
    if abs(a - b) > tol:
        return 1 if a > b else -1
    if max(g.n, h.n) > EXACT_TIE_MAX_N:
        return 0
    return _exact_compare(g, h)


def _exact_compare(g: Graph, h: Graph) -> int:
    x = sympy.Symbol("x")
    p = sympy.Poly(char_poly(g).coeffs, x)
    q = sympy.Poly(char_poly(h).coeffs, x)
    if p == q:
        return 0
    root_p = _largest_root_interval(p)
    root_q = _largest_root_interval(q)
    common = sympy.gcd(p, q)
    while True:
        (a0, a1), (b0, b1) = root_p, root_q
        lo, hi = max(a0, b0), min(a1, b1)
        if lo > hi:
            return 1 if a0 > b1 else -1
        if common.degree() > 0 and common.count_roots(lo, hi) > 0:
            return 0
        root_p = _narrow(p, root_p)
        root_q = _narrow(q, root_q)


def _largest_root_interval(p: sympy.Poly) -> tuple[sympy.Rational, sympy.Rational]:
    intervals = p.intervals()
    a, b = max(intervals, key=lambda iv: iv[0][1])[0]
    return sympy.Rational(a), sympy.Rational(b)


def _narrow(p: sympy.Poly, iv: tuple) -> tuple:
    a, b = iv
    mid = (a + b) / 2
    if p.eval(mid) == 0:
        return mid, mid
    if p.count_roots(mid, b) > 0:
        return mid, b
    return a, mid


def _classify(argmax_canon: set, n: int, spec: PatternSpec) -> str:
    t = spec.r - 3
    if n is None or not 1 <= t < n or len(argmax_canon) != 1:
        return "neither"
    (only,) = argmax_canon
    if only == canonical_form(split_graph(n, t)):
        return "S"
    if only == canonical_form(split_matching_graph(n, t)):
        return "F"
    return "neither"


class _Scanner:
    """Incremental state of one search; partial scanners merge associatively."""

    def __init__(self, spec: PatternSpec, connected_only: bool, budget: int):
        self.spec = spec
        self.h = pattern_graph(spec)
        self.connected_only = connected_only
        self.budget = budget
        self.n: int | None = None
        self.corpus_size = 0
        self.family_size = 0
        self.best: Graph | None = None
        self.best_lam = -math.inf
        self.argmax: dict = {}
        self.cache: dict = {}  # canonical form -> minor-free
        self.lams: dict = {}  # canonical form -> spectral radius, shareable

    def feed(self, g: Graph, key=None) -> None:
        if self.n is None:
            self.n = g.n
        elif g.n != self.n:
            raise GraphError(f"corpus mixes n={self.n} and n={g.n}")
        self.corpus_size += 1
        if self.connected_only and not g.is_connected():
            return
        if key is None:
            key = canonical_form(g)
        free = self.cache.get(key)
        if free is None:
            try:
                free = find_minor(g, self.h, self.budget) is None
            except BudgetExceeded as exc:
                raise BudgetExceeded(f"{exc} on graph {to_graph6(g)}") from exc
            self.cache[key] = free
        if not free:
            return
        self.family_size += 1
        lam = self.lams.get(key)
        if lam is None:
            lam = self.lams[key] = spectral_radius(g).lam
        self._offer(key, lam)

    def _offer(self, key, lam: float) -> None:
        if key in self.argmax:
            return
        if self.best is None or lam > self.best_lam + TIE_TOL:
            self._reset(key, lam)
            return
        if lam < self.best_lam - TIE_TOL:
            return
        cmp = compare_spectral_radii(Graph(*key), self.best)
        if cmp > 0:
            self._reset(key, lam)
        elif cmp == 0:
            self.argmax[key] = lam

    def _reset(self, key, lam: float) -> None:
        self.best = Graph(*key)
        self.best_lam = lam
        self.argmax = {key: lam}

    def merge(self, other: _Scanner) -> _Scanner:
        if other.n is not None:
            if self.n is not None and self.n != other.n:
                raise GraphError("cannot merge reports for different n")
            self.n = other.n
        self.corpus_size += other.corpus_size
        self.family_size += other.family_size
        for key, lam in other.argmax.items():
            self._offer(key, lam)
        return self

    def report(self) -> SearchReport:
        rep = SearchReport(self.spec, self.n, self.connected_only, self.corpus_size, self.family_size)
        rep.predicted = predicted_extremal(self.spec)
        if not self.argmax:
            return rep
        keys = sorted(self.argmax)
        graphs = [Graph(*k) for k in keys]
        for g in graphs:
            if find_minor(g, self.h, self.budget) is not None:
                raise AssertionError(f"argmax graph {to_graph6(g)} is not minor-free")
        rep.argmax = [to_graph6(g) for g in graphs]
        rep.max_lambda = max(spectral_radius(g).lam for g in graphs)
        rep.matches_theorem = _classify(set(keys), self.n, self.spec)
        return rep


def _scan_chunk(args) -> _Scanner:
    spec, connected_only, budget, chunk = args
    sc = _Scanner(spec, connected_only, budget)
    for g in chunk:
        sc.feed(g)
    sc.cache = {}
    sc.lams = {}
    return sc


def search_extremal(
    corpus: Iterable[Graph],
    spec: PatternSpec,
    connected_only: bool = False,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    chunk_size: int = 4096,
) -> SearchReport:
    """Maximise the spectral radius over the spec-minor-free graphs of a corpus."""
    if workers <= 1:
        sc = _Scanner(spec, connected_only, budget)
        for g in corpus:
            sc.feed(g)
        return sc.report()
    it = iter(corpus)
    chunks = iter(lambda: list(islice(it, chunk_size)), [])
    total = _Scanner(spec, connected_only, budget)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_scan_chunk, ((spec, connected_only, budget, c) for c in chunks)):
            total.merge(part)
    return total.report()


def search_extremal_many(
    corpus: Iterable[Graph],
    specs: list[PatternSpec],
    connected_only: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> list[SearchReport]:
    """One pass over the corpus for several patterns; canonical forms and
    spectral radii are computed once per graph and shared."""
    scanners = [_Scanner(spec, connected_only, budget) for spec in specs]
    lams: dict = {}
    for sc in scanners:
        sc.lams = lams
    for g in corpus:
        key = None if connected_only and not g.is_connected() else canonical_form(g)
        for sc in scanners:
            sc.feed(g, key)
    return [sc.report() for sc in scanners]


def merge_reports(parts: Iterable[SearchReport]) -> SearchReport:
    """Combine reports over disjoint corpus chunks of the same pattern and n."""
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to merge")
    spec, conn = parts[0].pattern, parts[0].connected_only
    sc = _Scanner(spec, conn, DEFAULT_BUDGET)
    for rep in parts:
        if rep.pattern != spec or rep.connected_only != conn:
            raise ValueError("reports disagree on pattern or connectivity filter")
        other = _Scanner(spec, conn, DEFAULT_BUDGET)
        other.n = rep.n
        other.corpus_size = rep.corpus_size
        other.family_size = rep.family_size
        for s in rep.argmax:
            g = from_graph6(s)
            other.argmax[canonical_form(g)] = spectral_radius(g).lam
        sc.merge(other)
    return sc.report()


# edge bounds ----------------------------------------------------------------


@dataclass
class BoundCheck:
    bound_name: str
    r: int
    n: int | None = None  # None for a mixed-order corpus
    bound: float | None = None
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    flagged: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "bound_name": self.bound_name,
            "r": self.r,
            "n": self.n,
            "bound": self.bound,
            "checked": self.checked,
            "violations": list(self.violations),
            "flagged": list(self.flagged),
        }


BOUND_NAMES = ("kr", "kr-minus", "kr-star")
_BOUND_RANGE = {"kr": (2, 7), "kr-minus": (5, 8), "kr-star": (5, 8)}


def edge_bound(name: str, r: int, n: int) -> float:
    """Edge threshold of the named bound for order-r patterns on n vertices."""
    if name == "kr":
        return (r - 2) * n - math.comb(r - 1, 2)
    if name == "kr-minus":
        return ((2 * r - 5) * n - (r - 3) * (r - 1)) / 2
    if name == "kr-star":
        return ((2 * r - 6) * n - (r - 4) * (r - 1)) / 2
    raise ValueError(f"unknown bound {name!r}; expected one of {', '.join(BOUND_NAMES)}")


def forbidden_minors(name: str, r: int) -> list[Graph]:
    """Graphs whose joint absence defines the bound's family.

    ``kr-star`` forbids K_r minus any two edges, so both the independent
    and the incident pair must be absent.
    """
    if name == "kr":
        return [complete(r)]
    if name == "kr-minus":
        return [pattern_graph(PatternSpec.kr_minus(r))]
    if name == "kr-star":
        return [
            pattern_graph(PatternSpec.path_family(r, (2, 2))),
            pattern_graph(PatternSpec.kr_double_minus(r)),
        ]
    raise ValueError(f"unknown bound {name!r}; expected one of {', '.join(BOUND_NAMES)}")


def verify_edge_bounds(
    corpus: Iterable[Graph],
    r: int,
    name: str = "kr",
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    chunk_size: int = 4096,
) -> BoundCheck:
    """Check an extremal edge bound on every graph of the corpus.

    ``kr``: a K_r-minor-free graph has at most (r-2)n - C(r-1, 2) edges,
    for 2 <= r <= 7 and n >= r.  Graphs above it are violations.

    ``kr-minus`` / ``kr-star``: a graph on n >= r-1 vertices with at least
    [(2r-5)n - (r-3)(r-1)]/2 (resp. [(2r-6)n - (r-4)(r-1)]/2) edges has a
    K_r^- (resp. K_r minus two edges) minor, for 5 <= r <= 8, apart from
    exceptional graphs that are not enumerated.  Minor-free graphs at or
    above the threshold are flagged, not counted as violations.

    Graphs below the vertex minimum are skipped.  The minor search runs
    only on graphs that reach the threshold.
    """
    if name not in _BOUND_RANGE:
        raise ValueError(f"unknown bound {name!r}; expected one of {', '.join(BOUND_NAMES)}")
    lo, hi = _BOUND_RANGE[name]
    if not lo <= r <= hi:
        raise ValueError(f"bound {name!r} is stated for {lo} <= r <= {hi}, got r={r}")
    if workers <= 1:
        out, sizes = _bound_chunk((corpus, r, name, budget))
    else:
        it = iter(corpus)
        chunks = iter(lambda: list(islice(it, chunk_size)), [])
        out, sizes = BoundCheck(name, r), set()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part, part_sizes in pool.map(_bound_chunk, ((c, r, name, budget) for c in chunks)):
                out.checked += part.checked
                out.violations += part.violations
                out.flagged += part.flagged
                sizes |= part_sizes
    if len(sizes) == 1:
        (out.n,) = sizes
        out.bound = edge_bound(name, r, out.n)
    return out


def _bound_chunk(args) -> tuple[BoundCheck, set]:
    corpus, r, name, budget = args
    forb = forbidden_minors(name, r)
    min_n = r if name == "kr" else r - 1
    out = BoundCheck(name, r)
    sizes = set()
    cache: dict = {}
    for g in corpus:
        sizes.add(g.n)
        if g.n < min_n:
            continue
        out.checked += 1
        e = g.edge_count()
        bound = edge_bound(name, r, g.n)
        reaches = e > bound if name == "kr" else e >= bound
        if not reaches:
            continue
        key = canonical_form(g)
        if key not in cache:
            cache[key] = all(find_minor(g, h, budget) is None for h in forb)
        if cache[key]:
            (out.violations if name == "kr" else out.flagged).append(to_graph6(g))
    return out, sizes


def count_minor_free(corpus: Iterable[Graph], h: Graph) -> tuple[int, int | None]:
    """Number of h-minor-free graphs in the corpus and their maximum edge count."""
    count, best = 0, None
    for g in corpus:
        if find_minor(g, h) is None:
            count += 1
            best = max(best or 0, g.edge_count())
    return count, best


__all__ = [
    "BoundCheck",
    "SearchReport",
    "compare_spectral_radii",
    "count_minor_free",
    "edge_bound",
    "forbidden_minors",
    "enumerate_labeled",
    "isomorphism_classes",
    "merge_reports",
    "search_extremal",
    "search_extremal_many",
    "verify_edge_bounds",
]

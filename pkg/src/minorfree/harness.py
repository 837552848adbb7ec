"""Seeded property harnesses for the structural lemmas behind the extremal results.

Each harness samples graphs that satisfy a statement's hypotheses, filters
to the minor-free ones with :func:`find_minor`, and checks the conclusion.
A failing conclusion is re-decided by the independent contraction oracle,
so a report distinguishes "the statement fails on this graph" (both
deciders agree) from "the two deciders disagree" (a checker bug).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .constructions import PatternSpec, pattern_graph
from .graph import Graph, bits, to_graph6
from .minor import ORACLE_MAX_N, find_minor, oracle_has_minor

HARNESS_NAMES = ("structure", "clique", "rewire")


@dataclass
class Failure:
    check: str
    graph6: str
    a: list[int]
    b: list[int]
    u: int | None = None
    modified: str | None = None
    witness: list[list[int]] | None = None
    oracle_confirms: bool | None = None  # None when the graph is too large for the oracle

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "graph6": self.graph6,
            "A": self.a,
            "B": self.b,
            "u": self.u,
            "modified": self.modified,
            "witness": self.witness,
            "oracle_confirms": self.oracle_confirms,
        }


@dataclass
class HarnessSummary:
    name: str
    r: int
    n: int
    trials: int
    seed: int
    sampled: int = 0
    skipped: int = 0
    checked: dict[str, int] = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)
    checker_disagreements: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures and not self.checker_disagreements

    def count(self, check: str) -> None:
        self.checked[check] = self.checked.get(check, 0) + 1

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "r": self.r,
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "sampled": self.sampled,
            "skipped": self.skipped,
            "checked": dict(sorted(self.checked.items())),
            "failures": [f.to_json() for f in self.failures],
            "checker_disagreements": self.checker_disagreements,
            "passed": self.passed,
        }


# sampling -------------------------------------------------------------------


def _sample(
    rng: random.Random,
    n: int,
    a_size: int,
    b_size: int,
    clique_a: bool,
    b_edges: bool = True,
) -> tuple[Graph, list[int], list[int]]:
    """Random graph on n vertices whose pair [A, B] is complete bipartite.

    Vertex roles are shuffled.  Every other pair is an edge with a density
    drawn per sample from [0, 0.5), low enough that minor-free samples are
    common.
    """
    perm = list(range(n))
    rng.shuffle(perm)
    a = sorted(perm[:a_size])
    b = sorted(perm[a_size:a_size + b_size])
    in_a = set(a)
    in_b = set(b)
    p = rng.random() * 0.5
    edges = []
    for j in range(1, n):
        for i in range(j):
            if (i in in_a and j in in_b) or (i in in_b and j in in_a):
                edges.append((i, j))
            elif i in in_a and j in in_a:
                if clique_a or rng.random() < p:
                    edges.append((i, j))
            elif i in in_b and j in in_b and not b_edges:
                continue
            elif rng.random() < p:
                edges.append((i, j))
    return Graph.from_edges(n, edges), a, b


def _mask(vs) -> int:
    return sum(1 << v for v in vs)


class _Checker:
    """find_minor with an oracle second opinion on every minor it reports."""

    def __init__(self, summary: HarnessSummary):
        self.summary = summary
        self.memos: dict = {}

    def free(self, g: Graph, h: Graph) -> bool:
        return find_minor(g, h) is None

    def confirm(self, g: Graph, h: Graph, expect_minor: bool) -> bool | None:
        if g.n > ORACLE_MAX_N:
            return None
        memo = self.memos.setdefault(h.adj, {})
        got = oracle_has_minor(g, h, memo)
        if got != expect_minor:
            self.summary.checker_disagreements += 1
        return got == expect_minor

    def fail_implication(self, check, g, g_star, h, a, b, u=None) -> None:
        """Record: g is h-minor-free but g_star is not."""
        model = find_minor(g_star, h)
        ok_before = self.confirm(g, h, expect_minor=False)
        ok_after = self.confirm(g_star, h, expect_minor=True)
        confirms = None if ok_before is None else bool(ok_before and ok_after)
        self.summary.failures.append(
            Failure(
                check,
                to_graph6(g),
                a,
                b,
                u,
                to_graph6(g_star),
                [sorted(s) for s in model.branch_sets],
                confirms,
            )
        )


def _kr_minus(r: int) -> Graph:
    return pattern_graph(PatternSpec.kr_minus(r))


def _kr_double(r: int) -> Graph:
    return pattern_graph(PatternSpec.kr_double_minus(r))


# lemma checks ---------------------------------------------------------------


def _has_p3(g: Graph, b_mask: int) -> bool:
    return any((g.adj[v] & b_mask).bit_count() >= 2 for v in bits(b_mask))


def _outside_contacts(g: Graph, a_mask: int, b_mask: int) -> tuple[list[int], int]:
    """B-vertices touching each component of G - (A u B), and |D|."""
    rest = g.full_mask & ~a_mask & ~b_mask
    touched = []
    left = rest
    while left:
        c = _reach_in(g, left & -left, rest)
        left &= ~c
        touched.append(sum(1 for v in bits(b_mask) if g.adj[v] & c))
    d = sum(1 for v in bits(b_mask) if not g.adj[v] & rest)
    return touched, d


def _reach_in(g: Graph, start: int, within: int) -> int:
    comp = frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & within & ~comp
        comp |= frontier
    return comp


def harness_structure(trials: int, r: int, n: int, seed: int = 0) -> HarnessSummary:
    """Complete [A, B] with |A| = r - 3 and |B| > r.

    K_r^- -minor-free samples must have G[B] P3-free, at most two B-vertices
    touching each component outside A u B, and |D| >= 3|B| - 2n where D is
    the set of B-vertices with no neighbour outside A u B.  The same samples
    also check the K_r^= counterpart: B independent, at most one B-vertex
    per outside component, |D| >= 2|B| - n (needs only |B| >= r).
    """
    out = HarnessSummary("structure", r, n, trials, seed)
    rng = random.Random(seed)
    chk = _Checker(out)
    hm, hd = _kr_minus(r), _kr_double(r)
    a_size = r - 3
    lo = r
    hi = n - a_size
    if hi < lo:
        out.skipped = trials
        return out
    for _ in range(trials):
        b_size = rng.randint(lo, hi)
        g, a, b = _sample(rng, n, a_size, b_size, clique_a=rng.random() < 0.5)
        out.sampled += 1
        bm = _mask(b)
        touched, d = _outside_contacts(g, _mask(a), bm)
        if b_size > r and chk.free(g, hm):
            out.count("minus")
            bad = []
            if _has_p3(g, bm):
                bad.append("minus: G[B] contains P3")
            if any(t > 2 for t in touched):
                bad.append("minus: outside component touches 3 B-vertices")
            if d < 3 * b_size - 2 * n:
                bad.append("minus: |D| < 3|B| - 2n")
            for msg in bad:
                out.failures.append(Failure(msg, to_graph6(g), a, b, oracle_confirms=chk.confirm(g, hm, False)))
        if chk.free(g, hd):
            out.count("double")
            bad = []
            if any(g.adj[v] & bm for v in b):
                bad.append("double: B not independent")
            if any(t > 1 for t in touched):
                bad.append("double: outside component touches 2 B-vertices")
            if d < 2 * b_size - n:
                bad.append("double: |D| < 2|B| - n")
            for msg in bad:
                out.failures.append(Failure(msg, to_graph6(g), a, b, oracle_confirms=chk.confirm(g, hd, False)))
    return out


def harness_clique_completion(trials: int, r: int, n: int, seed: int = 0) -> HarnessSummary:
    """Completing A to a clique preserves minor-freeness.

    K_r^-: needs |B| > r and 3|B| - 2n > r.  K_r^=: needs |B| >= r and
    2|B| - n > r.  Sizes that cannot meet a hypothesis are skipped.
    """
    out = HarnessSummary("clique", r, n, trials, seed)
    rng = random.Random(seed)
    chk = _Checker(out)
    a_size = r - 3
    sizes = {
        "minus": [s for s in range(1, n - a_size + 1) if s > r and 3 * s - 2 * n > r],
        "double": [s for s in range(1, n - a_size + 1) if s >= r and 2 * s - n > r],
    }
    patterns = {"minus": _kr_minus(r), "double": _kr_double(r)}
    for _ in range(trials):
        kinds = [k for k in ("minus", "double") if sizes[k]]
        if not kinds:
            out.skipped += 1
            continue
        kind = rng.choice(kinds)
        h = patterns[kind]
        g, a, b = _sample(rng, n, a_size, rng.choice(sizes[kind]), clique_a=False)
        out.sampled += 1
        if not chk.free(g, h):
            continue
        g_star = g
        for i in a:
            for j in a:
                if i < j and not g_star.has_edge(i, j):
                    g_star = g_star.add_edge(i, j)
        out.count(kind)
        if not chk.free(g_star, h):
            chk.fail_implication(f"{kind}: clique completion", g, g_star, h, a, b)
    return out


def rewire(g: Graph, a: list[int], b: list[int], u: int, full: bool = False) -> Graph:
    """Drop u's edges into B (all of u's edges if ``full``) and join u to A."""
    drop = g.adj[u] if full else g.adj[u] & _mask(b)
    out = g
    for v in bits(drop):
        out = out.delete_edge(u, v)
    for v in a:
        if not out.has_edge(u, v):
            out = out.add_edge(u, v)
    return out


def harness_rewire(trials: int, r: int, n: int, seed: int = 0) -> HarnessSummary:
    """Rewiring a vertex u outside A u B toward A preserves minor-freeness.

    ``minus`` / ``double``: G[A] complete, [A, B] complete, |B| >= 1; u
    loses its B-edges and gains all of A.  ``double-full``: additionally
    2|B| - n > r; u loses every edge and gains all of A.
    """
    out = HarnessSummary("rewire", r, n, trials, seed)
    rng = random.Random(seed)
    chk = _Checker(out)
    a_size = r - 3
    hm, hd = _kr_minus(r), _kr_double(r)
    max_b = n - a_size - 1
    if max_b < 1:
        out.skipped = trials
        return out
    full_sizes = [s for s in range(1, max_b + 1) if 2 * s - n > r]
    for _ in range(trials):
        b_size = rng.randint(1, max_b)
        g, a, b = _sample(rng, n, a_size, b_size, clique_a=True)
        out.sampled += 1
        outside = [v for v in range(n) if v not in a and v not in b]
        u = rng.choice(outside)
        g_star = rewire(g, a, b, u)
        if chk.free(g, hm):
            out.count("minus")
            if not chk.free(g_star, hm):
                chk.fail_implication("minus: rewire", g, g_star, hm, a, b, u)
        if chk.free(g, hd):
            out.count("double")
            if not chk.free(g_star, hd):
                chk.fail_implication("double: rewire", g, g_star, hd, a, b, u)
        if full_sizes:
            g2, a2, b2 = _sample(rng, n, a_size, rng.choice(full_sizes), clique_a=True)
            outside = [v for v in range(n) if v not in a2 and v not in b2]
            u2 = rng.choice(outside)
            if chk.free(g2, hd):
                out.count("double-full")
                g2_star = rewire(g2, a2, b2, u2, full=True)
                if not chk.free(g2_star, hd):
                    chk.fail_implication("double-full: rewire", g2, g2_star, hd, a2, b2, u2)
    return out


HARNESSES = {
    "structure": harness_structure,
    "clique": harness_clique_completion,
    "rewire": harness_rewire,
}

"""Spectral radius of graphs: shifted power iteration, an exact integer
characteristic polynomial, and closed forms for S(n, t) and F(n, t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph import Graph, GraphError, bits

DEFAULT_TOL = 1e-10
MAX_ITER = 10**6
EXACT_MAX_N = 20


@dataclass(frozen=True)
class SpectralResult:
    lam: float
    vector: np.ndarray
    residual: float
    iterations: int

    def to_json(self) -> dict:
        return {
            "lambda": self.lam,
            "residual": self.residual,
            "iterations": self.iterations,
            "vector": [float(v) for v in self.vector],
        }


class ConvergenceError(RuntimeError):
    """Power iteration hit its cap; ``result`` holds the best estimate."""

    def __init__(self, message: str, result: SpectralResult):
        super().__init__(message)
        self.result = result


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for i, row in enumerate(g.adj):
        for j in bits(row):
            a[i, j] = 1.0
    return a


def _component_perron(a: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray, float, int]:
    m = len(a)
    if m == 1:
        return 0.0, np.ones(1), 0.0, 0
    shifted = a + np.eye(m)
    x = np.ones(m)
    lam = 0.0
    res = math.inf
    for it in range(1, max_iter + 1):
        y = shifted @ x
        x = y / y.max()
        ax = a @ x
        lam = float(x @ ax / (x @ x))
        res = float(np.abs(ax - lam * x).max())
        if res <= tol:
            return lam, x, res, it
    return lam, x, res, max_iter


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> SpectralResult:
    """Largest adjacency eigenvalue with a max-normalised Perron vector.

    Iterates on A + I (so bipartite components do not oscillate) one
    component at a time; the vector is zero outside the winning component.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = adjacency_matrix(g)
    best = None
    total_iter = 0
    converged = True
    for comp in g.components():
        idx = sorted(comp)
        lam, x, res, it = _component_perron(a[np.ix_(idx, idx)], tol, max_iter)
        total_iter += it
        converged = converged and res <= tol
        if best is None or lam > best[0]:
            best = (lam, idx, x)
    lam, idx, x = best
    vec = np.zeros(g.n)
    vec[idx] = x
    residual = float(np.abs(a @ vec - lam * vec).max())
    result = SpectralResult(lam, vec, residual, total_iter)
    if not converged:
        raise ConvergenceError(f"power iteration did not reach tol={tol} in {max_iter} steps", result)
    return result


def lam(g: Graph, tol: float = DEFAULT_TOL) -> float:
    return spectral_radius(g, tol).lam


# exact channel --------------------------------------------------------------


@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial, coefficients from x^n down to x^0."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        d = self.degree
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c:+d}x^{d - k}")
        return " ".join(terms) or "0"


def char_poly(g: Graph) -> CharPoly:
    """det(xI - A) by the Faddeev-LeVerrier recurrence in exact integers.

    Every division in the recurrence is exact, so no fractions appear.
    """
    n = g.n
    if n > EXACT_MAX_N:
        raise GraphError(f"exact characteristic polynomial limited to n <= {EXACT_MAX_N}")
    nbrs = [list(bits(row)) for row in g.adj]
    coeffs = [1]
    m = [[0] * n for _ in range(n)]
    c_prev = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k) / k
        new = []
        for i in range(n):
            row = [0] * n
            for u in nbrs[i]:
                mu = m[u]
                for j in range(n):
                    row[j] += mu[j]
            row[i] += c_prev
            new.append(row)
        m = new
        tr = sum(m[u][i] for i in range(n) for u in nbrs[i])
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c_prev = -tr // k
        coeffs.append(c_prev)
    return CharPoly(tuple(coeffs))


def _trim(p: list[Fraction]) -> list[Fraction]:
    k = 0
    while k < len(p) - 1 and p[k] == 0:
        k += 1
    return p[k:]


def _polyrem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and any(a):
        q = a[0] / b[0]
        for k in range(len(b)):
            a[k] -= q * b[k]
        a = a[1:]
    return _trim(a) if a else [Fraction(0)]


def _polydiv(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    out = []
    while len(a) >= len(b):
        q = a[0] / b[0]
        out.append(q)
        for k in range(len(b)):
            a[k] -= q * b[k]
        a = a[1:]
    return out


def _gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while any(b):
        a, b = b, _polyrem(a, b)
    return [c / a[0] for c in a]


def _derivative(p: list[Fraction]) -> list[Fraction]:
    d = len(p) - 1
    return [c * (d - k) for k, c in enumerate(p[:-1])]


def _eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def _sturm(p: list[Fraction]) -> list[list[Fraction]]:
    seq = [p, _derivative(p)]
    while len(seq[-1]) > 1:
        r = _polyrem(seq[-2], seq[-1])
        if not any(r):
            break
        seq.append([-c for c in r])
    return seq


def _variations(seq: list[list[Fraction]], x: Fraction) -> int:
    signs = [s for s in (_eval(p, x) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def largest_root(p: CharPoly, tol: float = 1e-12, lo=None, hi=None) -> float:
    """Largest real root, isolated by Sturm-count bisection.

    The default bracket is [2e/n, sqrt(2e)], read off the coefficients
    (e = -coefficient of x^{n-2}); both ends bound the spectral radius of
    any graph with that polynomial.
    """
    n = p.degree
    if n == 0:
        raise ValueError("constant polynomial has no roots")
    if lo is None or hi is None:
        e = -p.coeffs[2] if n >= 2 else 0
        if e <= 0:
            # edgeless: x^n
            return 0.0
        lo = Fraction(2 * e, n) if lo is None else lo
        hi = Fraction(math.isqrt(2 * e) + 1) if hi is None else hi
    lo, hi = Fraction(lo), Fraction(hi)
    poly = [Fraction(c) for c in p.coeffs]
    sq = _polydiv(poly, _gcd(poly, _derivative(poly)))
    if len(sq) == 1:
        raise ArithmeticError("degenerate square-free part")
    seq = _sturm(sq)
    slack = Fraction(1, 2**30)
    a, b = lo - slack, hi + slack
    if _variations(seq, a) - _variations(seq, b) == 0:
        raise ArithmeticError(f"no root bracketed in [{float(lo)}, {float(hi)}]; coefficients suspect")
    tol_f = Fraction(tol)
    while b - a > tol_f:
        mid = (a + b) / 2
        if _variations(seq, mid) - _variations(seq, b) > 0:
            a = mid
        else:
            b = mid
    return float((a + b) / 2)


def exact_spectral_radius(g: Graph, tol: float = 1e-12) -> float:
    if g.edge_count() == 0:
        return 0.0
    degs = g.degrees()
    return largest_root(char_poly(g), tol, lo=Fraction(sum(degs), g.n), hi=max(degs))


# closed forms ---------------------------------------------------------------


def lambda_S_closed(n: int, r: int) -> float:
    """Spectral radius of S(n, r-3) by the quadratic closed form."""
    if r < 4 or n <= r - 3:
        raise ValueError(f"need r >= 4 and n > r - 3, got n={n}, r={r}")
    disc = 4 * (r - 3) * n - (3 * r * r - 16 * r + 20)
    if disc < 0:
        raise ValueError(f"negative discriminant at n={n}, r={r}")
    return (r - 4 + math.sqrt(disc)) / 2


def lambda_F_even(n: int, r: int, strict: bool = False) -> float:
    """Spectral radius of F(n, r-3) when n - r + 3 is even.

    ``strict=True`` evaluates the variant with leading term r - 4, which
    disagrees with the two-class quotient [[t-1, n-t], [t, 1]].
    """
    if r < 4 or n <= r - 3:
        raise ValueError(f"need r >= 4 and n > r - 3, got n={n}, r={r}")
    if (n - r + 3) % 2:
        raise ValueError(f"n - r + 3 = {n - r + 3} is odd")
    disc = 4 * (r - 3) * n - (3 * r * r - 14 * r + 11)
    if disc < 0:
        raise ValueError(f"negative discriminant at n={n}, r={r}")
    lead = r - 4 if strict else r - 3
    return (lead + math.sqrt(disc)) / 2


def odd_cubic(n: int, r: int) -> tuple[int, int, int, int]:
    """Coefficients of det(xI - Q) for the three-class quotient of F(n, r-3)."""
    t = r - 3
    return 1, -t, -(t * n - (r * r - 5 * r + 5)), t


def lambda_F_odd(n: int, r: int, tol: float = 1e-13, strict: bool = False) -> float:
    """Spectral radius of F(n, r-3) when n - r + 3 is odd: the largest root
    of x^3 - t x^2 - [t n - (r^2 - 5r + 5)] x + t with t = r - 3.

    ``strict=True`` instead returns the largest real root of the variant
    whose quadratic term is replaced by -t x^3.
    """
    if r < 4 or n <= r - 3:
        raise ValueError(f"need r >= 4 and n > r - 3, got n={n}, r={r}")
    if (n - r + 3) % 2 == 0:
        raise ValueError(f"n - r + 3 = {n - r + 3} is even")
    _, b, c, d = odd_cubic(n, r)
    t = r - 3
    if strict:
        roots = np.roots([1 - t, 0, c, d]) if t != 1 else np.roots([c, d])
        real = [z.real for z in roots if abs(z.imag) < 1e-9]
        return max(real) if real else math.nan

    def f(x: float) -> float:
        return ((x + b) * x + c) * x + d

    # f increases to the right of its larger critical point
    lo = (-2 * b + math.sqrt(4 * b * b - 12 * c)) / 6
    hi = float(n)
    if f(lo) > 0 or f(hi) < 0:
        raise ArithmeticError("cubic root not bracketed")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def lambda_F_closed(n: int, r: int) -> float:
    if (n - r + 3) % 2:
        return lambda_F_odd(n, r)
    return lambda_F_even(n, r)


def quotient_matrix(g: Graph, cells: Sequence[Sequence[int]]) -> np.ndarray:
    """Quotient matrix of an equitable partition; raises if not equitable."""
    masks = [sum(1 << v for v in cell) for cell in cells]
    q = np.zeros((len(cells), len(cells)))
    for a, cell in enumerate(cells):
        for b, mask in enumerate(masks):
            counts = {(g.adj[v] & mask).bit_count() for v in cell}
            if len(counts) != 1:
                raise ValueError(f"cells {a}, {b} are not equitable")
            q[a, b] = counts.pop()
    return q


def quotient_radius(g: Graph, cells: Sequence[Sequence[int]]) -> float:
    return float(max(np.linalg.eigvals(quotient_matrix(g, cells)).real))

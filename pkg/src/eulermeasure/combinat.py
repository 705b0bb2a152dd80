"""Combinatorial constructions whose Euler measures follow integer identities.

* ``choose_set`` realizes unordered k-subsets of a set by lexicographically
  sorted tuples; its measure is ``binomial(chi(P), k)``.
* ``coloring_set`` is the set of proper P-colorings of a graph; its measure is
  the chromatic polynomial evaluated at ``chi(P)``.
* ``fabulous_chi`` sums the measure of the fabulous subsets of a subset of R.
* the ``*_series`` functions build Euler series of infinite families of finite
  subsets, stratified by cardinality or by number of break-points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import FrozenSet, List, Tuple

from .errors import DivergenceError
from .polyset import (
    CanonicalLine, FALSE, LinearForm, OpenInterval, Point, PolyhedralSet, TRUE,
    atom, conj, disj,
)
from .series import Polynomial, RationalFunction

__all__ = [
    "Graph", "binomial", "choose_set", "chromatic_polynomial", "coloring_set",
    "fabulous_chi", "extended_fibonacci", "finite_subsets_series",
    "polyhedral_subsets_series", "pairs_of_subsets_series", "pairs_stratum_count",
    "chi_zero_subsets_coefficients", "CoefficientSeries", "chi_zero_subsets_series",
]


def binomial(n: int, k: int) -> int:
    """``n (n-1) ... (n-k+1) / k!`` for any integer ``n`` and ``k >= 0``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    num = 1
    for i in range(k):
        num *= n - i
    return num // factorial(k)


# ---------------------------------------------------------------------------
# block formulas
# ---------------------------------------------------------------------------

def _difference(total: int, i: int, j: int) -> LinearForm:
    """``x[i] - x[j]`` in ``R^total``."""
    coeffs = [Fraction(0)] * total
    coeffs[i] += 1
    coeffs[j] -= 1
    return LinearForm(tuple(coeffs))


def _place(P: PolyhedralSet, block: int, blocks: int):
    n = P.dim
    return P.formula.map_forms(lambda f: f.pad(before=block * n, after=(blocks - block - 1) * n))


def _lex_less(n: int, total: int, i: int, j: int):
    """Block ``i`` lexicographically below block ``j`` (blocks of width ``n``)."""
    cases = []
    for lvl in range(n):
        equal = [atom(_difference(total, i * n + m, j * n + m), "=") for m in range(lvl)]
        cases.append(conj(*equal, atom(_difference(total, i * n + lvl, j * n + lvl), "<")))
    return disj(*cases)


def _blocks_differ(n: int, total: int, i: int, j: int):
    return disj(*(atom(_difference(total, i * n + m, j * n + m), "!=") for m in range(n)))


def choose_set(P: PolyhedralSet, k: int) -> PolyhedralSet:
    """Lexicographically increasing ``k``-tuples of points of ``P``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    n = P.dim
    total = k * n
    if k == 0:
        return PolyhedralSet(0, TRUE)
    parts = [_place(P, b, k) for b in range(k)]
    if n == 0 and k > 1:
        parts.append(FALSE)
    parts += [_lex_less(n, total, b, b + 1) for b in range(k - 1)]
    return PolyhedralSet(total, conj(*parts))


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: FrozenSet[Tuple[int, int]] = frozenset()

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge ({u}, {v}) outside 0..{self.n_vertices - 1}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def parse(cls, text: str) -> "Graph":
        """First line: vertex count; then one zero-indexed edge ``u v`` per line."""
        lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ValueError("empty graph file")
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            u, v = ln.split()
            edges.append((int(u), int(v)))
        return cls(n, frozenset(edges))


@lru_cache(maxsize=4096)
def _chromatic(n: int, edges: FrozenSet[Tuple[int, int]]) -> Tuple[int, ...]:
    if not edges:
        return (0,) * n + (1,)
    e = min(edges)
    u, v = e
    deleted = _chromatic(n, edges - {e})
    # contract v into u, then renumber vertices above v
    merged = set()
    for a, b in edges - {e}:
        a, b = (u if a == v else a), (u if b == v else b)
        if a != b:
            a, b = (a - (a > v)), (b - (b > v))
            merged.add((min(a, b), max(a, b)))
    contracted = _chromatic(n - 1, frozenset(merged))
    out = list(deleted)
    for i, c in enumerate(contracted):
        out[i] -= c
    return tuple(out)


def chromatic_polynomial(G: Graph) -> Polynomial:
    """Chromatic polynomial in ``q`` by deletion-contraction."""
    return Polynomial(_chromatic(G.n_vertices, G.edges))


def coloring_set(G: Graph, P: PolyhedralSet) -> PolyhedralSet:
    """Maps ``V -> P`` with distinct values on the ends of every edge."""
    n, k = P.dim, G.n_vertices
    total = n * k
    parts = [_place(P, b, k) for b in range(k)]
    parts += [_blocks_differ(n, total, u, v) for u, v in sorted(G.edges)]
    return PolyhedralSet(total, conj(*parts))


# ---------------------------------------------------------------------------
# fabulous subsets
# ---------------------------------------------------------------------------

def fabulous_chi(P: CanonicalLine) -> int:
    """Euler measure of the family of fabulous finite subsets of ``P``.

    Scans components left to right, tracking the parity of the measure of the
    unchosen part of ``P`` since the last chosen element.  A chosen element
    needs that parity even.  An open interval holds at most one chosen
    element, since two would enclose an open interval of measure -1.
    """
    weights = {0: 1, 1: 0}
    for piece in P:
        nxt = {0: 0, 1: 0}
        for parity, w in weights.items():
            if not w:
                continue
            nxt[parity ^ 1] += w           # skip the component (chi = +-1, odd)
            if isinstance(piece, Point):
                if parity == 0:
                    nxt[0] += w            # choose the point
            elif parity == 1:
                # choose one element: left part closes the gap, right part opens one
                nxt[1] -= w
        weights = nxt
    return weights[0]


def extended_fibonacci(k: int) -> int:
    """``F(k)`` with ``F(0) = 0``, ``F(1) = 1`` extended to negative ``k``."""
    a, b = 0, 1
    for _ in range(abs(k)):
        a, b = b, a + b
    if k < 0 and k % 2 == 0:
        return -a
    return a


# ---------------------------------------------------------------------------
# Euler series
# ---------------------------------------------------------------------------

def finite_subsets_series(n: int) -> RationalFunction:
    """``(1 + t)**n``: finite subsets of a set of measure ``n`` by cardinality."""
    base = RationalFunction(Polynomial((1, 1)))
    return base ** n


def polyhedral_subsets_series(P: CanonicalLine) -> RationalFunction:
    """Euler series of the polyhedral subsets of a 1-dimensional set, by break-points.

    An isolated point of ``P`` is either in or out of the subset.  Inside an
    open interval a subset with ``k`` break-points has ``2 * 3**k``
    membership words (value on each gap and at each break-point, every
    break-point a genuine jump) over an open ``k``-simplex of positions, so
    the interval contributes ``sum (-1)**k 2 3**k t**k = 2 / (1 + 3t)``.
    """
    points = sum(1 for p in P if isinstance(p, Point))
    intervals = sum(1 for p in P if isinstance(p, OpenInterval))
    interval = RationalFunction(2, Polynomial((1, 3)))
    return RationalFunction(2 ** points) * interval ** intervals


def pairs_stratum_count(k: int) -> int:
    """Unordered pairs ``{A, B}`` of distinct subsets with ``A u B`` a fixed ``k``-set."""
    return (3 ** k - 1) // 2


def pairs_of_subsets_series() -> RationalFunction:
    """Euler series of unordered pairs of distinct finite subsets of (0, 1).

    Stratum ``k`` (``|A u B| = k``) is an open ``k``-simplex times
    ``(3**k - 1) / 2`` colorings, so the series is
    ``sum (-1)**k (3**k - 1)/2 t**k = (1/(1+3t) - 1/(1+t)) / 2``.
    """
    half = Fraction(1, 2)
    return half * (RationalFunction(1, Polynomial((1, 3))) - RationalFunction(1, Polynomial((1, 1))))


def chi_zero_subsets_coefficients(n_max: int) -> List[int]:
    """Central trinomial coefficients ``c_0 .. c_{n_max - 1}``.

    ``(-1)**n c_n`` is the measure of the stratum of polyhedral subsets of
    ``[0, 1)`` with measure 0, ``n`` break-points and ``0`` not in the subset.
    Complementation doubles this when ``0`` is allowed either way.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return [sum(comb(n, 2 * j) * comb(2 * j, j) for j in range(n // 2 + 1)) for n in range(n_max)]


@dataclass(frozen=True)
class CoefficientSeries:
    """A series known only by a prefix of coefficients (no rational closed form)."""

    coefficients: tuple
    description: str = ""

    def regularized_value(self, point=1):
        raise DivergenceError(
            f"{self.description or 'series'} has no rational generating function; "
            f"its value at t = {point} cannot be regularized")


def chi_zero_subsets_series(n_terms: int) -> CoefficientSeries:
    """Signed Euler series ``sum (-1)**n c_n t**n`` of measure-zero subsets of [0, 1)."""
    cs = chi_zero_subsets_coefficients(n_terms)
    return CoefficientSeries(tuple((-1) ** n * c for n, c in enumerate(cs)),
                             "measure-zero polyhedral subsets of [0, 1)")

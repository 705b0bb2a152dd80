"""Euler measure of semilinear sets, computed two independent ways.

``euler_measure_fiber`` integrates the measure of the fibers over the last
coordinate against the measure of the line, recursively down to dimension
one.  ``euler_measure_cells`` decomposes the set into relatively open faces of
the hyperplane arrangement of its atoms and sums ``(-1)**dim`` over them.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import DimensionError, MethodDisagreement, PartitionError
from .lp import find_point, linprog_max, solve_affine
from .polyset import (
    CanonicalLine, Const, OpenInterval, Point, PolyhedralSet, canonicalize_line,
    disj, partition_line, sample_point, _sort_key,
)

__all__ = [
    "chi_line", "euler_integral_line", "critical_values", "euler_measure_fiber",
    "Cell", "CellDecomposition", "FPolynomial", "arrangement_decompose",
    "euler_measure_cells", "euler_measure", "is_empty", "ConstructibleFunction",
    "euler_integral", "fubini_integral", "dimension", "IsoClass", "iso_classify",
    "polyhedrally_isomorphic",
]

log = logging.getLogger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# dimension one
# ---------------------------------------------------------------------------

def chi_line(line: CanonicalLine) -> int:
    """+1 for every point, -1 for every open interval (bounded or not)."""
    return sum(1 if isinstance(p, Point) else -1 for p in line)


def _check_line_partition(pieces: Sequence) -> None:
    if not pieces:
        raise PartitionError("no pieces")
    first, last = pieces[0], pieces[-1]
    if not (isinstance(first, OpenInterval) and first.lo is None):
        raise PartitionError(f"partition must start with (-inf, .), got {first}")
    if not (isinstance(last, OpenInterval) and last.hi is None):
        raise PartitionError(f"partition must end with (., +inf), got {last}")
    for i, (left, right) in enumerate(zip(pieces, pieces[1:])):
        if i % 2 == 0:
            ok = isinstance(left, OpenInterval) and isinstance(right, Point) and left.hi == right.c
        else:
            ok = isinstance(left, Point) and isinstance(right, OpenInterval) and right.lo == left.c
        if not ok:
            raise PartitionError(f"{left} and {right} are not adjacent pieces of a partition")


def euler_integral_line(pairs: Iterable[Tuple[object, int]]) -> int:
    """Euler integral over R of a function constant on each piece of a partition.

    ``pairs`` holds ``(piece, value)`` with pieces points and open intervals
    that together partition the real line.
    """
    pairs = sorted(pairs, key=lambda pv: _sort_key(pv[0]))
    _check_line_partition([p for p, _ in pairs])
    return sum(v if isinstance(p, Point) else -v for p, v in pairs)


# ---------------------------------------------------------------------------
# fibering
# ---------------------------------------------------------------------------

def _extend_flat(flat, h, d):
    """Reduce ``h`` against an RREF ``flat`` and insert it.

    Returns the new RREF tuple, ``None`` if ``flat`` already lies in ``h``,
    or ``False`` if the intersection is empty.
    """
    h = list(h)
    for row in flat:
        p = next(i for i in range(d) if row[i])
        if h[p]:
            f = h[p]
            h = [a - f * b for a, b in zip(h, row)]
    q = next((i for i in range(d) if h[i]), None)
    if q is None:
        return False if h[d] else None
    inv = _ONE / h[q]
    h = [v * inv for v in h]
    rows = []
    for row in flat:
        if row[q]:
            f = row[q]
            row = tuple(a - f * b for a, b in zip(row, h))
        rows.append(row)
    rows.append(tuple(h))
    rows.sort(key=lambda r: next(i for i in range(d) if r[i]))
    return tuple(rows)


def _last_coordinate_value(rows, d) -> Optional[Fraction]:
    for row in rows:
        if row[d - 1] and not any(row[:d - 1]):
            return row[d]
    return None


def critical_values(S: PolyhedralSet) -> List[Fraction]:
    """Values of the last coordinate off which the fiber measure is locally constant.

    Collects the constant value of ``x_d`` on every nonempty intersection flat
    of the hyperplanes of ``S`` on which ``x_d`` is constant.  Flats are built
    rank by rank, adding hyperplanes in increasing index order; every flat is
    reached through its lexicographically first basis.
    """
    d = S.dim
    if d < 1:
        raise DimensionError("critical values need at least one coordinate")
    hyps = [tuple(a) + (-c,) for a, c in S.hyperplanes()]
    values = set()
    frontier = {(): -1}
    while frontier:
        nxt = {}
        for flat, last in frontier.items():
            for idx in range(last + 1, len(hyps)):
                rows = _extend_flat(flat, hyps[idx], d)
                if not rows:
                    continue
                value = _last_coordinate_value(rows, d)
                if value is not None:
                    values.add(value)
                elif idx < nxt.get(rows, len(hyps)):
                    nxt[rows] = idx
        frontier = nxt
    return sorted(values)


def euler_measure_fiber(S: PolyhedralSet) -> int:
    """Euler measure by integrating fiber measures over the last coordinate."""
    formula = S.formula
    if isinstance(formula, Const):
        return (-1) ** S.dim if formula.value else 0
    if S.dim == 0:
        return int(formula.evaluate(()))
    if S.dim == 1:
        return chi_line(canonicalize_line(S))
    pairs = []
    for piece in partition_line(critical_values(S)):
        fiber = S.substitute_last(sample_point(piece))
        pairs.append((piece, euler_measure_fiber(fiber)))
    return euler_integral_line(pairs)


# ---------------------------------------------------------------------------
# arrangement cells
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    """A relatively open face of a hyperplane arrangement."""

    dimension: int
    bounded: Optional[bool]
    witness: tuple
    sign_vector: tuple


class FPolynomial(tuple):
    """Cell counts ``(f_0, f_1, ..., f_n)``; evaluates as ``sum f_i t**i``."""

    def __new__(cls, coefficients=()):
        coefficients = list(coefficients)
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        return super().__new__(cls, coefficients)

    @classmethod
    def from_dimensions(cls, dims: Iterable[int]) -> "FPolynomial":
        counts = Counter(dims)
        top = max(counts, default=-1)
        return cls(counts.get(i, 0) for i in range(top + 1))

    def __call__(self, t):
        return sum(f * t ** i for i, f in enumerate(self))

    def __str__(self):
        terms = [f"{f}" if i == 0 else f"{f}t" if i == 1 else f"{f}t^{i}"
                 for i, f in enumerate(self) if f]
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class CellDecomposition:
    ambient_dim: int
    hyperplanes: tuple
    cells: tuple = field(default=())

    def f_polynomial(self) -> FPolynomial:
        return FPolynomial.from_dimensions(c.dimension for c in self.cells)

    def euler_measure(self) -> int:
        return sum((-1) ** c.dimension for c in self.cells)


def _dot(a, x):
    return sum(ai * xi for ai, xi in zip(a, x))


class _Face:
    __slots__ = ("signs", "witness", "zero_rows", "directions")

    def __init__(self, signs, witness, zero_rows, directions):
        self.signs = signs
        self.witness = witness
        self.zero_rows = zero_rows      # [(a, c)] with a.x + c = 0 on the face
        self.directions = directions    # basis of the face's direction space


def _face_constraints(face: _Face, hyps):
    eq, strict = [], []
    for s, (a, c) in zip(face.signs, hyps):
        if s == 0:
            eq.append((a, -c))
        elif s > 0:
            strict.append(([-v for v in a], c))
        else:
            strict.append((a, -c))
    return eq, strict


def _max_step(face: _Face, hyps, w, u) -> Optional[Fraction]:
    """Largest ``lam`` (exclusive) keeping ``w + lam u`` inside the face; None if unlimited."""
    limit = None
    for s, (a, c) in zip(face.signs, hyps):
        if s == 0:
            continue
        rate = s * _dot(a, u)
        if rate < 0:
            step = s * (_dot(a, w) + c) / -rate
            if limit is None or step < limit:
                limit = step
    return limit


def _split(face: _Face, hyps, a, c):
    """The faces into which hyperplane ``a.x + c = 0`` cuts ``face``.

    Returns ``(sign, witness)`` pairs.
    """
    w = face.witness
    val = _dot(a, w) + c
    proj = [_dot(a, v) for v in face.directions]
    if not any(proj):
        # h is constant on the face's affine hull
        return [((val > 0) - (val < 0), w)]
    u = [sum(p * v[i] for p, v in zip(proj, face.directions)) for i in range(len(w))]
    slope = _dot(a, u)              # = |proj|^2 > 0
    if val == 0:
        limit = min(_max_step(face, hyps, w, u) or _ONE,
                    _max_step(face, hyps, w, [-x for x in u]) or _ONE)
        step = limit / 2
        plus = [wi + step * ui for wi, ui in zip(w, u)]
        minus = [wi - step * ui for wi, ui in zip(w, u)]
        return [(1, plus), (0, w), (-1, minus)]
    # moving along `direction` pushes h towards zero at `rate` per unit step
    direction = u if val < 0 else [-x for x in u]
    rate = slope if val < 0 else -slope
    limit = _max_step(face, hyps, w, direction)
    to_zero = -val / rate
    here = (val > 0) - (val < 0)
    if limit is None or to_zero < limit:
        beyond = to_zero + 1 if limit is None else (to_zero + limit) / 2
        zero_pt = [wi + to_zero * di for wi, di in zip(w, direction)]
        far = [wi + beyond * di for wi, di in zip(w, direction)]
        return [(here, w), (0, zero_pt), (-here, far)]
    # ray shooting was inconclusive; ask the LP for the other side
    eq, strict = _face_constraints(face, hyps)
    if here > 0:
        strict.append((a, -c))
    else:
        strict.append(([-v for v in a], c))
    other = find_point(len(w), eq=eq, strict=strict)
    if other is None:
        return [(here, w)]
    v_other = _dot(a, other) + c
    lam = val / (val - v_other)
    zero_pt = [wi + lam * (oi - wi) for wi, oi in zip(w, other)]
    return [(here, w), (0, zero_pt), (-here, other)]


def _arrangement_faces(d: int, hyps) -> List[_Face]:
    identity = [[_ONE if i == j else _ZERO for i in range(d)] for j in range(d)]
    faces = [_Face((), [_ZERO] * d, [], identity)]
    for a, c in hyps:
        nxt = []
        for face in faces:
            for sign, witness in _split(face, hyps, a, c):
                if sign == 0:
                    zero_rows = face.zero_rows + [(a, c)]
                    _, directions = solve_affine([r for r, _ in zero_rows],
                                                 [-k for _, k in zero_rows], d)
                else:
                    zero_rows, directions = face.zero_rows, face.directions
                nxt.append(_Face(face.signs + (sign,), witness, zero_rows, directions))
        faces = nxt
    return faces


def _is_bounded(face: _Face, hyps, d: int) -> bool:
    if not face.directions:
        return True
    A_eq = [list(a) for a, _ in face.zero_rows]
    b_eq = [-c for _, c in face.zero_rows]
    A_ub, b_ub = [], []
    for s, (a, c) in zip(face.signs, hyps):
        if s > 0:
            A_ub.append([-v for v in a])
            b_ub.append(c)
        elif s < 0:
            A_ub.append(list(a))
            b_ub.append(-c)
    for j in range(d):
        for sgn in (1, -1):
            obj = [_ZERO] * d
            obj[j] = Fraction(sgn)
            status, _, _ = linprog_max(obj, A_ub, b_ub, A_eq, b_eq)
            if status == "unbounded":
                return False
    return True


def arrangement_decompose(S: PolyhedralSet, bounded: bool = True) -> CellDecomposition:
    """Faces of the arrangement of ``S``'s hyperplanes that lie in ``S``.

    With ``bounded=False`` the per-cell boundedness test (2d linear programs
    per cell) is skipped and ``Cell.bounded`` is None.
    """
    d = S.dim
    hyps = [(list(a), c) for a, c in S.hyperplanes()]
    cells = []
    for face in _arrangement_faces(d, hyps):
        w = tuple(face.witness)
        if not S.formula.evaluate(w):
            continue
        cells.append(Cell(
            dimension=len(face.directions),
            bounded=_is_bounded(face, hyps, d) if bounded else None,
            witness=w,
            sign_vector=face.signs,
        ))
    return CellDecomposition(d, tuple((tuple(a), c) for a, c in hyps), tuple(cells))


def euler_measure_cells(S: PolyhedralSet) -> int:
    """Euler measure as the alternating count of arrangement cells inside ``S``."""
    return arrangement_decompose(S, bounded=False).euler_measure()


def euler_measure(S: PolyhedralSet, method: str = "fiber") -> int:
    """Euler measure by ``"fiber"``, ``"cells"`` or ``"both"`` (checked to agree)."""
    if method == "fiber":
        return euler_measure_fiber(S)
    if method == "cells":
        return euler_measure_cells(S)
    if method == "both":
        a, b = euler_measure_fiber(S), euler_measure_cells(S)
        if a != b:
            raise MethodDisagreement(f"fiber method gives {a}, cell method gives {b} for {S}")
        return a
    raise ValueError(f"unknown method {method!r}")


def is_empty(S: PolyhedralSet) -> bool:
    if isinstance(S.formula, Const):
        return not S.formula.value
    hyps = [(list(a), c) for a, c in S.hyperplanes()]
    return not any(S.formula.evaluate(tuple(f.witness)) for f in _arrangement_faces(S.dim, hyps))


def dimension(S: PolyhedralSet) -> int:
    """Largest cell dimension of the set; -1 when empty."""
    cells = arrangement_decompose(S, bounded=False).cells
    return max((c.dimension for c in cells), default=-1)


class IsoClass(NamedTuple):
    dimension: int
    chi: int
    bounded: bool


def iso_classify(S: PolyhedralSet) -> IsoClass:
    dec = arrangement_decompose(S)
    d = max((c.dimension for c in dec.cells), default=-1)
    return IsoClass(d, dec.euler_measure(), all(c.bounded for c in dec.cells))


def polyhedrally_isomorphic(A: PolyhedralSet, B: PolyhedralSet) -> bool:
    """Isomorphism of polytopes by the (dimension, Euler measure) invariant.

    Unbounded sets are never declared isomorphic: the invariant is only a
    classification for bounded sets.
    """
    a, b = iso_classify(A), iso_classify(B)
    if not (a.bounded and b.bounded):
        return False
    return (a.dimension, a.chi) == (b.dimension, b.chi)


# ---------------------------------------------------------------------------
# Euler integration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstructibleFunction:
    """Integer-valued function given by disjoint regions covering ``R^ambient_dim``."""

    ambient_dim: int
    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple((int(v), r) for v, r in self.pieces))
        for _, region in self.pieces:
            if region.dim != self.ambient_dim:
                raise DimensionError(
                    f"region of dimension {region.dim} in a function on R^{self.ambient_dim}")

    @classmethod
    def from_regions(cls, ambient_dim: int, pieces, fill_zero: bool = True) -> "ConstructibleFunction":
        """Build from ``(value, region)`` pairs, filling the uncovered rest with 0."""
        pieces = list(pieces)
        if fill_zero:
            rest = PolyhedralSet.universe(ambient_dim)
            for _, region in pieces:
                rest = rest.difference(region)
            pieces.append((0, rest))
        return cls(ambient_dim, tuple(pieces))

    @classmethod
    def indicator(cls, region: PolyhedralSet) -> "ConstructibleFunction":
        return cls(region.dim, ((1, region), (0, region.complement())))

    def validate(self) -> None:
        """Raise PartitionError unless the regions are disjoint and cover the space."""
        regions = [r for _, r in self.pieces]
        for i in range(len(regions)):
            for j in range(i + 1, len(regions)):
                if not is_empty(regions[i] & regions[j]):
                    raise PartitionError(f"regions {i} and {j} overlap")
        covered = PolyhedralSet(self.ambient_dim, disj(*(r.formula for r in regions)))
        if not is_empty(covered.complement()):
            raise PartitionError("regions do not cover the ambient space")

    def __call__(self, x) -> int:
        for value, region in self.pieces:
            if region.contains(x):
                return value
        raise PartitionError(f"no region contains {x}")


def euler_integral(f: ConstructibleFunction, method: str = "fiber", check: bool = True) -> int:
    """``sum value * chi(region)`` over the pieces of ``f``."""
    if check:
        f.validate()
    return sum(v * euler_measure(r, method) for v, r in f.pieces if v)


def fubini_integral(f: ConstructibleFunction, outer_axis: int) -> int:
    """Iterated integral: all other coordinates first, ``outer_axis`` last.

    The inner integral is the Euler integral of the restriction of ``f`` to a
    slice ``x[outer_axis] = t``; it is constant between critical values of the
    slicing, so the outer integral is a line integral over that partition.
    """
    d = f.ambient_dim
    if not 0 <= outer_axis < d:
        raise DimensionError(f"axis {outer_axis} out of range for R^{d}")
    perm = [i for i in range(d) if i != outer_axis] + [outer_axis]
    regions = [(v, r.permute(perm)) for v, r in f.pieces if v]
    if not regions:
        return 0
    combined = PolyhedralSet(d, disj(*(r.formula for _, r in regions)))
    if isinstance(combined.formula, Const):
        breaks = []
    else:
        breaks = critical_values(combined)
    pairs = []
    for piece in partition_line(breaks):
        t = sample_point(piece)
        inner = sum(v * euler_measure_fiber(r.substitute_last(t)) for v, r in regions)
        pairs.append((piece, inner))
    return euler_integral_line(pairs)

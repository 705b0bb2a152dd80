"""Finite groups of rational affine maps acting on polyhedral sets.

The trace of a map on a set is the Euler measure of its fixed points.  For a
union ``P`` of disjoint k-cells permuted by a group, ``(-1)**k`` times the
per-class traces is expected to be a character; ``character_multiplicities``
checks that against a character table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .errors import DimensionError
from .euler import arrangement_decompose, euler_measure
from .lp import rref
from .polyset import LinearForm, PolyhedralSet, as_fraction, atom, conj

__all__ = [
    "AffineMap", "fixed_set", "trace", "GroupAction", "CharacterTable",
    "Decomposition", "character_multiplicities", "builtin_table",
    "triangle_action", "square_action",
]


@dataclass(frozen=True)
class AffineMap:
    """``x -> matrix @ x + translation`` with rational entries."""

    matrix: Tuple[Tuple[Fraction, ...], ...]
    translation: Tuple[Fraction, ...]

    def __post_init__(self):
        m = tuple(tuple(as_fraction(v) for v in row) for row in self.matrix)
        t = tuple(as_fraction(v) for v in self.translation)
        if any(len(row) != len(m) for row in m) or len(t) != len(m):
            raise DimensionError("affine map needs a square matrix and a matching translation")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", t)

    @property
    def dim(self) -> int:
        return len(self.translation)

    @classmethod
    def identity(cls, d: int) -> "AffineMap":
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), (0,) * d)

    @classmethod
    def parse(cls, text: str) -> "AffineMap":
        """Matrix rows, one per line, followed by the translation line."""
        lines = [line.split("#")[0] for line in text.splitlines()]
        rows = [[Fraction(tok) for tok in line.split()] for line in lines if line.strip()]
        if len(rows) < 2:
            raise ValueError("affine map needs matrix rows and a translation line")
        return cls(tuple(map(tuple, rows[:-1])), tuple(rows[-1]))

    def __call__(self, x: Sequence) -> tuple:
        return tuple(sum(a * xi for a, xi in zip(row, x)) + t
                     for row, t in zip(self.matrix, self.translation))

    apply = __call__

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self`` after ``other``."""
        d = self.dim
        m = tuple(tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(d))
                        for j in range(d)) for i in range(d))
        return AffineMap(m, self(other.translation))

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        return self.compose(other)

    def inverse(self) -> "AffineMap":
        d = self.dim
        aug = [list(row) + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(self.matrix)]
        reduced, pivots = rref(aug, ncols=d)
        if len(pivots) < d:
            raise ValueError("affine map is not invertible")
        inv = tuple(tuple(row[d:]) for row in reduced)
        t = tuple(-sum(a * b for a, b in zip(row, self.translation)) for row in inv)
        return AffineMap(inv, t)

    def is_identity(self) -> bool:
        return self == AffineMap.identity(self.dim)


def fixed_set(P: PolyhedralSet, g: AffineMap) -> PolyhedralSet:
    """Points of ``P`` with ``g(x) = x``."""
    if P.dim != g.dim:
        raise DimensionError(f"map on R^{g.dim} applied to a set in R^{P.dim}")
    eqs = []
    for i, (row, t) in enumerate(zip(g.matrix, g.translation)):
        coeffs = tuple(a - (1 if j == i else 0) for j, a in enumerate(row))
        eqs.append(atom(LinearForm(coeffs, t), "="))
    return PolyhedralSet(P.dim, conj(P.formula, *eqs))


def trace(P: PolyhedralSet, g: AffineMap, method: str = "fiber") -> int:
    """Euler measure of the fixed-point set of ``g`` on ``P``."""
    return euler_measure(fixed_set(P, g), method)


class GroupAction:
    """A finite group of affine maps leaving ``target`` invariant.

    ``conjugacy_classes`` partitions the element indices; its order fixes the
    order of class functions such as ``class_traces``.
    """

    def __init__(self, elements: Sequence[AffineMap], conjugacy_classes: Sequence[Sequence[int]],
                 target: PolyhedralSet):
        self.elements = list(elements)
        self.conjugacy_classes = [list(c) for c in conjugacy_classes]
        self.target = target
        self._check()

    @classmethod
    def generate(cls, generators: Sequence[AffineMap], target: PolyhedralSet,
                 class_representatives: Optional[Sequence[AffineMap]] = None) -> "GroupAction":
        """Close ``generators`` under composition and compute conjugacy classes.

        Classes are listed in the order of ``class_representatives`` when
        given, otherwise in order of first appearance.
        """
        d = target.dim
        elements = [AffineMap.identity(d)]
        seen = set(elements)
        frontier = list(elements)
        while frontier:
            nxt = []
            for g in frontier:
                for s in generators:
                    h = s.compose(g)
                    if h not in seen:
                        seen.add(h)
                        elements.append(h)
                        nxt.append(h)
            frontier = nxt
        index = {g: i for i, g in enumerate(elements)}
        classes: List[List[int]] = []
        assigned = set()
        order = list(class_representatives) if class_representatives else elements
        for rep in order + elements:
            if rep not in index:
                raise ValueError("class representative is not in the generated group")
            if index[rep] in assigned:
                continue
            cls_ = sorted({index[h.compose(rep).compose(h.inverse())] for h in elements})
            assigned.update(cls_)
            classes.append(cls_)
        return cls(elements, classes, target)

    @property
    def order(self) -> int:
        return len(self.elements)

    def _check(self) -> None:
        d = self.target.dim
        if any(g.dim != d for g in self.elements):
            raise DimensionError("group elements and target live in different dimensions")
        index = {g: i for i, g in enumerate(self.elements)}
        if len(index) != len(self.elements):
            raise ValueError("repeated group element")
        if AffineMap.identity(d) not in index:
            raise ValueError("group has no identity")
        for g in self.elements:
            if g.inverse() not in index:
                raise ValueError("group is not closed under inverses")
            for h in self.elements:
                if g.compose(h) not in index:
                    raise ValueError("group is not closed under composition")
        flat = sorted(i for c in self.conjugacy_classes for i in c)
        if flat != list(range(len(self.elements))):
            raise ValueError("conjugacy classes do not partition the group")
        for c in self.conjugacy_classes:
            rep = self.elements[c[0]]
            conj_ = {index[h.compose(rep).compose(h.inverse())] for h in self.elements}
            if conj_ != set(c):
                raise ValueError(f"class {c} is not a conjugacy class")
        witnesses = [cell.witness for cell in arrangement_decompose(self.target, bounded=False).cells]
        for g in self.elements:
            for w in witnesses:
                if not self.target.contains(g(w)):
                    raise ValueError(f"group element does not preserve the target at {w}")

    def class_traces(self, method: str = "fiber") -> List[int]:
        """Trace of each class, checked to be constant on the class."""
        out = []
        for c in self.conjugacy_classes:
            values = {trace(self.target, self.elements[i], method) for i in c}
            if len(values) != 1:
                raise ValueError(f"trace is not a class function on class {c}: {sorted(values)}")
            out.append(values.pop())
        return out

    @property
    def class_sizes(self) -> List[int]:
        return [len(c) for c in self.conjugacy_classes]


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharacterTable:
    """Rational character table over conjugacy classes.

    Each row is an irreducible character or, when ``orbit_sizes`` is given,
    the sum of a Galois orbit of irreducible characters of that many members.
    Orbit sums keep tables with irrational entries (cyclic groups) rational;
    a rational class function has equal multiplicity on every member of an
    orbit, so nothing is lost.
    """

    class_sizes: Tuple[int, ...]
    irreducible_rows: Tuple[Tuple[Fraction, ...], ...]
    orbit_sizes: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.class_sizes)
        rows = tuple(tuple(as_fraction(v) for v in row) for row in self.irreducible_rows)
        orbits = tuple(int(o) for o in self.orbit_sizes) if self.orbit_sizes else (1,) * len(rows)
        object.__setattr__(self, "class_sizes", sizes)
        object.__setattr__(self, "irreducible_rows", rows)
        object.__setattr__(self, "orbit_sizes", orbits)
        if not sizes or any(s <= 0 for s in sizes):
            raise ValueError("class sizes must be positive")
        if any(len(r) != len(sizes) for r in rows):
            raise ValueError("every row needs one value per class")
        if len(orbits) != len(rows) or any(o <= 0 for o in orbits):
            raise ValueError("one positive orbit size per row")
        for i, a in enumerate(rows):
            for j, b in enumerate(rows):
                expected = orbits[i] if i == j else 0
                if self._inner(a, b) != expected:
                    raise ValueError(f"rows {i} and {j} are not orthonormal")
        if sum(orbits) != len(sizes):
            raise ValueError("number of irreducibles differs from the number of classes")

    @property
    def group_order(self) -> int:
        return sum(self.class_sizes)

    def _inner(self, a, b) -> Fraction:
        return sum((s * x * y for s, x, y in zip(self.class_sizes, a, b)), Fraction(0)) / self.group_order

    @classmethod
    def parse(cls, text: str) -> "CharacterTable":
        """Class sizes on the first line, then one row per irreducible.

        An optional line ``orbits: n1 n2 ...`` gives Galois orbit sizes.
        """
        lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        orbits = None
        rest = []
        for ln in lines:
            if ln.startswith("orbits:"):
                orbits = tuple(int(tok) for tok in ln[len("orbits:"):].split())
            else:
                rest.append(ln)
        if not rest:
            raise ValueError("empty character table")
        sizes = tuple(int(tok) for tok in rest[0].split())
        rows = tuple(tuple(Fraction(tok) for tok in ln.split()) for ln in rest[1:])
        return cls(sizes, rows, orbits)


class Decomposition(NamedTuple):
    multiplicities: Tuple[Fraction, ...]
    is_character: bool


def character_multiplicities(values: Sequence, table: CharacterTable) -> Decomposition:
    """Multiplicity of each irreducible in the class function ``values``."""
    vals = tuple(as_fraction(v) for v in values)
    if len(vals) != len(table.class_sizes):
        raise ValueError(f"{len(vals)} values for {len(table.class_sizes)} classes")
    mult = tuple(table._inner(vals, row) / o for row, o in zip(table.irreducible_rows, table.orbit_sizes))
    ok = all(m.denominator == 1 and m >= 0 for m in mult)
    return Decomposition(mult, ok)


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _mobius(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


def _ramanujan(d: int, j: int) -> int:
    """Sum of the primitive d-th roots of unity raised to the power j."""
    m = d // gcd(d, j)
    return _mobius(m) * _totient(d) // _totient(m)


def _cyclic_table(n: int) -> CharacterTable:
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    rows = tuple(tuple(_ramanujan(d, j) for j in range(n)) for d in divisors)
    return CharacterTable((1,) * n, rows, tuple(_totient(d) for d in divisors))


_S3 = CharacterTable((1, 3, 2), ((1, 1, 1), (1, -1, 1), (2, 0, -1)))
# classes: e, r^2, {r, r^3}, axis reflections, diagonal reflections
_D4 = CharacterTable((1, 1, 2, 2, 2), (
    (1, 1, 1, 1, 1), (1, 1, 1, -1, -1), (1, 1, -1, 1, -1), (1, 1, -1, -1, 1), (2, -2, 0, 0, 0)))


def builtin_table(name: str) -> CharacterTable:
    """``S3``, ``D4`` or ``C1`` .. ``C6`` (cyclic, classes ordered by exponent)."""
    key = name.upper()
    if key == "S3":
        return _S3
    if key == "D4":
        return _D4
    if key.startswith("C") and key[1:].isdigit() and 1 <= int(key[1:]) <= 6:
        return _cyclic_table(int(key[1:]))
    raise KeyError(f"no built-in character table {name!r}")


# ---------------------------------------------------------------------------
# standard actions
# ---------------------------------------------------------------------------

_FLIP = AffineMap(((0, 1), (1, 0)), (0, 0))
_ROT3 = AffineMap(((-1, -1), (1, 0)), (1, 0))


def triangle_action(target: PolyhedralSet) -> GroupAction:
    """Symmetries of the triangle (0,0), (1,0), (0,1), classes ordered as in ``S3``."""
    return GroupAction.generate([_FLIP, _ROT3], target,
                                [AffineMap.identity(2), _FLIP, _ROT3])


_ROT4 = AffineMap(((0, -1), (1, 0)), (1, 0))
_AXIS = AffineMap(((-1, 0), (0, 1)), (1, 0))


def square_action(target: PolyhedralSet) -> GroupAction:
    """Symmetries of the unit square, classes ordered as in ``D4``."""
    return GroupAction.generate([_ROT4, _AXIS], target, [
        AffineMap.identity(2), _ROT4.compose(_ROT4), _ROT4, _AXIS, _FLIP])

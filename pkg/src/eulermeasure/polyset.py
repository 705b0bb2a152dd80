"""Semilinear sets: exact linear constraints combined by Boolean connectives.

A :class:`PolyhedralSet` is an ambient dimension together with a Boolean
formula whose leaves are linear atoms ``form(x) REL 0`` with ``REL`` one of
``=``, ``<``, ``<=``.  Everything is exact (:class:`fractions.Fraction`).

The one-dimensional normal form :class:`CanonicalLine` lists the set as
sorted, disjoint points and open intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import DimensionError

__all__ = [
    "LinearForm", "Formula", "Const", "Atom", "Not", "And", "Or",
    "TRUE", "FALSE", "atom", "conj", "disj", "neg",
    "PolyhedralSet", "Point", "OpenInterval", "CanonicalLine",
    "evaluate_membership", "set_algebra", "substitute_last",
    "canonicalize_line", "sample_point", "as_fraction",
]

RELATIONS = ("=", "<", "<=")
_ZERO = Fraction(0)


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if type(value) is Fraction:
        return value
    if isinstance(value, float):
        raise TypeError("floating-point values are not accepted; use Fraction or 'p/q'")
    return Fraction(value)


def _fraction_tuple(values) -> tuple:
    return tuple(v if type(v) is Fraction else as_fraction(v) for v in values)


# ---------------------------------------------------------------------------
# linear forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearForm:
    """The affine function ``x -> coeffs . x + const``."""

    coeffs: tuple
    const: Fraction = _ZERO

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _fraction_tuple(self.coeffs))
        if type(self.const) is not Fraction:
            object.__setattr__(self, "const", as_fraction(self.const))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        total = self.const
        for c, xi in zip(self.coeffs, x):
            if c:
                total += c * xi
        return total

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-c for c in self.coeffs), -self.const)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
                          self.const - other.const)

    def is_constant(self) -> bool:
        return not any(self.coeffs)

    def substitute_last(self, value: Fraction) -> "LinearForm":
        *head, last = self.coeffs
        return LinearForm(tuple(head), self.const + last * value)

    def pad(self, before: int = 0, after: int = 0) -> "LinearForm":
        return LinearForm((_ZERO,) * before + self.coeffs + (_ZERO,) * after, self.const)

    def permute(self, perm: Sequence[int]) -> "LinearForm":
        return LinearForm(tuple(self.coeffs[p] for p in perm), self.const)

    def hyperplane(self) -> Optional[tuple]:
        """Scale-free key of the zero set, or None for a constant form.

        The key is ``(coeffs, const)`` scaled so that the first nonzero
        coefficient equals 1.
        """
        for c in self.coeffs:
            if c:
                return tuple(a / c for a in self.coeffs), self.const / c
        return None


# ---------------------------------------------------------------------------
# formulas
# ---------------------------------------------------------------------------

class Formula:
    """Base class of formula nodes; instances are immutable and hashable."""

    __slots__ = ()

    def evaluate(self, x) -> bool:
        raise NotImplementedError

    def map_forms(self, fn) -> "Formula":
        """Rebuild the formula with every atom's form replaced by ``fn(form)``."""
        raise NotImplementedError

    def atoms(self):
        raise NotImplementedError

    def substitute_last(self, value: Fraction) -> "Formula":
        return self.map_forms(lambda form: form.substitute_last(value))


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def evaluate(self, x) -> bool:
        return self.value

    def map_forms(self, fn) -> Formula:
        return self

    def atoms(self):
        return iter(())

    def __str__(self):
        return "true" if self.value else "false"


TRUE = Const(True)
FALSE = Const(False)


def _compare(value: Fraction, rel: str) -> bool:
    if rel == "<":
        return value < 0
    if rel == "<=":
        return value <= 0
    return value == 0


@dataclass(frozen=True)
class Atom(Formula):
    """``form(x) rel 0`` with ``rel`` in ``{'=', '<', '<='}``."""

    form: LinearForm
    rel: str

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unnormalized relation {self.rel!r}; build atoms with atom()")

    def evaluate(self, x) -> bool:
        return _compare(self.form(x), self.rel)

    def map_forms(self, fn) -> Formula:
        return atom(fn(self.form), self.rel)

    def atoms(self):
        yield self

    def __str__(self):
        return f"{format_linear(self.form)} {self.rel} 0"


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def evaluate(self, x) -> bool:
        return not self.arg.evaluate(x)

    def map_forms(self, fn) -> Formula:
        return neg(self.arg.map_forms(fn))

    def atoms(self):
        return self.arg.atoms()

    def __str__(self):
        return f"!({self.arg})"


@dataclass(frozen=True)
class And(Formula):
    args: tuple

    def evaluate(self, x) -> bool:
        return all(a.evaluate(x) for a in self.args)

    def map_forms(self, fn) -> Formula:
        return conj(*(a.map_forms(fn) for a in self.args))

    def atoms(self):
        for a in self.args:
            yield from a.atoms()

    def __str__(self):
        return " & ".join(f"({a})" for a in self.args)


@dataclass(frozen=True)
class Or(Formula):
    args: tuple

    def evaluate(self, x) -> bool:
        return any(a.evaluate(x) for a in self.args)

    def map_forms(self, fn) -> Formula:
        return disj(*(a.map_forms(fn) for a in self.args))

    def atoms(self):
        for a in self.args:
            yield from a.atoms()

    def __str__(self):
        return " | ".join(f"({a})" for a in self.args)


def atom(form: LinearForm, rel: str) -> Formula:
    """Build ``form REL 0`` for any of ``= != < <= > >=``.

    ``>`` and ``>=`` are turned around by negating the form, ``!=`` becomes a
    disjunction, and atoms over a constant form fold to TRUE/FALSE.
    """
    if rel == ">":
        form, rel = -form, "<"
    elif rel == ">=":
        form, rel = -form, "<="
    elif rel == "!=":
        return disj(atom(form, "<"), atom(-form, "<"))
    elif rel == "==":
        rel = "="
    if form.is_constant():
        return TRUE if _compare(form.const, rel) else FALSE
    return Atom(form, rel)


def conj(*args: Formula) -> Formula:
    flat = []
    for a in args:
        if isinstance(a, Const):
            if not a.value:
                return FALSE
            continue
        if isinstance(a, And):
            flat.extend(a.args)
        else:
            flat.append(a)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def disj(*args: Formula) -> Formula:
    flat = []
    for a in args:
        if isinstance(a, Const):
            if a.value:
                return TRUE
            continue
        if isinstance(a, Or):
            flat.extend(a.args)
        else:
            flat.append(a)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def neg(arg: Formula) -> Formula:
    if isinstance(arg, Const):
        return FALSE if arg.value else TRUE
    if isinstance(arg, Not):
        return arg.arg
    return Not(arg)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_linear(form: LinearForm) -> str:
    """Render a form in the set-document syntax, e.g. ``x1 - 1/2*x2 + 3``."""
    parts = []
    for i, c in enumerate(form.coeffs, start=1):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        term = f"x{i}" if mag == 1 else f"{format_rational(mag)}*x{i}"
        parts.append((sign, term))
    if form.const or not parts:
        sign = "-" if form.const < 0 else "+"
        parts.append((sign, format_rational(abs(form.const))))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text


# ---------------------------------------------------------------------------
# sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyhedralSet:
    """``{x in R^dim : formula(x)}``."""

    dim: int
    formula: Formula

    def __post_init__(self):
        if self.dim < 0:
            raise DimensionError("ambient dimension must be non-negative")
        for a in self.formula.atoms():
            if a.form.dim != self.dim:
                raise DimensionError(
                    f"atom over {a.form.dim} coordinates in a set of dimension {self.dim}")

    # constructors ---------------------------------------------------------

    @classmethod
    def universe(cls, dim: int) -> "PolyhedralSet":
        return cls(dim, TRUE)

    @classmethod
    def empty(cls, dim: int) -> "PolyhedralSet":
        return cls(dim, FALSE)

    @classmethod
    def point(cls, coords) -> "PolyhedralSet":
        coords = _fraction_tuple(coords)
        d = len(coords)
        return cls(d, conj(*(atom(_unit(d, i, c), "=") for i, c in enumerate(coords))))

    @classmethod
    def interval(cls, lo=None, hi=None, lo_closed=False, hi_closed=False) -> "PolyhedralSet":
        """An interval of R; ``None`` stands for an infinite endpoint."""
        parts = []
        if lo is not None:
            # lo - x < 0  (or <=)
            parts.append(atom(LinearForm((Fraction(-1),), as_fraction(lo)),
                              "<=" if lo_closed else "<"))
        if hi is not None:
            parts.append(atom(LinearForm((Fraction(1),), -as_fraction(hi)),
                              "<=" if hi_closed else "<"))
        return cls(1, conj(*parts))

    # queries --------------------------------------------------------------

    def contains(self, x) -> bool:
        x = _fraction_tuple(x)
        if len(x) != self.dim:
            raise DimensionError(f"point has {len(x)} coordinates, set has dimension {self.dim}")
        return self.formula.evaluate(x)

    __contains__ = contains

    def atoms(self) -> list:
        return list(self.formula.atoms())

    def hyperplanes(self) -> list:
        """Distinct hyperplanes ``(coeffs, const)`` appearing in the formula, in order."""
        seen = {}
        for a in self.formula.atoms():
            key = a.form.hyperplane()
            if key is not None and key not in seen:
                seen[key] = None
        return list(seen)

    # algebra --------------------------------------------------------------

    def _check_same_dim(self, other: "PolyhedralSet"):
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def union(self, *others: "PolyhedralSet") -> "PolyhedralSet":
        for o in others:
            self._check_same_dim(o)
        return PolyhedralSet(self.dim, disj(self.formula, *(o.formula for o in others)))

    def intersection(self, *others: "PolyhedralSet") -> "PolyhedralSet":
        for o in others:
            self._check_same_dim(o)
        return PolyhedralSet(self.dim, conj(self.formula, *(o.formula for o in others)))

    def complement(self) -> "PolyhedralSet":
        return PolyhedralSet(self.dim, neg(self.formula))

    def difference(self, other: "PolyhedralSet") -> "PolyhedralSet":
        self._check_same_dim(other)
        return PolyhedralSet(self.dim, conj(self.formula, neg(other.formula)))

    __or__ = union
    __and__ = intersection
    __invert__ = complement
    __sub__ = difference

    def product(self, other: "PolyhedralSet") -> "PolyhedralSet":
        m, n = self.dim, other.dim
        left = self.formula.map_forms(lambda f: f.pad(after=n))
        right = other.formula.map_forms(lambda f: f.pad(before=m))
        return PolyhedralSet(m + n, conj(left, right))

    __mul__ = product

    def disjoint_sum(self, other: "PolyhedralSet") -> "PolyhedralSet":
        """``self x {1}  union  other x {2}`` in one more dimension."""
        self._check_same_dim(other)
        d = self.dim
        tag = lambda v: atom(_unit(d + 1, d, v), "=")  # noqa: E731
        left = conj(self.formula.map_forms(lambda f: f.pad(after=1)), tag(1))
        right = conj(other.formula.map_forms(lambda f: f.pad(after=1)), tag(2))
        return PolyhedralSet(d + 1, disj(left, right))

    def substitute_last(self, value) -> "PolyhedralSet":
        if self.dim < 1:
            raise DimensionError("cannot take a fiber of a 0-dimensional set")
        value = as_fraction(value)
        return PolyhedralSet(self.dim - 1, self.formula.substitute_last(value))

    def permute(self, perm: Sequence[int]) -> "PolyhedralSet":
        """``{(x[perm[0]], ..., x[perm[d-1]]) : x in self}``."""
        if sorted(perm) != list(range(self.dim)):
            raise ValueError(f"{perm!r} is not a permutation of range({self.dim})")
        # new coefficient i multiplies y_i = x_{perm[i]}
        return PolyhedralSet(self.dim, self.formula.map_forms(lambda f: f.permute(perm)))

    def __str__(self):
        return f"dim {self.dim}: {self.formula}"


def _unit(dim: int, index: int, value) -> LinearForm:
    """The form ``x[index] - value``."""
    coeffs = [_ZERO] * dim
    coeffs[index] = Fraction(1)
    return LinearForm(tuple(coeffs), -as_fraction(value))


# ---------------------------------------------------------------------------
# the line
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Point:
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", as_fraction(self.c))

    def contains(self, x: Fraction) -> bool:
        return x == self.c

    def __str__(self):
        return "{" + format_rational(self.c) + "}"


@dataclass(frozen=True)
class OpenInterval:
    """``(lo, hi)``; ``None`` marks an infinite end."""

    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None

    def __post_init__(self):
        if self.lo is not None:
            object.__setattr__(self, "lo", as_fraction(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo is not None and self.hi is not None and not self.lo < self.hi:
            raise ValueError(f"empty interval ({self.lo}, {self.hi})")

    @property
    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    def contains(self, x: Fraction) -> bool:
        return (self.lo is None or self.lo < x) and (self.hi is None or x < self.hi)

    def __str__(self):
        lo = "-inf" if self.lo is None else format_rational(self.lo)
        hi = "+inf" if self.hi is None else format_rational(self.hi)
        return f"({lo}, {hi})"


Piece = Union[Point, OpenInterval]


def _sort_key(piece: Piece):
    # by left end; {a} sorts before (a, b)
    if isinstance(piece, Point):
        return (1, piece.c, 0)
    if piece.lo is None:
        return (0, _ZERO, 0)
    return (1, piece.lo, 1)


@dataclass(frozen=True)
class CanonicalLine:
    """Sorted, pairwise disjoint points and open intervals of R."""

    pieces: tuple = ()

    def __post_init__(self):
        pieces = tuple(sorted(self.pieces, key=_sort_key))
        object.__setattr__(self, "pieces", pieces)
        for left, right in zip(pieces, pieces[1:]):
            if not _strictly_before(left, right):
                raise ValueError(f"pieces {left} and {right} overlap or are out of order")

    def __iter__(self):
        return iter(self.pieces)

    def __len__(self):
        return len(self.pieces)

    def contains(self, x) -> bool:
        x = as_fraction(x)
        return any(p.contains(x) for p in self.pieces)

    def to_set(self) -> PolyhedralSet:
        parts = []
        for p in self.pieces:
            if isinstance(p, Point):
                parts.append(PolyhedralSet.point((p.c,)).formula)
            else:
                parts.append(PolyhedralSet.interval(p.lo, p.hi).formula)
        return PolyhedralSet(1, disj(*parts))

    @classmethod
    def of(cls, *pieces) -> "CanonicalLine":
        """Build from loose pieces: numbers become points, pairs open intervals."""
        built = []
        for p in pieces:
            if isinstance(p, (Point, OpenInterval)):
                built.append(p)
            elif isinstance(p, tuple):
                built.append(OpenInterval(*p))
            else:
                built.append(Point(p))
        return cls(tuple(built))

    def __str__(self):
        return " u ".join(str(p) for p in self.pieces) or "{}"


def _right_end(piece: Piece):
    return piece.c if isinstance(piece, Point) else piece.hi


def _left_end(piece: Piece):
    return piece.c if isinstance(piece, Point) else piece.lo


def _strictly_before(left: Piece, right: Piece) -> bool:
    a, b = _right_end(left), _left_end(right)
    if a is None or b is None:
        return False
    if isinstance(left, Point) and isinstance(right, Point):
        return a < b
    return a <= b


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def evaluate_membership(S: PolyhedralSet, x) -> bool:
    return S.contains(x)


def set_algebra(op: str, *args: PolyhedralSet) -> PolyhedralSet:
    """Apply ``union``, ``intersection``, ``complement``, ``product`` or ``disjoint_sum``."""
    if op == "complement":
        (a,) = args
        return a.complement()
    if not args:
        raise ValueError(f"{op} needs at least one argument")
    first, *rest = args
    if op == "union":
        return first.union(*rest)
    if op == "intersection":
        return first.intersection(*rest)
    if op == "product":
        out = first
        for r in rest:
            out = out.product(r)
        return out
    if op == "disjoint_sum":
        (b,) = rest
        return first.disjoint_sum(b)
    raise ValueError(f"unknown set operation {op!r}")


def substitute_last(S: PolyhedralSet, value) -> PolyhedralSet:
    return S.substitute_last(value)


def sample_point(piece: Piece) -> Fraction:
    """A rational point inside a nonempty piece."""
    if isinstance(piece, Point):
        return piece.c
    lo, hi = piece.lo, piece.hi
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    return (lo + hi) / 2


def line_breakpoints(S: PolyhedralSet) -> list:
    """Sorted roots of the atoms of a 1-dimensional set."""
    roots = set()
    for a in S.formula.atoms():
        (c,) = a.form.coeffs
        if c:
            roots.add(-a.form.const / c)
    return sorted(roots)


def partition_line(breaks: Iterable[Fraction]) -> list:
    """Points ``breaks`` plus the open intervals between them, left to right."""
    breaks = sorted(set(breaks))
    if not breaks:
        return [OpenInterval(None, None)]
    pieces = [OpenInterval(None, breaks[0])]
    for a, b in zip(breaks, breaks[1:]):
        pieces.append(Point(a))
        pieces.append(OpenInterval(a, b))
    pieces.append(Point(breaks[-1]))
    pieces.append(OpenInterval(breaks[-1], None))
    return pieces


def canonicalize_line(S: PolyhedralSet) -> CanonicalLine:
    """Coarsest sorted decomposition of a subset of R into points and open intervals."""
    if S.dim != 1:
        raise DimensionError(f"canonicalize_line needs a 1-dimensional set, got {S.dim}")
    formula = S.formula
    if isinstance(formula, Const):
        return CanonicalLine((OpenInterval(None, None),) if formula.value else ())
    breaks = line_breakpoints(S)
    member = [formula.evaluate((sample_point(p),)) for p in partition_line(breaks)]
    # member alternates: gap0, pt0, gap1, pt1, ..., gapN
    pieces = []
    lo = None          # left end of the interval being grown, if any
    growing = member[0]
    for i, b in enumerate(breaks):
        in_point, in_right = member[2 * i + 1], member[2 * i + 2]
        if growing and in_point and in_right:
            continue   # (a,b) u {b} u (b,c)  ->  (a,c)
        if growing:
            pieces.append(OpenInterval(lo, b))
        if in_point:
            pieces.append(Point(b))
        growing, lo = in_right, b
    if growing:
        pieces.append(OpenInterval(lo, None))
    return CanonicalLine(tuple(pieces))

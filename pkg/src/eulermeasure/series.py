"""Rational generating functions and their regularized values.

An f-series (cell counts by dimension) or an Euler series (signed stratum
measures) is carried as an exact :class:`RationalFunction` in ``t``.  Its
regularized value at a point is the value of the cancelled quotient there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List

from .errors import PoleError
from .polyset import as_fraction, format_rational

__all__ = [
    "Polynomial", "RationalFunction", "SigmaSeries", "T",
    "regularized_value", "sigma_equivalent", "choose2_transform",
    "mapspace_series", "series_arith", "prefix_coefficients", "subdivide",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_PREFIX = 64


class Polynomial:
    """Polynomial in ``t`` with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls([0] * k + [c])

    @property
    def degree(self) -> float:
        """Degree; ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other) -> "Polynomial":
        return other if isinstance(other, Polynomial) else Polynomial.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial; use RationalFunction")
        out, base = Polynomial.constant(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [_ZERO] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        for k in range(len(quot) - 1, -1, -1):
            q = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return Polynomial(quot), Polynomial(rem)

    def monic(self) -> "Polynomial":
        return self if self.is_zero() else Polynomial(c / self.leading for c in self.coeffs)

    def compose_power(self, k: int) -> "Polynomial":
        """``p(t**k)``."""
        out = [_ZERO] * (k * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return Polynomial(out)

    def __repr__(self):
        return f"Polynomial({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        return _format_poly(self.coeffs)


def _format_poly(coeffs) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mag = format_rational(abs(c))
        if i == 0:
            body = mag
        else:
            power = "t" if i == 1 else f"t^{i}"
            body = power if abs(c) == 1 else f"{mag}{power}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, divmod(a, b)[1]
    return a.monic()


T = Polynomial((0, 1))


def _as_poly(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction, str)):
        return Polynomial.constant(value)
    return Polynomial(value)


class RationalFunction:
    """``numerator / denominator`` in lowest terms with a monic denominator."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=1):
        num, den = _as_poly(numerator), _as_poly(denominator)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = divmod(num, g)[0], divmod(den, g)[0]
        lead = den.leading
        if num.is_zero():
            den = Polynomial.constant(1)
        elif lead != 1:
            num = Polynomial(c / lead for c in num.coeffs)
            den = den.monic()
        self.numerator = num
        self.denominator = den

    @classmethod
    def coerce(cls, value) -> "RationalFunction":
        return value if isinstance(value, RationalFunction) else cls(value)

    def is_polynomial(self) -> bool:
        return self.denominator.degree == 0

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.numerator

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        den = self.denominator(x)
        if not den:
            raise PoleError(f"{self} has a pole at t = {format_rational(x)}")
        return self.numerator(x) / den

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __add__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction(self.numerator * other.denominator + other.numerator * self.denominator,
                                self.denominator * other.denominator)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunction.coerce(other)
        if other.numerator.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.numerator * other.denominator, self.denominator * other.numerator)

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction(self.denominator ** -k, self.numerator ** -k)
        return RationalFunction(self.numerator ** k, self.denominator ** k)

    def compose_power(self, k: int) -> "RationalFunction":
        """``r(t**k)``."""
        return RationalFunction(self.numerator.compose_power(k), self.denominator.compose_power(k))

    def coefficients(self, n: int) -> List[Fraction]:
        return prefix_coefficients(self, n)

    def __repr__(self):
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"

    def display_pair(self):
        """``(numerator, denominator)`` rescaled so the denominator's constant
        term is 1 when it is nonzero, e.g. ``2 / (1 - 3t)``."""
        d0 = self.denominator[0]
        if not d0:
            return self.numerator, self.denominator
        return (Polynomial(c / d0 for c in self.numerator.coeffs),
                Polynomial(c / d0 for c in self.denominator.coeffs))

    def __str__(self):
        if self.is_polynomial():
            return str(self.numerator)
        num, den = self.display_pair()
        return f"({num}) / ({den})"


def prefix_coefficients(r: RationalFunction, n: int) -> List[Fraction]:
    """First ``n`` Taylor coefficients of ``r`` at ``t = 0``."""
    den = r.denominator
    d0 = den[0]
    if not d0:
        raise PoleError(f"{r} has a pole at t = 0; no power-series expansion")
    out = []
    for k in range(n):
        acc = r.numerator[k]
        for j in range(1, min(k, len(den.coeffs) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / d0)
    return out


def regularized_value(r: RationalFunction, point) -> Fraction:
    """Value of the cancelled rational function at ``point``; PoleError at a pole."""
    return RationalFunction.coerce(r)(point)


@dataclass(frozen=True)
class SigmaSeries:
    """f-series of a formal union of cells: a rational function with a
    non-negative integer expansion at 0."""

    repr: RationalFunction
    kind: str

    def __post_init__(self):
        if self.kind not in ("polynomial", "infinite"):
            raise ValueError(f"kind must be 'polynomial' or 'infinite', not {self.kind!r}")
        if self.kind == "polynomial" and not self.repr.is_polynomial():
            raise ValueError(f"{self.repr} is not a polynomial")
        if self.kind == "infinite" and self.repr.is_polynomial():
            raise ValueError(f"{self.repr} terminates; use kind='polynomial'")
        for k, c in enumerate(prefix_coefficients(self.repr, DEFAULT_PREFIX)):
            if c < 0 or c.denominator != 1:
                raise ValueError(f"coefficient {k} of {self.repr} is {c}, not a non-negative integer")

    @classmethod
    def of(cls, r) -> "SigmaSeries":
        r = RationalFunction.coerce(r)
        return cls(r, "polynomial" if r.is_polynomial() else "infinite")


def sigma_equivalent(a: SigmaSeries, b: SigmaSeries) -> bool:
    """Equivalence under the subdivision moves ``t^k <-> 2 t^k + t^(k-1)``.

    Polynomials: same degree and same value at -1.  Infinite series: the
    difference is a polynomial vanishing at -1.  Mixed kinds are never
    equivalent.
    """
    if a.kind != b.kind:
        return False
    if a.kind == "polynomial":
        pa, pb = a.repr.as_polynomial(), b.repr.as_polynomial()
        return pa.degree == pb.degree and pa(-1) == pb(-1)
    diff = a.repr - b.repr
    return diff.is_polynomial() and diff.numerator(-1) == 0


def subdivide(p: RationalFunction, k: int, times: int = 1) -> RationalFunction:
    """Apply ``t^k -> 2 t^k + t^(k-1)`` (``times < 0`` applies the reverse move)."""
    if k < 1:
        raise ValueError("moves act on t^k with k >= 1")
    step = Polynomial.monomial(k) + Polynomial.monomial(k - 1)
    return p + RationalFunction(step * times)


def choose2_transform(f: RationalFunction) -> RationalFunction:
    """Generating series of unordered pairs of cells built from ``f``.

    ``(f(t)^2 - f(t^2)) / 2 + t/(1-t) (f(t) - f(t^2))``.  Requires ``f`` to be
    finite at ``t = 1``.
    """
    f = RationalFunction.coerce(f)
    if not f.denominator(1):
        raise PoleError(f"{f} has no finite value at t = 1")
    f2 = f.compose_power(2)
    half = RationalFunction(Fraction(1, 2))
    return half * (f * f - f2) + RationalFunction(T, 1 - T) * (f - f2)


def mapspace_series(m: int, f0: int, f1: int) -> RationalFunction:
    """f-series ``m**f0 * (m / (1 - (m*m - 1) t))**f1`` of maps from a
    1-dimensional set with ``f0`` vertices and ``f1`` edges into ``m`` points."""
    if m < 1:
        raise ValueError("m must be positive")
    if f0 < 0 or f1 < 0:
        raise ValueError("cell counts must be non-negative")
    edge = RationalFunction(m, Polynomial((1, -(m * m - 1))))
    return RationalFunction(Fraction(m) ** f0) * edge ** f1


def series_arith(op: str, *args):
    """``add``/``mul`` over any number of rational functions, ``pow`` with an int exponent."""
    if op == "pow":
        base, k = args
        if not isinstance(k, int) or k < 0:
            raise ValueError("pow needs a non-negative integer exponent")
        return RationalFunction.coerce(base) ** k
    items = [RationalFunction.coerce(a) for a in args]
    if op == "add":
        out = RationalFunction(0)
        for r in items:
            out = out + r
        return out
    if op == "mul":
        out = RationalFunction(1)
        for r in items:
            out = out * r
        return out
    raise ValueError(f"unknown series operation {op!r}")

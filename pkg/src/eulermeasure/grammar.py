"""Text format for named polyhedral sets.

    # comments run to the end of the line
    dim 2;
    Box = 0 <= x1 <= 3 & 0 <= x2 <= 3;
    Hole = 1 < x1 < 2 & 1 < x2 < 2;
    S = Box & !Hole;

A document is a sequence of ``dim N;`` declarations and ``NAME = formula;``
definitions.  Formulas combine comparisons of affine expressions in ``x1 ..
xN`` (rational literals ``p/q`` or decimals) with ``!``, ``&``, ``|`` and
parentheses, binding in that order.  Comparisons may be chained.  A name
refers to an earlier set of the same dimension.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .errors import ParseError
from .polyset import FALSE, LinearForm, PolyhedralSet, TRUE, atom, conj, disj, neg

__all__ = ["SetDocument", "parse_document", "parse_formula", "format_document"]

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<var>x\d+)(?![A-Za-z0-9_])
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<rel><=|>=|!=|==|<|>|=)
  | (?P<op>[-+*/()!&|;])
""", re.VERBOSE)

_RELATIONS = {"<", "<=", ">", ">=", "=", "==", "!="}


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind != "ws":
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Affine:
    """Affine expression under construction: ``sum coeffs[i] x_i + const``."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs=None, const=Fraction(0)):
        self.coeffs: Dict[int, Fraction] = dict(coeffs or {})
        self.const = Fraction(const)

    def is_constant(self) -> bool:
        return not any(self.coeffs.values())

    def __add__(self, other):
        c = dict(self.coeffs)
        for k, v in other.coeffs.items():
            c[k] = c.get(k, 0) + v
        return _Affine(c, self.const + other.const)

    def scale(self, s: Fraction):
        return _Affine({k: v * s for k, v in self.coeffs.items()}, self.const * s)

    def __neg__(self):
        return self.scale(Fraction(-1))

    def __sub__(self, other):
        return self + (-other)

    def to_form(self, dim: int) -> LinearForm:
        return LinearForm(tuple(self.coeffs.get(i, Fraction(0)) for i in range(dim)), self.const)


@dataclass
class SetDocument:
    """Named sets in definition order."""

    sets: Dict[str, PolyhedralSet] = field(default_factory=dict)

    def __getitem__(self, name: str) -> PolyhedralSet:
        try:
            return self.sets[name]
        except KeyError:
            raise ParseError(f"unknown set {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.sets

    @property
    def names(self) -> List[str]:
        return list(self.sets)

    def format(self) -> str:
        return format_document(self)


class _Parser:
    def __init__(self, text: str, sets: Optional[Dict[str, PolyhedralSet]] = None, dim: Optional[int] = None):
        self.toks = _tokenize(text)
        self.i = 0
        self.sets: Dict[str, PolyhedralSet] = dict(sets or {})
        self.dim = dim

    # -- token helpers -----------------------------------------------------
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: Optional[_Tok] = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def accept(self, text: str) -> Optional[_Tok]:
        if self.tok.text == text and self.tok.kind != "eof":
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> _Tok:
        t = self.accept(text)
        if t is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return t

    # -- document ----------------------------------------------------------
    def document(self) -> SetDocument:
        while self.tok.kind != "eof":
            if self.tok.kind == "name" and self.tok.text == "dim":
                self.i += 1
                t = self.tok
                if t.kind != "num" or not t.text.isdigit():
                    raise self.error("expected a non-negative integer dimension")
                self.dim = int(t.text)
                self.i += 1
                self.expect(";")
                continue
            t = self.tok
            if t.kind != "name" or t.text in ("true", "false"):
                raise self.error(f"expected 'dim' or a set name, found {t.text or 'end of input'!r}")
            if self.dim is None:
                raise self.error("set defined before any 'dim' declaration")
            if t.text in self.sets:
                raise self.error(f"set {t.text!r} is already defined")
            self.i += 1
            self.expect("=")
            formula = self.formula()
            self.expect(";")
            self.sets[t.text] = PolyhedralSet(self.dim, formula)
        return SetDocument(self.sets)

    # -- formulas ----------------------------------------------------------
    def formula(self):
        parts = [self.conjunction()]
        while self.accept("|"):
            parts.append(self.conjunction())
        return disj(*parts)

    def conjunction(self):
        parts = [self.unary()]
        while self.accept("&"):
            parts.append(self.unary())
        return conj(*parts)

    def unary(self):
        if self.accept("!"):
            return neg(self.unary())
        return self.primary()

    def primary(self):
        t = self.tok
        if t.kind == "name" and t.text == "true":
            self.i += 1
            return TRUE
        if t.kind == "name" and t.text == "false":
            self.i += 1
            return FALSE
        if t.kind == "name":
            self.i += 1
            if t.text not in self.sets:
                raise self.error(f"unknown set {t.text!r}", t)
            ref = self.sets[t.text]
            if ref.dim != self.dim:
                raise self.error(f"set {t.text!r} has dimension {ref.dim}, expected {self.dim}", t)
            return ref.formula
        if t.text == "(":
            # either a parenthesized formula or an expression starting a comparison
            start = self.i
            try:
                return self.comparison()
            except ParseError:
                self.i = start
            self.expect("(")
            inner = self.formula()
            self.expect(")")
            return inner
        return self.comparison()

    def comparison(self):
        left = self.expr()
        if self.tok.kind != "rel":
            raise self.error(f"expected a comparison, found {self.tok.text or 'end of input'!r}")
        atoms = []
        while self.tok.kind == "rel":
            rel = self.tok.text
            self.i += 1
            right = self.expr()
            atoms.append(atom((left - right).to_form(self.dim), rel))
            left = right
        return conj(*atoms)

    # -- affine expressions ------------------------------------------------
    def expr(self) -> _Affine:
        sign = Fraction(1)
        if self.accept("-"):
            sign = Fraction(-1)
        else:
            self.accept("+")
        total = self.term().scale(sign)
        while True:
            if self.accept("+"):
                total = total + self.term()
            elif self.accept("-"):
                total = total - self.term()
            else:
                return total

    def term(self) -> _Affine:
        value = self.factor()
        while True:
            t = self.tok
            if self.accept("*"):
                rhs = self.factor()
                if value.is_constant():
                    value = rhs.scale(value.const)
                elif rhs.is_constant():
                    value = value.scale(rhs.const)
                else:
                    raise self.error("product of two variables is not linear", t)
            elif self.accept("/"):
                rhs = self.factor()
                if not rhs.is_constant():
                    raise self.error("division by a variable is not linear", t)
                if rhs.const == 0:
                    raise self.error("division by zero", t)
                value = value.scale(1 / rhs.const)
            elif t.kind == "var" and value.is_constant():
                value = self.factor().scale(value.const)      # implicit product: 2x1
            else:
                return value

    def factor(self) -> _Affine:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return _Affine(const=Fraction(t.text))
        if t.kind == "var":
            self.i += 1
            index = int(t.text[1:])
            if self.dim is None:
                raise self.error("variable used before any 'dim' declaration", t)
            if not 1 <= index <= self.dim:
                raise self.error(f"variable {t.text} out of range for dimension {self.dim}", t)
            return _Affine({index - 1: Fraction(1)})
        if self.accept("-"):
            return -self.factor()
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error(f"expected a number, variable or '(', found {t.text or 'end of input'!r}")


def parse_document(text: str) -> SetDocument:
    """Parse a set document; errors carry line and column."""
    return _Parser(text).document()


def parse_formula(text: str, dim: int, sets: Optional[Dict[str, PolyhedralSet]] = None) -> PolyhedralSet:
    """Parse a single formula in ``R^dim``."""
    p = _Parser(text, sets, dim)
    f = p.formula()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after formula")
    return PolyhedralSet(dim, f)


def format_document(doc: SetDocument) -> str:
    """Render a document that parses back to the same sets."""
    out = []
    dim = None
    for name, S in doc.sets.items():
        if S.dim != dim:
            dim = S.dim
            out.append(f"dim {dim};")
        out.append(f"{name} = {S.formula};")
    return "\n".join(out) + "\n"

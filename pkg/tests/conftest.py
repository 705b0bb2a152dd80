"""Shared generators for randomized tests."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from eulermeasure.combinat import Graph
from eulermeasure.polyset import (
    CanonicalLine, LinearForm, OpenInterval, Point, PolyhedralSet, atom, conj, disj, neg,
    partition_line,
)

settings.register_profile(
    "exact", max_examples=100, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("exact")

RELS = ("=", "!=", "<", "<=", ">", ">=")

small_rationals = st.builds(Fraction, st.integers(-4, 4), st.sampled_from([1, 2]))


@st.composite
def linear_forms(draw, d):
    coeffs = draw(st.lists(st.integers(-2, 2), min_size=d, max_size=d).filter(any))
    return LinearForm(tuple(coeffs), draw(small_rationals))


@st.composite
def formulas(draw, forms, depth=3):
    if depth == 0 or draw(st.integers(0, 9)) < 3:
        return atom(draw(st.sampled_from(forms)), draw(st.sampled_from(RELS)))
    kind = draw(st.sampled_from(("and", "or", "not")))
    if kind == "not":
        return neg(draw(formulas(forms, depth - 1)))
    args = [draw(formulas(forms, depth - 1)) for _ in range(draw(st.integers(2, 3)))]
    return conj(*args) if kind == "and" else disj(*args)


@st.composite
def polysets(draw, dim=None, max_dim=3, max_hyps=5, depth=3):
    d = dim if dim is not None else draw(st.integers(1, max_dim))
    forms = draw(st.lists(linear_forms(d), min_size=1, max_size=max_hyps))
    return PolyhedralSet(d, draw(formulas(forms, depth)))


@st.composite
def probes(draw, d):
    return tuple(draw(st.lists(small_rationals, min_size=d, max_size=d)))


# plain-random versions, for loops that want a fixed seed and a count

def rand_form(rng, d):
    while True:
        c = tuple(rng.randint(-2, 2) for _ in range(d))
        if any(c):
            return LinearForm(c, Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2])))


def rand_formula(rng, forms, depth=3):
    if depth == 0 or rng.random() < 0.3:
        return atom(rng.choice(forms), rng.choice(RELS))
    kind = rng.choice(("and", "or", "not"))
    if kind == "not":
        return neg(rand_formula(rng, forms, depth - 1))
    args = [rand_formula(rng, forms, depth - 1) for _ in range(rng.randint(2, 3))]
    return conj(*args) if kind == "and" else disj(*args)


def rand_set(rng, d=None, n_hyps=None):
    d = d or rng.randint(1, 3)
    n_hyps = n_hyps or rng.randint(1, 6)
    forms = [rand_form(rng, d) for _ in range(n_hyps)]
    return PolyhedralSet(d, rand_formula(rng, forms))


def rand_line(rng, max_breaks=5, lo=-6, hi=6):
    """Random canonical subset of R: a random selection of pieces of a random partition."""
    breaks = sorted({Fraction(rng.randint(2 * lo, 2 * hi), 2) for _ in range(rng.randint(0, max_breaks))})
    pieces = [p for p in partition_line(breaks) if rng.random() < 0.5]
    return _coarsen(pieces)


def _coarsen(pieces):
    """Merge (a,b) {b} (b,c) runs so the result is in canonical form."""
    out = []
    for p in pieces:
        out.append(p)
        while (len(out) >= 3 and isinstance(out[-1], OpenInterval) and isinstance(out[-2], Point)
               and isinstance(out[-3], OpenInterval) and out[-3].hi == out[-2].c == out[-1].lo):
            right, _, left = out.pop(), out.pop(), out.pop()
            out.append(OpenInterval(left.lo, right.hi))
    return CanonicalLine(tuple(out))


# ---------------------------------------------------------------------------
# independent oracle: unions of grid boxes
# ---------------------------------------------------------------------------

def piece_formula(piece, d, axis):
    def coord(shift):
        coeffs = [0] * d
        coeffs[axis] = 1
        return LinearForm(tuple(coeffs), -shift)
    if isinstance(piece, Point):
        return atom(coord(piece.c), "=")
    parts = []
    if piece.lo is not None:
        parts.append(atom(coord(piece.lo), ">"))
    if piece.hi is not None:
        parts.append(atom(coord(piece.hi), "<"))
    return conj(*parts)


def rand_grid_set(rng, d, max_breaks=2, density=0.5):
    """A union of grid boxes with its Euler measure computed box by box.

    Boxes are products of points and open intervals, so each contributes
    ``(-1)**(number of interval factors)``.
    """
    axes = []
    for _ in range(d):
        breaks = sorted({Fraction(rng.randint(-4, 4), rng.choice([1, 2])) for _ in range(rng.randint(0, max_breaks))})
        axes.append(partition_line(breaks))
    boxes, chi = [], 0
    for cell in itertools.product(*axes):
        if rng.random() < density:
            boxes.append(conj(*(piece_formula(p, d, i) for i, p in enumerate(cell))))
            chi += (-1) ** sum(isinstance(p, OpenInterval) for p in cell)
    return PolyhedralSet(d, disj(*boxes)), chi


def graph_classes(n):
    """One representative per isomorphism class of graphs on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    perms = list(itertools.permutations(range(n)))
    seen, out = set(), []
    for mask in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
        canon = min(tuple(sorted(tuple(sorted((pi[u], pi[v]))) for u, v in edges)) for pi in perms)
        if canon not in seen:
            seen.add(canon)
            out.append(Graph(n, edges))
    return out


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, in criterion order."""
    lines = []
    for reports in terminalreporter.stats.values():
        for rep in reports:
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and getattr(rep, "when", None) == "call":
                verdict = "PASS" if rep.passed else "FAIL"
                lines.append((props["criterion"], f"criterion {props['criterion']:>2}: {verdict}  {props.get('title', '')}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, text in sorted(lines):
            terminalreporter.write_line(text)

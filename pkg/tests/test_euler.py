from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eulermeasure import euler
from eulermeasure.errors import MethodDisagreement, PartitionError
from eulermeasure.euler import (
    ConstructibleFunction, IsoClass, arrangement_decompose, chi_line, critical_values, dimension,
    euler_integral, euler_integral_line, euler_measure, euler_measure_cells, euler_measure_fiber,
    fubini_integral, is_empty, iso_classify, polyhedrally_isomorphic,
)
from eulermeasure.polyset import (
    CanonicalLine, LinearForm, OpenInterval, Point, PolyhedralSet, atom, conj,
    partition_line, sample_point,
)

from conftest import polysets, rand_grid_set, rand_set

F = Fraction
half = F(1, 2)


def interval(lo, hi, lo_closed=False, hi_closed=False):
    return PolyhedralSet.interval(lo, hi, lo_closed, hi_closed)


def xy():
    return LinearForm((1, 0)), LinearForm((0, 1)), LinearForm((0, 0), 1)


def check_set():
    box = interval(0, 3, True, True)
    return box * box - interval(1, 2) * interval(1, 2)


def triangle_with_vertices():
    x, y, _ = xy()
    interior = PolyhedralSet(2, conj(atom(x, ">"), atom(y, ">"), atom(LinearForm((1, 1), -1), "<")))
    return interior | PolyhedralSet.point((0, 0)) | PolyhedralSet.point((0, 1)) | PolyhedralSet.point((1, 0))


BOTH = ("fiber", "cells")


# ---------------------------------------------------------------------------
# dimension one
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("S, expected", [
    (interval(0, 1, True, True), 1),
    (interval(0, 1, True, False), 0),
    (interval(0, 1), -1),
    (PolyhedralSet.point((F(7, 3),)), 1),
    (interval(2, None), -1),
    (interval(None, 2, hi_closed=True), 0),
    (PolyhedralSet.universe(1), -1),
    (PolyhedralSet.empty(1), 0),
])
def test_chi_line_table(S, expected):
    for m in BOTH:
        assert euler_measure(S, m) == expected


def test_chi_line_pieces():
    assert chi_line(CanonicalLine.of(5)) == 1
    assert chi_line(CanonicalLine.of((0, 1))) == -1
    assert chi_line(CanonicalLine.of((0, 1), 1)) == 0


def test_euler_integral_line_examples():
    worked = [(OpenInterval(None, 0), 0), (Point(0), 2), (OpenInterval(0, 1), -1), (Point(1), 1),
               (OpenInterval(1, None), 0)]
    assert euler_integral_line(worked) == 4
    assert euler_integral_line([(p, 1) for p in partition_line([0])]) == -1
    assert euler_integral_line([(p, 0) for p in partition_line([0, 1])]) == 0
    with pytest.raises(PartitionError):
        euler_integral_line([(OpenInterval(None, 0), 1), (OpenInterval(0, None), 1)])
    with pytest.raises(PartitionError):
        euler_integral_line([(OpenInterval(None, 0), 1), (Point(0), 1)])


def test_refinement_invariance(rng):
    for _ in range(200):
        breaks = sorted({F(rng.randint(-8, 8), 2) for _ in range(rng.randint(0, 5))})
        pairs = [(p, rng.randint(-3, 3)) for p in partition_line(breaks)]
        base = euler_integral_line(pairs)
        i = rng.randrange(0, len(pairs), 2)          # an interval piece
        piece, v = pairs[i]
        m = sample_point(piece)
        lo = OpenInterval(piece.lo, m)
        hi = OpenInterval(m, piece.hi)
        refined = pairs[:i] + [(lo, v), (Point(m), v), (hi, v)] + pairs[i + 1:]
        assert euler_integral_line(refined) == base


# ---------------------------------------------------------------------------
# fibering and cells on the worked examples
# ---------------------------------------------------------------------------

def test_critical_values_examples():
    x, y, one = xy()
    wedge = PolyhedralSet(2, conj(atom(y, ">"), atom(y - x, "<"), atom(x - one, "<")))
    assert critical_values(wedge) == [0, 1]
    assert critical_values(interval(0, 1) * interval(0, 1)) == [0, 1]
    assert critical_values(PolyhedralSet.universe(3)) == []


def test_check_set():
    S = check_set()
    for m in BOTH:
        assert euler_measure(S, m) == 0
    assert list(arrangement_decompose(S).f_polynomial()) == [16, 24, 8]


def test_triangle_with_vertices():
    A = triangle_with_vertices()
    for m in BOTH:
        assert euler_measure(A, m) == 4
    dec = arrangement_decompose(A)
    assert list(dec.f_polynomial()) == [3, 0, 1]
    assert dec.f_polynomial()(-1) == 4


def test_open_square():
    sq = interval(0, 1) * interval(0, 1)
    for m in BOTH:
        assert euler_measure(sq, m) == 1
    assert list(arrangement_decompose(sq).f_polynomial()) == [0, 0, 1]


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_whole_space(d):
    for m in BOTH:
        assert euler_measure(PolyhedralSet.universe(d), m) == (-1) ** d
        assert euler_measure(PolyhedralSet.empty(d), m) == 0


def test_unbounded_cells_counted():
    x, y, _ = xy()
    half_plane = PolyhedralSet(2, atom(x, ">"))
    closed_half_plane = PolyhedralSet(2, atom(x, ">="))
    for m in BOTH:
        assert euler_measure(half_plane, m) == 1
        assert euler_measure(closed_half_plane, m) == 0


def test_method_both_detects_disagreement(monkeypatch):
    monkeypatch.setattr(euler, "euler_measure_cells", lambda S: 99)
    with pytest.raises(MethodDisagreement):
        euler.euler_measure(interval(0, 1), "both")
    with pytest.raises(ValueError):
        euler.euler_measure(interval(0, 1), "guess")


def test_cells_are_witnessed():
    S = check_set()
    dec = arrangement_decompose(S)
    assert all(S.contains(c.witness) for c in dec.cells)
    assert len({c.sign_vector for c in dec.cells}) == len(dec.cells)
    assert all(c.bounded for c in dec.cells)
    assert not any(c.bounded for c in arrangement_decompose(PolyhedralSet.universe(2)).cells)


def test_dimension_examples():
    assert dimension(interval(0, 1) * interval(0, 1)) == 2
    assert dimension(triangle_with_vertices()) == 2
    assert dimension(PolyhedralSet.empty(2)) == -1
    assert dimension(PolyhedralSet.point((1, 2))) == 0
    assert is_empty(interval(0, 1) & interval(2, 3))


def test_iso_classify_examples():
    two = interval(0, 1) | interval(2, 3)
    split = interval(0, 1) - PolyhedralSet.point((half,))
    assert iso_classify(two) == IsoClass(1, -2, True) == iso_classify(split)
    assert polyhedrally_isomorphic(two, split)
    closed = interval(0, 1, True, True)
    assert iso_classify(closed) == IsoClass(1, 1, True)
    assert not polyhedrally_isomorphic(closed, interval(0, 1))
    assert iso_classify(PolyhedralSet.empty(2)) == IsoClass(-1, 0, True)
    # unbounded sets are never declared isomorphic, even to themselves
    assert not polyhedrally_isomorphic(interval(0, None), interval(0, None))


# ---------------------------------------------------------------------------
# integration
# ---------------------------------------------------------------------------

def test_indicator_integral():
    A = check_set()
    assert euler_integral(ConstructibleFunction.indicator(A)) == euler_measure(A)


def test_triangle_cross_section_integral():
    A = triangle_with_vertices()
    # fiber over the first coordinate x: {y : (x, y) in A}
    by_x = A.permute([1, 0])
    expected = {F(-1): 0, F(0): 2, half: -1, F(1): 1, F(2): 0}
    for x, value in expected.items():
        assert euler_measure_fiber(by_x.substitute_last(x)) == value
    pairs = [(p, euler_measure_fiber(by_x.substitute_last(sample_point(p)))) for p in partition_line([0, 1])]
    assert euler_integral_line(pairs) == 4
    assert fubini_integral(ConstructibleFunction.indicator(A), 0) == 4
    assert fubini_integral(ConstructibleFunction.indicator(A), 1) == 4


def test_constant_function_on_plane():
    f = ConstructibleFunction.from_regions(2, [(5, PolyhedralSet.universe(2))], fill_zero=False)
    assert euler_integral(f) == 5


def test_malformed_functions():
    overlapping = ConstructibleFunction(1, ((1, interval(0, 2)), (2, interval(1, 3)),
                                            (0, PolyhedralSet.universe(1) - interval(0, 3))))
    with pytest.raises(PartitionError):
        euler_integral(overlapping)
    gap = ConstructibleFunction(1, ((1, interval(0, 1)),))
    with pytest.raises(PartitionError):
        euler_integral(gap)


# ---------------------------------------------------------------------------
# randomized properties
# ---------------------------------------------------------------------------

def test_engine_agreement_random(rng):
    for _ in range(500):
        S = rand_set(rng)
        assert euler_measure_fiber(S) == euler_measure_cells(S), str(S)


def test_grid_oracle(rng):
    for _ in range(150):
        S, chi = rand_grid_set(rng, rng.randint(1, 3))
        assert euler_measure_fiber(S) == chi
        assert euler_measure_cells(S) == chi


@given(polysets(dim=2), polysets(dim=2))
def test_additivity(A, B):
    assert euler_measure(A | B) == euler_measure(A) + euler_measure(B) - euler_measure(A & B)
    assert euler_measure(A) == euler_measure(A - B) + euler_measure(A & B)


@given(polysets(max_dim=2, max_hyps=4), polysets(max_dim=1, max_hyps=4))
def test_product_rule(A, B):
    assert euler_measure(A * B) == euler_measure(A) * euler_measure(B)


@given(polysets(dim=3, max_hyps=5), st.permutations(range(3)))
def test_axis_independence(S, perm):
    assert euler_measure_fiber(S.permute(perm)) == euler_measure_fiber(S)


@given(polysets(max_dim=3))
def test_f_polynomial_soundness(S):
    dec = arrangement_decompose(S, bounded=False)
    assert dec.f_polynomial()(-1) == dec.euler_measure() == euler_measure_fiber(S)
    assert all(S.contains(c.witness) for c in dec.cells)


@given(polysets(dim=2, max_hyps=4), polysets(dim=2, max_hyps=4), st.integers(-3, 3), st.integers(-3, 3))
def test_fubini(A, B, a, b):
    f = ConstructibleFunction.from_regions(2, [(a + b, A & B), (a, A - B), (b, B - A)])
    total = euler_integral(f, check=False)
    assert fubini_integral(f, 0) == total
    assert fubini_integral(f, 1) == total
    assert total == a * euler_measure(A) + b * euler_measure(B)

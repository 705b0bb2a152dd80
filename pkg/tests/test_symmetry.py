import cmath
import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given

from eulermeasure.errors import DimensionError
from eulermeasure.euler import euler_measure
from eulermeasure.grammar import parse_document
from eulermeasure.symmetry import (
    AffineMap, CharacterTable, GroupAction, builtin_table, character_multiplicities, fixed_set,
    square_action, trace, triangle_action,
)

from conftest import polysets

F = Fraction

SHAPES = parse_document("""
dim 2;
tri_edges = (x2 = 0 & 0 < x1 & x1 < 1) | (x1 = 0 & 0 < x2 & x2 < 1) | (x1 + x2 = 1 & 0 < x1 & x1 < 1);
tri_vertices = (x1 = 0 & x2 = 0) | (x1 = 1 & x2 = 0) | (x1 = 0 & x2 = 1);
tri_interior = 0 < x1 & 0 < x2 & x1 + x2 < 1;
sq_interior = 0 < x1 & x1 < 1 & 0 < x2 & x2 < 1;
sq_closed = 0 <= x1 & x1 <= 1 & 0 <= x2 & x2 <= 1;
sq_vertices = (x1 = 0 | x1 = 1) & (x2 = 0 | x2 = 1);
sq_edges = sq_closed & !sq_interior & !sq_vertices;
""")

FLIP = AffineMap(((0, 1), (1, 0)), (0, 0))
ROT = AffineMap(((-1, -1), (1, 0)), (1, 0))


def test_affine_map_basics():
    assert ROT((0, 0)) == (1, 0) and ROT((1, 0)) == (0, 1) and ROT((0, 1)) == (0, 0)
    assert (ROT @ ROT @ ROT).is_identity()
    assert (ROT.inverse() @ ROT).is_identity()
    assert ROT.compose(FLIP)((1, 0)) == ROT((0, 1))
    with pytest.raises(DimensionError):
        AffineMap(((1, 0),), (0,))


def test_affine_map_parse():
    g = AffineMap.parse("# rotation\n-1 -1\n1 0\n1 0\n")
    assert g == ROT
    assert AffineMap.parse("1/2\n3") == AffineMap(((F(1, 2),),), (3,))
    with pytest.raises(ValueError):
        AffineMap.parse("1 0\n")


def test_triangle_edge_traces():
    P = SHAPES["tri_edges"]
    assert trace(P, AffineMap.identity(2)) == -3
    assert trace(P, FLIP) == 1
    assert trace(P, ROT) == 0
    fix = fixed_set(P, FLIP)
    assert fix.contains((F(1, 2), F(1, 2))) and not fix.contains((F(1, 4), 0))
    assert euler_measure(fixed_set(P, ROT), "both") == 0


def test_triangle_edges_decompose_over_s3():
    action = triangle_action(SHAPES["tri_edges"])
    assert action.order == 6
    assert action.class_sizes == [1, 3, 2]
    traces = action.class_traces("both")
    assert traces == [-3, 1, 0]
    dec = character_multiplicities([-t for t in traces], builtin_table("S3"))
    assert dec.multiplicities == (0, 1, 1) and dec.is_character


def test_non_character_is_rejected():
    dec = character_multiplicities((0, 1, 0), builtin_table("S3"))
    assert any(m.denominator != 1 for m in dec.multiplicities)
    assert not dec.is_character
    trivial = character_multiplicities((1, 1, 1), builtin_table("S3"))
    assert trivial.multiplicities == (1, 0, 0)
    with pytest.raises(ValueError):
        character_multiplicities((1, 1), builtin_table("S3"))


@pytest.mark.parametrize("name, k, action, expected", [
    ("tri_vertices", 0, triangle_action, [3, 1, 0]),
    ("tri_edges", 1, triangle_action, [-3, 1, 0]),
    ("tri_interior", 2, triangle_action, [1, -1, 1]),
    ("sq_vertices", 0, square_action, [4, 0, 0, 0, 2]),
    ("sq_edges", 1, square_action, [-4, 0, 0, 2, 0]),
    ("sq_interior", 2, square_action, [1, 1, 1, -1, -1]),
])
def test_cell_unions_give_characters(name, k, action, expected):
    act = action(SHAPES[name])
    traces = act.class_traces()
    assert traces == expected
    table = builtin_table("S3" if act.order == 6 else "D4")
    dec = character_multiplicities([(-1) ** k * t for t in traces], table)
    assert dec.is_character, dec


def test_square_edges_multiplicities():
    traces = square_action(SHAPES["sq_edges"]).class_traces()
    dec = character_multiplicities([-t for t in traces], builtin_table("D4"))
    assert dec.multiplicities == (0, 1, 0, 1, 1)


def test_traces_are_class_functions_exhaustively():
    act = triangle_action(SHAPES["tri_edges"])
    index = {g: i for i, g in enumerate(act.elements)}
    cls_of = {i: c for c, members in enumerate(act.conjugacy_classes) for i in members}
    per_class = act.class_traces()
    for g, h in itertools.product(act.elements, repeat=2):
        gh = g @ h
        assert trace(act.target, gh) == per_class[cls_of[index[gh]]]


def test_rotation_subgroups_with_cyclic_tables():
    sq = SHAPES["sq_edges"]
    c4 = GroupAction.generate([AffineMap(((0, -1), (1, 0)), (1, 0))], sq)
    assert c4.class_sizes == [1, 1, 1, 1]
    dec = character_multiplicities([-t for t in c4.class_traces()], builtin_table("C4"))
    assert dec.is_character and dec.multiplicities == (1, 1, 1)   # regular representation
    c3 = GroupAction.generate([ROT], SHAPES["tri_vertices"])
    dec = character_multiplicities(c3.class_traces(), builtin_table("C3"))
    assert dec.is_character and dec.multiplicities == (1, 1)


def test_action_validation():
    with pytest.raises(ValueError):
        triangle_action(SHAPES["sq_edges"])                         # square is not triangle-invariant
    with pytest.raises(ValueError):
        GroupAction([AffineMap.identity(2), FLIP], [[0, 1]], SHAPES["tri_edges"])
    with pytest.raises(ValueError):
        GroupAction([FLIP], [[0]], SHAPES["tri_edges"])             # no identity


@pytest.mark.parametrize("n", range(1, 7))
def test_cyclic_tables_match_complex_characters(n):
    table = builtin_table(f"C{n}")
    assert table.group_order == n
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    for d, row in zip(divisors, table.irreducible_rows):
        # characters x -> w**(a x) whose order is exactly d, summed
        for j in range(n):
            total = sum(cmath.exp(2j * cmath.pi * a * j / n) for a in range(n) if n // gcd(a, n) == d)
            assert abs(total - float(row[j])) < 1e-9


def test_character_table_parse_and_validation():
    t = CharacterTable.parse("1 3 2\n1 1 1\n1 -1 1\n2 0 -1\n")
    assert t == builtin_table("S3")
    c3 = CharacterTable.parse("1 1 1\n1 1 1\n2 -1 -1\norbits: 1 2\n")
    assert c3 == builtin_table("C3")
    with pytest.raises(ValueError):
        CharacterTable.parse("1 3 2\n1 1 1\n1 1 1\n2 0 -1\n")      # not orthonormal
    with pytest.raises(ValueError):
        CharacterTable.parse("1 3 2\n1 1 1\n1 -1 1\n")             # missing a row
    with pytest.raises(KeyError):
        builtin_table("A5")


@given(polysets(dim=2, max_hyps=4))
def test_identity_fixes_everything(P):
    assert euler_measure(fixed_set(P, AffineMap.identity(2))) == euler_measure(P)

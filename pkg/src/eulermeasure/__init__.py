"""Exact Euler measure (combinatorial Euler characteristic) of polyhedral sets.

Sets are Boolean combinations of rational linear (in)equalities.  The measure
is computed by two independent engines, fibering and cell decomposition, and
applied to Euler integration, Euler series of infinite families, counting
identities and traces of symmetries.
"""

from .combinat import (
    Graph, binomial, choose_set, chromatic_polynomial, coloring_set, extended_fibonacci,
    fabulous_chi, finite_subsets_series, pairs_of_subsets_series, polyhedral_subsets_series,
    chi_zero_subsets_coefficients, chi_zero_subsets_series,
)
from .errors import (
    DimensionError, DivergenceError, EulerMeasureError, MethodDisagreement, ParseError,
    PartitionError, PoleError,
)
from .euler import (
    ConstructibleFunction, arrangement_decompose, critical_values, dimension, euler_integral,
    euler_integral_line, euler_measure, fubini_integral, is_empty, iso_classify,
    polyhedrally_isomorphic,
)
from .grammar import SetDocument, format_document, parse_document, parse_formula
from .polyset import (
    CanonicalLine, LinearForm, OpenInterval, Point, PolyhedralSet, atom, canonicalize_line,
    conj, disj, neg,
)
from .series import (
    Polynomial, RationalFunction, SigmaSeries, choose2_transform, mapspace_series,
    prefix_coefficients, regularized_value, sigma_equivalent, subdivide,
)
from .symmetry import (
    AffineMap, CharacterTable, GroupAction, builtin_table, character_multiplicities,
    fixed_set, trace,
)

__version__ = "0.1.0"

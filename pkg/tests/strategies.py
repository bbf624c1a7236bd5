"""Hypothesis strategies for scalars and sparse forms."""
from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from stableforms.exterior import KForm
from stableforms.scalars import Quad

small_fractions = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 7))
nonzero_fractions = small_fractions.filter(lambda x: x != 0)


def quads(d: int = 2):
    return st.builds(lambda a, b: Quad.make(a, b, d), small_fractions, small_fractions)


def forms(degree: int, dim: int = 6, max_terms: int = 6):
    idx = st.sampled_from(list(combinations(range(1, dim + 1), degree)))
    coeffs = st.dictionaries(idx, st.integers(-5, 5).map(Fraction), max_size=max_terms)
    return coeffs.map(lambda c: KForm(degree, dim, c))


vectors = st.lists(st.integers(-4, 4).map(Fraction), min_size=6, max_size=6)

from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

import oracles
from samples import base_presentations, six_dimensional
from stableforms.exterior import KForm, parse_form, wedge
from stableforms.lie import (
    InvalidDegree,
    JacobiFailure,
    PresentationSyntaxError,
    UnboundParameter,
    abelian,
    ce_differential,
    closed_basis,
    cohomology_dims,
    cohomology_report,
    d_rank,
    direct_sum,
    euler_characteristic,
    format_presentation,
    from_strings,
    jacobi_check,
    parse_presentation,
    structural_invariants,
)
from strategies import forms

A41 = from_strings("A4.1", ["24", "34", "0", "0"])
A48 = from_strings("A4.8", ["23", "24", "43", "0"])
A412 = from_strings("A4.12", ["13 + 24", "-14 + 23", "0", "0"])
R2_SOLV = from_strings("r2", ["0", "12"])


def e(*idx, dim=4):
    return KForm.monomial(dim, idx)


def test_differential_examples():
    assert ce_differential(A41, e(1)) == e(2, 4)
    assert ce_differential(A41, e(3, 4)).is_zero()
    g = direct_sum(A41, R2_SOLV)
    assert ce_differential(g, KForm.monomial(6, (6,))) == KForm.monomial(6, (5, 6))
    assert ce_differential(g, KForm.monomial(6, (5,))).is_zero()


def test_direct_sum_layout():
    g = direct_sum(A41, R2_SOLV)
    assert g.dim == 6
    expected = ["24", "34", "0", "0", "0", "56"]
    assert [d for d in g.differentials] == [parse_form(t, 6, 2) for t in expected]
    flat = direct_sum(A41, abelian(2))
    assert flat.differentials[4].is_zero() and flat.differentials[5].is_zero()


def test_jacobi_examples():
    assert jacobi_check(A48)
    assert jacobi_check(abelian(6))
    # d^2 e^1 = d(e^23) = e^13 ^ e^3 - e^2 ^ 0 = 0, similarly for e^2
    g = from_strings("test", ["23", "13", "0"])
    d2 = [ce_differential(g, ce_differential(g, e(i, dim=3))) for i in (1, 2, 3)]
    assert jacobi_check(g) == all(x.is_zero() for x in d2)
    assert jacobi_check(g)
    bad = from_strings("bad", ["23", "12", "0"])
    assert not jacobi_check(bad)


def test_closed_basis_examples():
    assert closed_basis(R2_SOLV, 1) == [KForm.monomial(2, (1,))]
    assert len(closed_basis(abelian(6), 3)) == 20
    z1 = closed_basis(A41, 1)
    assert len(z1) == 2
    span = {tuple(sorted(f.coeffs)) for f in z1}
    assert span == {((3,),), ((4,),)}
    with pytest.raises(InvalidDegree):
        closed_basis(A41, 5)


@pytest.mark.parametrize("g, h", [(A41, (2, 2, 2, 1)), (A412, (2, 1, 0, 0)), (A48, (1, 0, 1, 1))])
def test_cohomology_examples(g, h):
    assert cohomology_dims(g) == h


def test_structural_examples():
    a43 = from_strings("A4.3", ["14", "34", "0", "0"])
    assert structural_invariants(a43).center_dim == 1
    assert structural_invariants(A412).derived_dim == 2
    assert structural_invariants(A41).unimodular
    assert structural_invariants(A41).center_dim == 1  # spanned by e_1


def test_parse_presentation():
    g = parse_presentation("name A4.8\ndim 4\nd 1 = 1*23\nd 2 = 24\nd 3 = -1*34\nd 4 = 0\n")
    assert g.differentials[0] == e(2, 3)
    assert g.differentials[2].coeffs == {(3, 4): Fraction(-1)}
    assert parse_presentation(format_presentation(g)) == g


def test_parse_parameters_and_overrides():
    text = "name A4.2\ndim 4\nparam alpha = 1/3\nd 1 = alpha*14\nd 2 = 24 + 34\nd 3 = 34\nd 4 = 0\n"
    assert parse_presentation(text).differentials[0].coeffs == {(1, 4): Fraction(1, 3)}
    g = parse_presentation(text, {"alpha": Fraction(-2)})
    assert cohomology_dims(g) == (1, 0, 1, 1)
    with pytest.raises(UnboundParameter):
        parse_presentation(text, {"beta": 1})


@pytest.mark.parametrize("text, exc, line", [
    ("name x\ndim 3\nd 1 = 23\nd 2 = 0\n", PresentationSyntaxError, None),
    ("name x\ndim 2\nd 1 = 0\nd 2 = 1?2\n", PresentationSyntaxError, 4),
    ("name x\ndim 2\nd 1 = 0\nd 1 = 0\n", PresentationSyntaxError, 4),
    ("name x\ndim 2\nbracket 1\n", PresentationSyntaxError, 3),
    ("name x\ndim 2\nd 1 = a*12\nd 2 = 0\n", UnboundParameter, 3),
    ("name x\ndim 3\nd 1 = 23\nd 2 = 12\nd 3 = 0\n", JacobiFailure, None),
])
def test_parse_errors(text, exc, line):
    with pytest.raises(exc) as info:
        parse_presentation(text)
    assert info.value.lineno == line


def test_cohomology_report_is_json_ready():
    rep = cohomology_report(A41)
    assert rep == {"algebra": "A4.1", "jacobi": True, "h": [2, 2, 2, 1], "center_dim": 1,
                   "derived_dim": 2, "unimodular": True}


# -- invariants over the whole catalog ------------------------------------------

ALL = base_presentations() + six_dimensional()


@pytest.mark.parametrize("label, g", ALL, ids=[a for a, _ in ALL])
def test_catalog_invariants(label, g):
    n = g.dim
    assert jacobi_check(g)
    h = cohomology_dims(g)
    assert euler_characteristic(h) == 0
    for k in range(n + 1):
        assert len(closed_basis(g, k)) == comb(n, k) - d_rank(g, k)
    inv = structural_invariants(g)
    assert inv.unimodular == (h[-1] == 1)
    assert inv.unimodular == all(t == 0 for t in inv.adjoint_traces)
    if inv.unimodular:
        full = (1,) + h
        assert all(full[k] == full[n - k] for k in range(n + 1))


@pytest.mark.parametrize("label, g", base_presentations(), ids=[a for a, _ in base_presentations()])
def test_differential_matches_koszul_formula(label, g):
    n = g.dim
    br = oracles.brackets_from_differentials([d.coeffs for d in g.differentials], n)
    for k in range(n):
        for idx in combinations(range(1, n + 1), k):
            mono = KForm.monomial(n, idx)
            assert ce_differential(g, mono).coeffs == oracles.koszul_d(br, mono.coeffs, k, n)


@pytest.mark.parametrize("label, g", base_presentations(), ids=[a for a, _ in base_presentations()])
def test_cohomology_matches_float_rank(label, g):
    assert cohomology_dims(g) == oracles.numpy_cohomology([d.coeffs for d in g.differentials], g.dim)


SIX = [g for _, g in six_dimensional()]


@given(st.sampled_from(SIX), forms(2), forms(3))
def test_leibniz_rule(g, f, h):
    lhs = ce_differential(g, wedge(f, h))
    rhs = wedge(ce_differential(g, f), h) + wedge(f, ce_differential(g, h))
    assert lhs == rhs


@given(st.sampled_from(SIX), forms(3))
def test_d_squared_vanishes(g, f):
    assert ce_differential(g, ce_differential(g, f)).is_zero()

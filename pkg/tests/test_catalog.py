from fractions import Fraction

import pytest

from stableforms.catalog import (
    CatalogError,
    ExcludedParameter,
    PairFormatError,
    UnknownAlgebra,
    catalog_instantiate,
    load_catalog,
    parse_pair,
    reproduce,
    summary,
)
from stableforms.catalog.reproduce import pair_report
from stableforms.exterior import parse_form
from stableforms.lie import cohomology_dims, jacobi_check
from stableforms.stable import lambda_invariant, phi_omega

CAT = load_catalog()


def test_instantiate_subcase_point():
    entry = catalog_instantiate("A4.2", {"alpha": Fraction(-2)})
    assert entry.row.id == "A4.2/alpha=-2"
    assert tuple(entry.row.expected["h"]) == (1, 0, 1, 1)
    assert cohomology_dims(entry.presentation) == (1, 0, 1, 1)


def test_instantiate_generic_subcase():
    entry = catalog_instantiate("A4.2", {"alpha": Fraction(1, 3)})
    assert cohomology_dims(entry.presentation) == (1, 0, 0, 0)
    assert entry.row.id == "A4.2/generic"


def test_family_b_with_isomorphism_note():
    entry = catalog_instantiate("B", {"beta": Fraction(2)})
    expected = [parse_form(t, 4, 2) for t in ("2*14 - 24", "14", "-2*34", "0")]
    assert list(entry.presentation.differentials) == expected
    assert any("A4.2" in s and "-2" in s for s in entry.annotations["isomorphisms"])


def test_refined_obstruction_flag():
    entry = catalog_instantiate("A4.5+r2", {"alpha": Fraction(-1, 2), "beta": Fraction(-1, 2)})
    spec = entry.annotations["refined_obstruction"]
    assert spec["pairs"] == [["5", "4"]] and spec["rootd"] == 2


def test_known_center_discrepancy_is_annotated():
    entry = catalog_instantiate("A4.1+r2")
    assert "center_dim" in entry.annotations["known_discrepancies"]


@pytest.mark.parametrize("name, params", [
    ("A4.2", {"alpha": 0}),
    ("A4.2/generic", {"alpha": -2}),
    ("A4.2", {"beta": 1}),
])
def test_excluded_parameters(name, params):
    with pytest.raises(ExcludedParameter):
        catalog_instantiate(name, params)


def test_unknown_algebra():
    with pytest.raises(UnknownAlgebra):
        catalog_instantiate("A9.9")
    with pytest.raises(UnknownAlgebra):
        catalog_instantiate("A4.1++r2")


def test_row_id_composite_names():
    g = catalog_instantiate("A4.2/alpha=-2+r2").presentation
    assert g.dim == 6 and jacobi_check(g)


def test_every_row_sample_instantiates():
    for row in CAT.rows:
        for s in row.sample_dicts:
            entry = CAT.instantiate(row.family, s)
            assert jacobi_check(entry.presentation)


def test_unimodular_flag_matches_top_cohomology():
    for row in CAT.rows:
        for s in row.sample_dicts:
            h = cohomology_dims(CAT.presentation(row.family, s))
            assert row.expected["unimodular"] == (h[-1] == 1), row.id


def test_parse_pair():
    text = "algebra A4.1+r2\nomega = -16 + 25 - 34\nrho = 123\nmetric 11 + 2*13\n"
    pair = parse_pair(text, "t")
    assert pair.algebras == [("A4.1+r2", {})]
    g = pair.expected_gram()
    assert g[0][0] == 1 and g[0][2] == g[2][0] == 1


@pytest.mark.parametrize("text", [
    "omega = 12\nrho = 123\nmetric 11\n",
    "algebra X\nrho = 123\nmetric 11\n",
    "algebra X a\nomega = 12\nrho = 123\nmetric 11\n",
    "algebra X\nomega = 12\nrho = 123\nmetric 123\n",
    "algebra X\nwhat 1\n",
])
def test_parse_pair_errors(text):
    with pytest.raises(PairFormatError):
        parse_pair(text).expected_gram()


def test_printed_a536_rho_needs_halving():
    pair = next(p for p in CAT.examples if p.name == "a536_R")
    raw = pair.rho(scaled=False)
    phi = phi_omega(pair.omega())
    # 16 times the normalized value -4 phi^2, and lambda scales by t^4
    assert lambda_invariant(raw) == -64 * phi * phi
    assert lambda_invariant(pair.rho()) == -4 * phi * phi


@pytest.mark.parametrize("pair_name", ["a519_m1_3_R", "a519_2_m3_R"])
def test_a519_printed_norm_differs_only_in_g55(pair_name):
    pair = next(p for p in CAT.examples if p.name == pair_name)
    (name, params), = pair.algebras
    _, rep, gram_ok = pair_report(CAT, pair, name, params)
    assert rep.verdict and not gram_ok
    expected = pair.expected_gram()
    diffs = {(i, j) for i in range(6) for j in range(6) if rep.gram[i][j] != expected[i][j]}
    assert diffs == {(4, 4)}
    assert rep.gram[4][4] == 4 and expected[4][4] == 2


def test_every_example_pair_is_half_flat():
    for pair in CAT.examples:
        for name, params in pair.algebras:
            _, rep, _ = pair_report(CAT, pair, name, params)
            assert rep.verdict, (pair.name, name, params, rep.flags)


def test_reproduce_fast_scopes():
    rows = reproduce("cohomology")
    assert summary(rows)["FAIL"] == 0
    rows = reproduce("prop-3.3")
    assert summary(rows)["FAIL"] == 0 and len(rows) > 20
    rows = reproduce("theorem-4d")
    assert summary(rows)["FAIL"] == 0
    assert {r.id.rsplit("+", 1)[-1] for r in rows} >= {"r2", "R2"}
    with pytest.raises(ValueError):
        reproduce("nonsense")


def test_catalog_errors_share_a_base():
    assert issubclass(ExcludedParameter, CatalogError)
    assert issubclass(UnknownAlgebra, CatalogError)

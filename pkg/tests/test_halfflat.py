from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from stableforms.catalog import catalog_instantiate, load_catalog
from stableforms.exterior import KForm, parse_form
from stableforms.halfflat import (
    FLAG_NAMES,
    IdentityFails,
    ZeroOneForm,
    generic_closed_forms,
    lambda_polynomial,
    lambda_sign_analysis,
    obstruction_certificate,
    refined_metric_obstruction,
    scan_basis_alphas,
    verify_half_flat,
)
from stableforms.lie import abelian
from stableforms.scalars import Quad, sign_of
from stableforms.stable import lambda_invariant

A41_OMEGA = parse_form("-16 + 25 - 34", 6, 2)
A41_RHO = parse_form("123 - 145 + 156 - 246 + 345 - 2*356", 6, 3)
FLAT_OMEGA = parse_form("12 + 34 + 56", 6, 2)
FLAT_RHO = parse_form("135 - 146 - 236 - 245", 6, 3)


def alg(name, **params):
    return catalog_instantiate(name, {k: Fraction(v) for k, v in params.items()}).presentation


def one(text, rootd=None):
    return parse_form(text, 6, 1, rootd=rootd)


def test_verify_table_pair():
    rep = verify_half_flat(alg("A4.1+r2"), A41_OMEGA, A41_RHO)
    assert rep.verdict
    assert all(rep.flags[k] for k in FLAG_NAMES)
    assert rep.signature == "PositiveDefinite"


def test_verify_perturbed_pair_fails():
    rho = parse_form("123 - 145 + 156 - 246 + 345", 6, 3)
    rep = verify_half_flat(alg("A4.1+r2"), A41_OMEGA, rho)
    assert not rep.verdict
    # the exact recomputation: still closed and |lambda| = 4 phi^2, but lambda = +4
    assert rep.flags["rho_closed"] and rep.flags["normalized"]
    assert rep.lam == 4
    assert not rep.flags["lambda_negative"]
    assert not rep.flags["metric_positive_definite"]


def test_verify_flat_torus():
    assert verify_half_flat(abelian(6), FLAT_OMEGA, FLAT_RHO).verdict


def test_verify_reports_instead_of_raising():
    rep = verify_half_flat(abelian(6), FLAT_OMEGA, parse_form("123", 6, 3))
    assert not rep.verdict
    assert rep.errors
    rep = verify_half_flat(abelian(5), KForm.zero(2, 5), KForm.zero(3, 5))
    assert not rep.verdict and "dimension" in rep.errors[0]


def test_certificate_examples():
    c = obstruction_certificate(alg("A4.3+R2"), one("4"))
    assert c.identically_zero and c.verdict == "identically-zero"
    c = obstruction_certificate(alg("A4.1+r2"), one("4"))
    assert not c.identically_zero and c.witness is not None
    assert c.total_degree == 3
    assert not any(x.identically_zero for x in scan_basis_alphas(abelian(6)))
    with pytest.raises(ZeroOneForm):
        obstruction_certificate(abelian(6), KForm.zero(1, 6))


def test_certificate_json():
    doc = obstruction_certificate(alg("A4.3+R2"), one("4")).to_json()
    assert doc["alpha"] == "e4" and doc["verdict"] == "identically-zero"
    assert "witness" not in doc


def test_refined_obstruction_holds():
    g = alg("A4.5+r2", alpha=Fraction(-1, 2), beta=Fraction(-1, 2))
    target = one("4 + rt*5", rootd=2)
    rep = refined_metric_obstruction(g, [(one("5"), one("4"))], target)
    assert rep.identities_hold
    assert parse_form(rep.to_json()["target"].replace("e", ""), 6, 1, rootd=2) == target


def test_refined_obstruction_fails_on_half_flat_algebra():
    target = one("4 + rt*5", rootd=2)
    with pytest.raises(IdentityFails):
        refined_metric_obstruction(alg("A4.1+r2"), [(one("5"), one("4"))], target)


def test_refined_obstruction_trivial_pair():
    # B(e4, e4) vanishes identically on A4.3+R2, so a = b is consistent
    rep = refined_metric_obstruction(alg("A4.3+R2"), [(one("4"), one("4"))], one("4"))
    assert rep.identities_hold


def test_lambda_sign_examples():
    assert lambda_sign_analysis(alg("A4.7+R2"), samples=200).status == "IdenticallyZero"
    assert lambda_sign_analysis(alg("A4.4+R2"), samples=200).status == "IdenticallyZero"
    res = lambda_sign_analysis(alg("A4.1+r2"), samples=500)
    assert res.status == "IndefiniteWitness"
    g = alg("A4.1+r2")
    assert g.d(res.witness_rho).is_zero()
    assert lambda_invariant(res.witness_rho) == res.witness_lambda
    assert sign_of(res.witness_lambda) < 0


def test_lambda_sampling_is_deterministic():
    g = alg("A4.1+r2")
    a = lambda_sign_analysis(g, samples=300, seed=7).to_json()
    b = lambda_sign_analysis(g, samples=300, seed=7).to_json()
    assert a == b


def test_nonnegative_sampled_on_flat_sum():
    res = lambda_sign_analysis(alg("A4.2+R2", alpha=Fraction(1, 3)), samples=2000)
    assert res.status in ("NonNegativeSampled", "IdenticallyZero")
    assert res.violations == 0


def test_identically_zero_lambda_blocks_verification():
    g = alg("A4.7+R2")
    assert lambda_polynomial(g).is_zero()
    for b in generic_closed_forms(g).z3:
        rep = verify_half_flat(g, FLAT_OMEGA, b)
        assert not rep.flags["lambda_negative"]


def test_certificate_verdict_constant_within_subcase():
    cat = load_catalog()
    row = cat.row("A4.2/generic")
    verdicts = {obstruction_certificate(catalog_instantiate("A4.2+R2", s).presentation, one("4")).identically_zero
                for s in row.sample_dicts}
    assert verdicts == {True}


# -- independent evaluation of the polynomial pairing -------------------------

SIX = [alg(n) for n in ("A4.1+r2", "A4.3+R2", "A4.8+r2", "A5.7+R", "A5.36+R")]


def _dense_pairing(rho, sigma, a, b):
    jb = {}
    for i in range(6):
        v = [1 if j == i else 0 for j in range(6)]
        t = oracles.dense_wedge(oracles.dense_interior(v, rho, 3, 6), 2, rho, 3, 6)
        top = oracles.dense_wedge(b, 1, t, 5, 6).get((1, 2, 3, 4, 5, 6), Fraction(0))
        if top:
            jb[(i + 1,)] = top
    full = oracles.dense_wedge(oracles.dense_wedge(a, 1, jb, 1, 6), 2, sigma, 4, 6)
    return full.get((1, 2, 3, 4, 5, 6), Fraction(0))


@given(st.sampled_from(SIX), st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 6))
def test_pairing_matches_dense_evaluation(g, seed, i, j):
    gen = generic_closed_forms(g)
    rng = np.random.default_rng(seed)
    point = [Fraction(int(x), int(y)) for x, y in zip(rng.integers(-5, 6, len(gen.variables)),
                                                        rng.integers(1, 4, len(gen.variables)))]
    rho = {}
    for b, x in zip(gen.z3, point):
        for idx, c in b.coeffs.items():
            rho[idx] = rho.get(idx, 0) + x * c
    sigma = {}
    for b, x in zip(gen.z4, point[len(gen.z3):]):
        for idx, c in b.coeffs.items():
            sigma[idx] = sigma.get(idx, 0) + x * c
    a, b = {(i,): Fraction(1)}, {(j,): Fraction(1)}
    poly = gen.pairing(KForm(1, 6, a), KForm(1, 6, b))
    exact = poly.evaluate(point) if hasattr(poly, "evaluate") else poly
    assert exact == _dense_pairing(rho, sigma, a, b)


def test_pairing_is_bilinear_over_radicand():
    g = alg("A4.5+r2", alpha=Fraction(-1, 2), beta=Fraction(-1, 2))
    gen = generic_closed_forms(g)
    e4, e5, rt = one("4"), one("5"), Quad.root(2)
    lhs = gen.pairing(one("4 + rt*5", rootd=2), one("4 + rt*5", rootd=2))
    rhs = (gen.pairing(e4, e4) + (gen.pairing(e4, e5) + gen.pairing(e5, e4)) * rt
           + gen.pairing(e5, e5) * 2)
    assert (lhs - rhs).is_zero()

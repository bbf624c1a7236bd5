"""Half-flat verification, obstruction certificates and lambda-sign analysis.

The general closed three-form is written as ``rho = sum r_a b_a`` over an
exact basis ``b_a`` of Z^3 and the general closed four-form as
``sigma = sum s_c c_c`` over a basis of Z^4, with the ``r`` and ``s`` as
polynomial indeterminates.  Obstructions are identities between the
resulting polynomials, decided by exact coefficient comparison.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .exterior import KForm, basis_vector, format_form, interior, kappa, wedge, wedge_all
from .lie import LieAlgebraPresentation, closed_basis, jacobi_check
from .scalars import Poly, Quad, format_scalar, is_zero, sign_of
from .stable import (
    StableFormError,
    check_compatible,
    check_normalized,
    definiteness,
    lambda_invariant,
    metric_gram,
    phi_omega,
)

log = logging.getLogger(__name__)


class ZeroOneForm(ValueError):
    pass


class IdentityFails(ArithmeticError):
    def __init__(self, message: str, witness: Optional[str] = None):
        super().__init__(message)
        self.witness = witness


# -- verification -------------------------------------------------------------

FLAG_NAMES = (
    "rho_closed",
    "omega2_closed",
    "compatible",
    "normalized",
    "lambda_negative",
    "metric_positive_definite",
)


@dataclass
class VerificationReport:
    algebra: str
    flags: Dict[str, bool]
    gram: Optional[List[List[object]]] = None
    lam: object = None
    phi_omega: object = None
    signature: Optional[str] = None
    errors: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(self.flags.get(k, False) for k in FLAG_NAMES)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "flags": {k: self.flags.get(k, False) for k in FLAG_NAMES},
            "lambda": None if self.lam is None else format_scalar(self.lam),
            "phi_omega": None if self.phi_omega is None else format_scalar(self.phi_omega),
            "signature": self.signature,
            "gram": None if self.gram is None else [[format_scalar(x) for x in r] for r in self.gram],
            "verdict": self.verdict,
            "errors": list(self.errors),
        }


def verify_half_flat(g: LieAlgebraPresentation, omega: KForm, rho: KForm) -> VerificationReport:
    """Check every defining condition exactly; failures land in the report."""
    flags = {k: False for k in FLAG_NAMES}
    rep = VerificationReport(g.name, flags)
    if g.dim != 6:
        rep.errors.append(f"algebra has dimension {g.dim}, expected 6")
        return rep
    if not jacobi_check(g):
        rep.errors.append("Jacobi identity fails")
        return rep
    flags["rho_closed"] = g.d(rho).is_zero()
    flags["omega2_closed"] = g.d(wedge(omega, omega)).is_zero()
    flags["compatible"] = check_compatible(omega, rho)
    rep.lam = lambda_invariant(rho)
    rep.phi_omega = phi_omega(omega)
    flags["lambda_negative"] = sign_of(rep.lam) < 0
    try:
        flags["normalized"] = check_normalized(omega, rho)
    except StableFormError as exc:
        rep.errors.append(f"normalization: {exc}")
    if flags["normalized"] and flags["compatible"]:
        try:
            rep.gram = metric_gram(omega, rho)
            d = definiteness(rep.gram)
            rep.signature = str(d)
            flags["metric_positive_definite"] = d.positive_definite
        except (StableFormError, ArithmeticError) as exc:
            rep.errors.append(f"metric: {exc}")
    return rep


# -- generic closed forms -------------------------------------------------------

@dataclass(frozen=True)
class GenericClosedForms:
    """rho = sum r_a b_a over Z^3 and sigma = sum s_c c_c over Z^4."""

    algebra: LieAlgebraPresentation
    z3: Tuple[KForm, ...]
    z4: Tuple[KForm, ...]
    variables: Tuple[str, ...]
    rho: KForm
    sigma: KForm
    # T_i = (e_i _| rho) ^ rho, quadratic in r
    t_forms: Tuple[KForm, ...]

    @property
    def r_names(self) -> Tuple[str, ...]:
        return self.variables[: len(self.z3)]

    @property
    def s_names(self) -> Tuple[str, ...]:
        return self.variables[len(self.z3):]

    def k_endo(self) -> List[List[Poly]]:
        cols = [kappa(t) for t in self.t_forms]
        return [[cols[i][j] for i in range(6)] for j in range(6)]

    def j_tilde(self, alpha: KForm) -> KForm:
        comps = [wedge(alpha, t).top() for t in self.t_forms]
        return KForm.one_form(comps)

    def pairing(self, a: KForm, b: KForm):
        """Polynomial coefficient of a ^ J~*_rho b ^ sigma."""
        return wedge_all(a, self.j_tilde(b), self.sigma).top()


def _generic_form(basis: Sequence[KForm], gens: Sequence[Poly], degree: int) -> KForm:
    acc: Dict[Tuple[int, ...], Poly] = {}
    for b, x in zip(basis, gens):
        for idx, c in b.coeffs.items():
            acc[idx] = acc[idx] + x * c if idx in acc else x * c
    return KForm(degree, 6, acc)


@lru_cache(maxsize=256)
def generic_closed_forms(g: LieAlgebraPresentation) -> GenericClosedForms:
    if g.dim != 6:
        raise ValueError("generic closed forms are built on six-dimensional algebras")
    if not jacobi_check(g):
        raise ValueError(f"{g.name}: Jacobi identity fails")
    z3 = tuple(closed_basis(g, 3))
    z4 = tuple(closed_basis(g, 4))
    names = tuple(f"r{a + 1}" for a in range(len(z3))) + tuple(f"s{c + 1}" for c in range(len(z4)))
    gens = Poly.gens(names)
    rho = _generic_form(z3, gens[: len(z3)], 3)
    sigma = _generic_form(z4, gens[len(z3):], 4)
    t_forms = tuple(wedge(interior(basis_vector(6, i), rho), rho) for i in range(1, 7))
    return GenericClosedForms(g, z3, z4, names, rho, sigma, t_forms)


# -- obstruction certificate ----------------------------------------------------

@dataclass
class ObstructionCertificate:
    algebra: str
    alpha: KForm
    dim_z3: int
    dim_z4: int
    identically_zero: bool
    witness: Optional[Tuple[str, str]] = None  # (monomial, coefficient)
    total_degree: int = -1

    @property
    def verdict(self) -> str:
        return "identically-zero" if self.identically_zero else "non-zero"

    def to_json(self) -> dict:
        out = {
            "algebra": self.algebra,
            "alpha": format_form(self.alpha, "e"),
            "dimZ3": self.dim_z3,
            "dimZ4": self.dim_z4,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            out["witness"] = {"monomial": self.witness[0], "coefficient": self.witness[1]}
        return out


def _monomial_str(p: Poly, exp) -> str:
    return "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(p.variables, exp) if k) or "1"


def obstruction_polynomial(g: LieAlgebraPresentation, alpha: KForm) -> Poly:
    gen = generic_closed_forms(g)
    return gen.pairing(alpha, alpha)


def obstruction_certificate(g: LieAlgebraPresentation, alpha: KForm) -> ObstructionCertificate:
    """Test alpha ^ J~*_rho alpha ^ sigma == 0 over all closed rho, sigma.

    An identically-zero verdict proves that no half-flat SU(3)-structure
    exists; a non-zero verdict proves nothing.
    """
    if alpha.degree != 1 or alpha.dim != 6:
        raise ValueError("alpha must be a one-form on R^6")
    if alpha.is_zero():
        raise ZeroOneForm("alpha must be non-zero")
    gen = generic_closed_forms(g)
    p = gen.pairing(alpha, alpha)
    cert = ObstructionCertificate(g.name, alpha, len(gen.z3), len(gen.z4), p.is_zero() if isinstance(p, Poly) else is_zero(p))
    if isinstance(p, Poly) and not p.is_zero():
        assert p.degree_in(gen.r_names) == 2 and p.degree_in(gen.s_names) == 1, "unexpected degrees"
        cert.total_degree = p.total_degree()
        exp, coeff = p.sorted_terms()[0]
        cert.witness = (_monomial_str(p, exp), format_scalar(coeff))
    return cert


def scan_basis_alphas(g: LieAlgebraPresentation) -> List[ObstructionCertificate]:
    return [obstruction_certificate(g, KForm.monomial(6, (i,))) for i in range(1, 7)]


# -- refined metric obstruction -------------------------------------------------

@dataclass
class RefinedObstructionReport:
    algebra: str
    pairs: List[Tuple[str, str]]
    target: str
    identities_hold: bool
    conclusion: str

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "pairs": [list(p) for p in self.pairs],
            "target": self.target,
            "identities_hold": self.identities_hold,
            "conclusion": self.conclusion,
        }


def refined_metric_obstruction(g: LieAlgebraPresentation, pairs: Sequence[Tuple[KForm, KForm]],
                               target: KForm) -> RefinedObstructionReport:
    """Verify B(a,b) = -B(b,a) = B(t,t) for B(x,y) = x ^ J~*_rho y ^ sigma.

    With sigma = omega^2/2 the pairing is a positive multiple of the induced
    metric on one-forms, so the chain forces g(a,b) = 0 = g(t,t): the target
    would be a null vector.  Raises :class:`IdentityFails` otherwise.
    """
    gen = generic_closed_forms(g)
    btt = gen.pairing(target, target)
    for a, b in pairs:
        bab = gen.pairing(a, b)
        bba = gen.pairing(b, a)
        if not is_zero(bab + bba):
            raise IdentityFails(f"B({format_form(a, 'e')},{format_form(b, 'e')}) != -B({format_form(b, 'e')},{format_form(a, 'e')})",
                                str(bab + bba))
        if not is_zero(bab - btt):
            raise IdentityFails(f"B({format_form(a, 'e')},{format_form(b, 'e')}) != B(t,t) for t = {format_form(target, 'e')}",
                                str(bab - btt))
    return RefinedObstructionReport(
        g.name,
        [(format_form(a, "e"), format_form(b, "e")) for a, b in pairs],
        format_form(target, "e"),
        True,
        f"g({format_form(target, 'e')}, {format_form(target, 'e')}) = 0 for every half-flat pair: "
        "the target would be a null vector, so no half-flat SU(3)-structure exists",
    )


# -- lambda-sign analysis -------------------------------------------------------

@lru_cache(maxsize=256)
def lambda_polynomial(g: LieAlgebraPresentation) -> Poly:
    """lambda(rho) for the general closed three-form, quartic in the r's."""
    gen = generic_closed_forms(g)
    k = gen.k_endo()
    tr = sum((k[i][j] * k[j][i] for i in range(6) for j in range(6)), Poly(gen.variables))
    return tr / 6


@dataclass
class LambdaSignResult:
    algebra: str
    status: str  # IdenticallyZero | NonNegativeSampled | IndefiniteWitness
    samples: int
    seed: int
    violations: int = 0
    exact_rechecks: int = 0
    witness_rho: Optional[KForm] = None
    witness_lambda: object = None

    @property
    def label(self) -> str:
        if self.status == "NonNegativeSampled":
            return f"consistent with lambda >= 0 ({self.samples} samples)"
        if self.status == "IdenticallyZero":
            return "lambda = 0 for every closed three-form"
        return "closed three-form with lambda < 0 found"

    def to_json(self) -> dict:
        out = {
            "algebra": self.algebra,
            "status": self.status,
            "samples": self.samples,
            "seed": self.seed,
            "violations": self.violations,
        }
        if self.witness_rho is not None:
            out["witness"] = {"rho": format_form(self.witness_rho), "lambda": format_scalar(self.witness_lambda)}
        return out


_SAMPLE_VALUES = np.array([v for v in range(-20, 21) if v != 0], dtype=np.int64)


def sample_points(count: int, dim: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Numerators and denominators uniform in [-20, 20] without 0."""
    rng = np.random.default_rng(seed)
    num = rng.choice(_SAMPLE_VALUES, size=(count, dim))
    den = rng.choice(_SAMPLE_VALUES, size=(count, dim))
    return num, den


def _term_tables(p: Poly, nvars: int):
    """Variable index lists (padded with ``nvars``) and coefficients per term."""
    exps = list(p.terms)
    deg = max(sum(e[:nvars]) for e in exps)
    idx = np.full((len(exps), deg), nvars, dtype=np.int64)
    for t, e in enumerate(exps):
        slots = [v for v in range(nvars) for _ in range(e[v])]
        idx[t, : len(slots)] = slots
    coeffs = [p.terms[e] for e in exps]
    return idx, coeffs


def lambda_sign_analysis(g: LieAlgebraPresentation, samples: int = 10000, seed: int = 0,
                         chunk: int = 2048) -> LambdaSignResult:
    """Decide lambda == 0 exactly, else look for closed rho with lambda < 0.

    Samples are screened in floating point with a rigorous error bound:
    ``|fl(lambda) - lambda| <= (T + 12) * 2**-52 * sum|terms|`` for ``T``
    terms of degree <= 4.  Samples inside the bound are re-evaluated
    exactly, and any negative value is confirmed exactly before it is
    reported, so every verdict is exact.
    """
    lam = lambda_polynomial(g)
    gen = generic_closed_forms(g)
    m = len(gen.z3)
    res = LambdaSignResult(g.name, "IdenticallyZero", samples, seed)
    if lam.is_zero():
        return res
    res.status = "NonNegativeSampled"
    if any(isinstance(c, Quad) for c in lam.terms.values()):
        raise ValueError("sampling is implemented for rational lambda polynomials")
    idx, coeffs = _term_tables(lam, m)
    cf = np.array([float(c) for c in coeffs])
    abs_cf = np.abs(cf)
    n_terms = len(coeffs)
    eps = (n_terms + 12) * 2.0 ** -52
    num, den = sample_points(samples, m, seed)
    zeros_r = (0,) * len(gen.s_names)
    first_negative = None
    for start in range(0, samples, chunk):
        nu, de = num[start:start + chunk], den[start:start + chunk]
        vals = np.hstack([nu / de, np.ones((len(nu), 1))])
        prod = np.ones((len(nu), n_terms))
        for col in range(idx.shape[1]):
            prod *= vals[:, idx[:, col]]
        approx = prod @ cf
        bound = eps * (np.abs(prod) @ abs_cf)
        unsure = np.flatnonzero(np.abs(approx) <= bound)
        neg = np.flatnonzero(approx < -bound)
        for k in sorted(set(unsure.tolist()) | set(neg.tolist())):
            point = [Fraction(int(a), int(b)) for a, b in zip(nu[k], de[k])]
            exact = lam.evaluate(point + [Fraction(0)] * len(zeros_r))
            res.exact_rechecks += 1
            if sign_of(exact) < 0:
                res.violations += 1
                if first_negative is None:
                    first_negative = (point, exact)
    if first_negative is not None:
        point, exact = first_negative
        res.status = "IndefiniteWitness"
        res.witness_rho = sum((b.scale(x) for b, x in zip(gen.z3, point)), KForm.zero(3, 6))
        res.witness_lambda = exact
    return res

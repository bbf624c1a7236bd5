"""Stable forms in dimension six.

For a three-form rho, ``K_rho(v) = kappa((v _| rho) ^ rho)`` is an
endomorphism (relative to nu) with ``K_rho^2 = lambda(rho) Id``.  A
normalized pair has ``phi(rho) = 2 phi(omega)``; the square root of
``|lambda|`` is therefore never taken directly: every use of ``phi(rho)``
goes through ``2 phi(omega)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .exterior import DimensionMismatch, KForm, basis_vector, interior, kappa, pullback, wedge, wedge_all
from .scalars import is_zero, sign_of

Matrix = List[List[object]]


class StableFormError(ValueError):
    pass


class NonStable(StableFormError):
    pass


class NotNormalized(StableFormError):
    pass


class NotCompatible(StableFormError):
    pass


class SquareRootUnavailable(StableFormError):
    pass


def _check6(f: KForm, degree: int):
    if f.dim != 6:
        raise DimensionMismatch(f"stable forms are implemented on R^6, got R^{f.dim}")
    if f.degree != degree:
        raise DimensionMismatch(f"expected a {degree}-form, got degree {f.degree}")


def k_endo(rho: KForm) -> Matrix:
    """Matrix of K_rho; column i is kappa((e_i _| rho) ^ rho)."""
    _check6(rho, 3)
    cols = [kappa(wedge(interior(basis_vector(6, i), rho), rho)) for i in range(1, 7)]
    return [[cols[i][j] for i in range(6)] for j in range(6)]


def lambda_invariant(rho: KForm):
    """lambda(rho) = tr(K_rho^2) / 6, as a coefficient of nu (x) nu."""
    k = k_endo(rho)
    return linalg.trace(linalg.matmul(k, k)) / 6


def j_tilde_star(rho: KForm, alpha: KForm) -> KForm:
    """One-form X -> alpha ^ (X _| rho) ^ rho, relative to nu."""
    _check6(rho, 3)
    _check6(alpha, 1)
    comps = []
    for i in range(1, 7):
        comps.append(wedge_all(alpha, interior(basis_vector(6, i), rho), rho).top())
    return KForm.one_form(comps)


def phi_omega(omega: KForm):
    """omega^3 / 6 relative to nu."""
    _check6(omega, 2)
    return wedge_all(omega, omega, omega).top() / 6


def check_compatible(omega: KForm, rho: KForm) -> bool:
    return wedge(omega, rho).is_zero()


def check_normalized(omega: KForm, rho: KForm) -> bool:
    """phi(rho) = 2 phi(omega), tested as lambda = -+4 phi(omega)^2."""
    lam = lambda_invariant(rho)
    phi = phi_omega(omega)
    if is_zero(lam):
        raise NonStable("rho is not stable (lambda = 0)")
    if is_zero(phi):
        raise NonStable("omega is degenerate")
    target = 4 * phi * phi
    return lam == (-target if sign_of(lam) < 0 else target)


def j_endo(omega: KForm, rho: KForm) -> Matrix:
    """J_rho = K_rho / phi(rho) with phi(rho) = 2 phi(omega) for a normalized pair.

    The orientation is the one making phi(rho) and phi(omega) share a sign.
    """
    if not check_normalized(omega, rho):
        raise NotNormalized("pair is not normalized; phi(rho) would need a square root")
    phi_rho = 2 * phi_omega(omega)
    return linalg.scale(k_endo(rho), 1 / phi_rho)


def omega_matrix(omega: KForm) -> Matrix:
    """W[k][j] = omega(e_k, e_j)."""
    n = omega.dim
    w = [[Fraction(0)] * n for _ in range(n)]
    for (a, b), c in omega.coeffs.items():
        w[a - 1][b - 1] = c
        w[b - 1][a - 1] = -c
    return w


def metric_gram(omega: KForm, rho: KForm) -> Matrix:
    """Gram matrix g(e_i, e_j) = omega(J e_i, e_j)."""
    _check6(omega, 2)
    _check6(rho, 3)
    if not check_compatible(omega, rho):
        raise NotCompatible("omega ^ rho != 0")
    j = j_endo(omega, rho)
    w = omega_matrix(omega)
    g = linalg.matmul(linalg.transpose(j), w)
    if not linalg.is_symmetric(g):
        raise StableFormError("induced bilinear form is not symmetric")
    return g


@dataclass(frozen=True)
class Definiteness:
    kind: str  # "PositiveDefinite" | "Signature" | "Degenerate"
    positive: int
    negative: int
    zero: int = 0

    @property
    def positive_definite(self) -> bool:
        return self.kind == "PositiveDefinite"

    def __str__(self):
        if self.kind == "Signature":
            return f"Signature({self.positive},{self.negative})"
        return self.kind


def definiteness(gram: Sequence[Sequence[object]]) -> Definiteness:
    """Exact classification; Sylvester's criterion cross-checks the inertia."""
    p, q, z = linalg.inertia(gram)
    minors_positive = all(sign_of(m) > 0 for m in linalg.leading_minors(gram))
    if minors_positive != (p == len(gram)):
        raise ArithmeticError("Sylvester criterion disagrees with inertia count")
    if z:
        return Definiteness("Degenerate", p, q, z)
    if q == 0:
        return Definiteness("PositiveDefinite", p, 0)
    return Definiteness("Signature", p, q)


def psi_imaginary(omega: KForm, rho: KForm) -> KForm:
    """J_rho^* rho, pulled back on all three arguments."""
    if is_zero(lambda_invariant(rho)):
        raise NonStable("rho is not stable (lambda = 0)")
    try:
        j = j_endo(omega, rho)
    except NotNormalized as exc:
        raise SquareRootUnavailable(str(exc)) from exc
    return pullback(rho, j)


def pull_one_form(alpha: KForm, matrix: Sequence[Sequence[object]]) -> KForm:
    """alpha o A for a square matrix A."""
    n = alpha.dim
    return KForm.one_form(
        [sum((alpha[(j + 1,)] * matrix[j][i] for j in range(n)), Fraction(0)) for i in range(n)]
    )


def one_form_metric_by_wedge(omega: KForm, rho: KForm) -> Matrix:
    """Metric on one-forms read off ``alpha ^ J^*beta ^ omega^2 = (1/3) g(alpha, beta) omega^3``.

    The result equals the inverse of :func:`metric_gram`.
    """
    j = j_endo(omega, rho)
    w2 = wedge(omega, omega)
    w3 = wedge(w2, omega).top()
    out = []
    for a in range(1, 7):
        ea = KForm.monomial(6, (a,))
        row = []
        for b in range(1, 7):
            jb = pull_one_form(KForm.monomial(6, (b,)), j)
            row.append(3 * wedge_all(ea, jb, w2).top() / w3)
        out.append(row)
    return out


@dataclass(frozen=True)
class StablePair:
    """A (two-form, three-form) pair with invariants computed on construction."""

    omega: KForm
    rho: KForm
    lam: object = field(init=False)
    phi: object = field(init=False)
    compatible: bool = field(init=False)
    normalized: bool = field(init=False)
    gram: Optional[Tuple[Tuple[object, ...], ...]] = field(init=False)

    def __post_init__(self):
        _check6(self.omega, 2)
        _check6(self.rho, 3)
        lam = lambda_invariant(self.rho)
        phi = phi_omega(self.omega)
        set_ = object.__setattr__
        set_(self, "lam", lam)
        set_(self, "phi", phi)
        set_(self, "compatible", check_compatible(self.omega, self.rho))
        normalized = False
        if not is_zero(lam) and not is_zero(phi):
            normalized = check_normalized(self.omega, self.rho)
        set_(self, "normalized", normalized)
        gram = None
        if normalized and self.compatible:
            gram = tuple(tuple(r) for r in metric_gram(self.omega, self.rho))
        set_(self, "gram", gram)

    @property
    def stable_rho(self) -> bool:
        return not is_zero(self.lam)

    @property
    def stable_omega(self) -> bool:
        return not is_zero(self.phi)

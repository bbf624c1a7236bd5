"""Lie algebras presented dually by the differential on one-forms.

A presentation lists ``d e^i`` for each basis one-form; the
Chevalley-Eilenberg differential is the antiderivation extending it, and
``d^2 = 0`` is exactly the Jacobi identity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import _expr
from .exterior import DimensionMismatch, FormError, KForm, monomials, parse_form, wedge
from .linalg import nullspace, rank
from .scalars import format_scalar, is_zero, parse_scalar


class PresentationError(ValueError):
    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class PresentationSyntaxError(PresentationError):
    pass


class UnboundParameter(PresentationError):
    pass


class JacobiFailure(PresentationError):
    pass


class InvalidDegree(ValueError):
    pass


@dataclass(frozen=True)
class LieAlgebraPresentation:
    name: str
    dim: int
    differentials: Tuple[KForm, ...]
    params: Tuple[Tuple[str, Fraction], ...] = ()
    rootd: Optional[int] = None
    annotations: Mapping[str, object] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if len(self.differentials) != self.dim:
            raise DimensionMismatch(f"{len(self.differentials)} differentials for dimension {self.dim}")
        for i, f in enumerate(self.differentials, 1):
            if f.degree != 2 or f.dim != self.dim:
                raise DimensionMismatch(f"d e^{i} must be a two-form on R^{self.dim}")

    @property
    def param_dict(self) -> Dict[str, Fraction]:
        return dict(self.params)

    def d(self, f: KForm) -> KForm:
        return ce_differential(self, f)

    def __str__(self):
        return self.name


def _monomial_differential(g: LieAlgebraPresentation, idx: Tuple[int, ...]) -> KForm:
    return _monomial_table(g)[len(idx)][idx]


@lru_cache(maxsize=512)
def _monomial_table(g: LieAlgebraPresentation):
    """d(e^I) for every increasing I, grouped by degree."""
    n = g.dim
    table: List[Dict[Tuple[int, ...], KForm]] = []
    for k in range(n + 1):
        row: Dict[Tuple[int, ...], KForm] = {}
        for idx in monomials(n, k):
            total = KForm.zero(k + 1, n) if k < n else KForm._raw(n + 1, n, {})
            for p, i in enumerate(idx):
                left = KForm.monomial(n, idx[:p])
                right = KForm.monomial(n, idx[p + 1:])
                term = wedge(wedge(left, g.differentials[i - 1]), right)
                total = total - term if p & 1 else total + term
            row[idx] = total
        table.append(row)
    return table


def ce_differential(g: LieAlgebraPresentation, f: KForm) -> KForm:
    """Chevalley-Eilenberg differential of an arbitrary form."""
    if f.dim != g.dim:
        raise DimensionMismatch(f"form on R^{f.dim} for a {g.dim}-dimensional algebra")
    if f.degree == g.dim:
        return KForm._raw(g.dim + 1, g.dim, {})
    total = KForm.zero(f.degree + 1, g.dim)
    for idx, c in f.coeffs.items():
        df = _monomial_differential(g, idx)
        if df.coeffs:
            total = total + df.scale(c)
    return total


def jacobi_check(g: LieAlgebraPresentation) -> bool:
    return all(ce_differential(g, de).is_zero() for de in g.differentials)


def d_matrix(g: LieAlgebraPresentation, k: int) -> List[List[object]]:
    """Matrix of d: Lambda^k -> Lambda^{k+1} in the monomial bases."""
    n = g.dim
    src = monomials(n, k)
    tgt = monomials(n, k + 1) if k < n else []
    pos = {idx: r for r, idx in enumerate(tgt)}
    mat = [[Fraction(0)] * len(src) for _ in tgt]
    for c, idx in enumerate(src):
        for t, v in _monomial_differential(g, idx).coeffs.items():
            mat[pos[t]][c] = v
    return mat


@lru_cache(maxsize=1024)
def d_rank(g: LieAlgebraPresentation, k: int) -> int:
    if k < 0 or k >= g.dim:
        return 0
    return rank(d_matrix(g, k), comb(g.dim, k))


@lru_cache(maxsize=1024)
def _closed_basis(g: LieAlgebraPresentation, k: int) -> Tuple[KForm, ...]:
    n = g.dim
    src = monomials(n, k)
    if k == n:
        vecs = [[Fraction(1)]]
    else:
        vecs = nullspace(d_matrix(g, k), len(src))
    return tuple(KForm(k, n, {idx: v[c] for c, idx in enumerate(src) if not is_zero(v[c])}) for v in vecs)


def closed_basis(g: LieAlgebraPresentation, k: int) -> List[KForm]:
    """Exact basis of the closed k-forms Z^k."""
    if not 0 <= k <= g.dim:
        raise InvalidDegree(f"degree {k} outside 0..{g.dim}")
    return list(_closed_basis(g, k))


def cohomology_dims(g: LieAlgebraPresentation) -> Tuple[int, ...]:
    """(h^1, ..., h^n); h^k = dim Z^k - rank(d on Lambda^{k-1})."""
    n = g.dim
    out = []
    for k in range(1, n + 1):
        zk = comb(n, k) - d_rank(g, k)
        out.append(zk - d_rank(g, k - 1))
    return tuple(out)


def euler_characteristic(h: Sequence[int]) -> int:
    return 1 + sum((-1) ** k * hk for k, hk in enumerate(h, 1))


def structure_constants(g: LieAlgebraPresentation) -> List[List[List[object]]]:
    """c[a][b][i] = e^i([e_a, e_b]) = -(d e^i)(e_a, e_b), 0-based indices."""
    n = g.dim
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i, de in enumerate(g.differentials):
        for (a, b), v in de.coeffs.items():
            c[a - 1][b - 1][i] = -v
            c[b - 1][a - 1][i] = v
    return c


@dataclass(frozen=True)
class StructuralInvariants:
    center_dim: int
    derived_dim: int
    unimodular: bool
    adjoint_traces: Tuple[object, ...]
    derived_dim_from_brackets: int

    @property
    def consistent(self) -> bool:
        trace_free = all(is_zero(t) for t in self.adjoint_traces)
        return trace_free == self.unimodular and self.derived_dim == self.derived_dim_from_brackets


def structural_invariants(g: LieAlgebraPresentation) -> StructuralInvariants:
    n = g.dim
    c = structure_constants(g)
    # X central iff sum_a X_a c[a][b][i] = 0 for all b, i
    rows = [[c[a][b][i] for a in range(n)] for b in range(n) for i in range(n)]
    center = n - rank(rows, n)
    bracket_vectors = [c[a][b] for a in range(n) for b in range(a + 1, n)]
    derived_span = rank(bracket_vectors, n) if bracket_vectors else 0
    traces = tuple(sum((c[a][b][b] for b in range(n)), Fraction(0)) for a in range(n))
    h = cohomology_dims(g)
    inv = StructuralInvariants(
        center_dim=center,
        derived_dim=n - h[0],
        unimodular=h[-1] == 1,
        adjoint_traces=traces,
        derived_dim_from_brackets=derived_span,
    )
    if not inv.consistent:
        raise ArithmeticError(f"{g.name}: cohomological and bracket invariants disagree")
    return inv


def embed(f: KForm, dim: int, offset: int) -> KForm:
    """Re-index a form on R^m into R^dim, shifting indices by ``offset``."""
    return KForm(f.degree, dim, {tuple(i + offset for i in idx): v for idx, v in f.coeffs.items()})


def direct_sum(g: LieAlgebraPresentation, h: LieAlgebraPresentation, name: Optional[str] = None) -> LieAlgebraPresentation:
    if g.rootd and h.rootd and g.rootd != h.rootd:
        raise ValueError("summands use different radicands")
    n = g.dim + h.dim
    diffs = tuple(embed(f, n, 0) for f in g.differentials) + tuple(embed(f, n, g.dim) for f in h.differentials)
    params = tuple(g.params) + tuple((k, v) for k, v in h.params if k not in dict(g.params))
    return LieAlgebraPresentation(
        name=name or f"{g.name}+{h.name}",
        dim=n,
        differentials=diffs,
        params=params,
        rootd=g.rootd or h.rootd,
    )


def abelian(n: int, name: Optional[str] = None) -> LieAlgebraPresentation:
    return LieAlgebraPresentation(name or f"R{n}", n, tuple(KForm.zero(2, n) for _ in range(n)))


def from_strings(name: str, brackets: Sequence[str], params: Optional[Mapping[str, object]] = None,
                 rootd: Optional[int] = None) -> LieAlgebraPresentation:
    """Build from one textual two-form per generator, e.g. ``["24", "34", "0", "0"]``."""
    n = len(brackets)
    env = {k: Fraction(v) if isinstance(v, (int, str)) else v for k, v in (params or {}).items()}
    diffs = tuple(parse_form(b, n, 2, env, rootd) for b in brackets)
    return LieAlgebraPresentation(name, n, diffs, tuple(sorted(env.items())), rootd)


# -- file format ---------------------------------------------------------------

_D_LINE = re.compile(r"^d\s+(\d+)\s*=\s*(.+)$")
_PARAM_LINE = re.compile(r"^param\s+([A-Za-z_]\w*)\s*=\s*(.+)$")


def parse_presentation(text: str, overrides: Optional[Mapping[str, object]] = None,
                       check_jacobi: bool = True) -> LieAlgebraPresentation:
    """Parse the line-oriented ``.alg`` format.

    ``overrides`` replaces declared parameter bindings (catalog samples).
    Raises :class:`JacobiFailure` when ``d^2 != 0`` unless ``check_jacobi``
    is false.
    """
    name = None
    dim = None
    rootd = None
    params: Dict[str, Fraction] = {}
    d_lines: Dict[int, Tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split(None, 1)[0]
        rest = line[len(head):].strip()
        if head == "name":
            if not rest:
                raise PresentationSyntaxError("empty name", lineno)
            name = rest
        elif head == "dim":
            if not rest.isdigit() or not 1 <= int(rest) <= 9:
                raise PresentationSyntaxError(f"bad dimension {rest!r}", lineno)
            dim = int(rest)
        elif head == "rootd":
            if not rest.isdigit():
                raise PresentationSyntaxError(f"bad radicand {rest!r}", lineno)
            rootd = int(rest)
        elif head == "param":
            m = _PARAM_LINE.match(line)
            if not m:
                raise PresentationSyntaxError("expected 'param <name> = <p/q>'", lineno)
            try:
                params[m.group(1)] = parse_scalar(m.group(2))
            except ValueError as exc:
                raise PresentationSyntaxError(str(exc), lineno) from exc
        elif head == "d":
            m = _D_LINE.match(line)
            if not m:
                raise PresentationSyntaxError("expected 'd <i> = <terms>'", lineno)
            i = int(m.group(1))
            if i in d_lines:
                raise PresentationSyntaxError(f"generator {i} defined twice", lineno)
            d_lines[i] = (lineno, m.group(2))
        else:
            raise PresentationSyntaxError(f"unknown keyword {head!r}", lineno)
    if name is None:
        raise PresentationSyntaxError("missing 'name' line")
    if dim is None:
        raise PresentationSyntaxError("missing 'dim' line")
    missing = [i for i in range(1, dim + 1) if i not in d_lines]
    if missing:
        raise PresentationSyntaxError(f"no 'd' line for generator(s) {missing}")
    extra = sorted(set(d_lines) - set(range(1, dim + 1)))
    if extra:
        raise PresentationSyntaxError(f"generator {extra[0]} out of range", d_lines[extra[0]][0])
    for k, v in (overrides or {}).items():
        if k not in params:
            raise UnboundParameter(f"override for undeclared parameter {k!r}")
        params[k] = Fraction(v) if isinstance(v, (int, str)) else v
    diffs = []
    for i in range(1, dim + 1):
        lineno, rhs = d_lines[i]
        try:
            diffs.append(parse_form(rhs, dim, 2, params, rootd))
        except _expr.UnboundName as exc:
            raise UnboundParameter(f"unbound parameter {exc.args[0]!r}", lineno) from exc
        except (FormError, _expr.ExpressionError, ValueError) as exc:
            raise PresentationSyntaxError(str(exc), lineno) from exc
    g = LieAlgebraPresentation(name, dim, tuple(diffs), tuple(sorted(params.items())), rootd)
    if check_jacobi and not jacobi_check(g):
        raise JacobiFailure(f"{name}: d^2 != 0 (Jacobi identity fails)")
    return g


def format_presentation(g: LieAlgebraPresentation) -> str:
    from .exterior import format_form

    lines = [f"name {g.name}", f"dim {g.dim}"]
    if g.rootd:
        lines.append(f"rootd {g.rootd}")
    lines += [f"param {k} = {format_scalar(v)}" for k, v in g.params]
    lines += [f"d {i} = {format_form(f)}" for i, f in enumerate(g.differentials, 1)]
    return "\n".join(lines) + "\n"


def cohomology_report(g: LieAlgebraPresentation) -> Dict[str, object]:
    """JSON-ready record {algebra, jacobi, h, center_dim, derived_dim, unimodular}."""
    jac = jacobi_check(g)
    rec: Dict[str, object] = {"algebra": g.name, "jacobi": jac}
    if jac:
        inv = structural_invariants(g)
        rec.update(
            h=list(cohomology_dims(g)),
            center_dim=inv.center_dim,
            derived_dim=inv.derived_dim,
            unimodular=inv.unimodular,
        )
    return rec

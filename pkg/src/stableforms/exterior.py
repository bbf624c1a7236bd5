"""Sparse alternating forms on R^n with exact coefficients.

A :class:`KForm` of degree ``k`` maps strictly increasing index tuples
(1-based) to non-zero scalars.  The reference volume form is
``nu = e^{1...n}``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from . import _expr
from .scalars import format_scalar, is_zero, Quad, Poly

MultiIndex = Tuple[int, ...]
Vector = Tuple[object, ...]


class FormError(ValueError):
    pass


class DimensionMismatch(FormError):
    pass


class DegreeMismatch(FormError):
    pass


def sort_sign(indices: Sequence[int]) -> Tuple[int, MultiIndex]:
    """Sign of the permutation sorting ``indices``; 0 if an index repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


def _merge_sign(a: MultiIndex, b: MultiIndex) -> int:
    """Sign of sorting a + b, both increasing; 0 on overlap."""
    inversions = 0
    for j in b:
        for i in reversed(a):
            if i == j:
                return 0
            if i < j:
                break
            inversions += 1
    return -1 if inversions & 1 else 1


class KForm:
    __slots__ = ("degree", "dim", "coeffs")

    def __init__(self, degree: int, dim: int, coeffs: Optional[Mapping[MultiIndex, object]] = None):
        if degree < 0 or (degree > dim and coeffs):
            raise DegreeMismatch(f"degree {degree} invalid in dimension {dim}")
        self.degree = degree
        self.dim = dim
        clean: Dict[MultiIndex, object] = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(not 1 <= i <= dim for i in idx):
                raise DegreeMismatch(f"index {idx} invalid for a {degree}-form on R^{dim}")
            if any(idx[t] >= idx[t + 1] for t in range(degree - 1)):
                raise FormError(f"index {idx} is not strictly increasing")
            if not is_zero(c):
                clean[idx] = Fraction(c) if isinstance(c, int) else c
        self.coeffs = clean

    @classmethod
    def _raw(cls, degree, dim, coeffs) -> "KForm":
        f = object.__new__(cls)
        f.degree, f.dim, f.coeffs = degree, dim, coeffs
        return f

    @classmethod
    def zero(cls, degree: int, dim: int) -> "KForm":
        return cls(degree, dim)

    @classmethod
    def monomial(cls, dim: int, indices: Sequence[int], coeff=1) -> "KForm":
        sign, idx = sort_sign(indices)
        if sign == 0:
            return cls(len(indices), dim)
        return cls(len(idx), dim, {idx: sign * coeff})

    @classmethod
    def from_terms(cls, degree: int, dim: int, terms: Iterable[Tuple[Sequence[int], object]]) -> "KForm":
        """Sum of ``coeff * e^{indices}`` with arbitrary index order."""
        acc: Dict[MultiIndex, object] = {}
        for indices, c in terms:
            if len(indices) != degree:
                raise DegreeMismatch(f"term {tuple(indices)} is not of degree {degree}")
            sign, idx = sort_sign(indices)
            if sign == 0:
                continue
            acc[idx] = acc.get(idx, 0) + sign * c
        return cls(degree, dim, acc)

    @classmethod
    def volume(cls, dim: int) -> "KForm":
        return cls(dim, dim, {tuple(range(1, dim + 1)): Fraction(1)})

    @classmethod
    def one_form(cls, vec: Sequence[object]) -> "KForm":
        return cls(1, len(vec), {(i + 1,): c for i, c in enumerate(vec)})

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: "KForm"):
        if not isinstance(other, KForm):
            raise TypeError(f"expected KForm, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim}")

    def __add__(self, other: "KForm") -> "KForm":
        self._check(other)
        if other.degree != self.degree:
            raise DegreeMismatch(f"cannot add degrees {self.degree} and {other.degree}")
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            v = out.get(idx)
            v = c if v is None else v + c
            if is_zero(v):
                out.pop(idx, None)
            else:
                out[idx] = v
        return KForm._raw(self.degree, self.dim, out)

    def __neg__(self) -> "KForm":
        return KForm._raw(self.degree, self.dim, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def scale(self, c) -> "KForm":
        if is_zero(c):
            return KForm.zero(self.degree, self.dim)
        out = {}
        for idx, v in self.coeffs.items():
            w = v * c
            if not is_zero(w):
                out[idx] = w
        return KForm._raw(self.degree, self.dim, out)

    def __mul__(self, c) -> "KForm":
        if isinstance(c, KForm):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __xor__(self, other: "KForm") -> "KForm":
        return wedge(self, other)

    def __eq__(self, other):
        if isinstance(other, KForm):
            return (self.degree, self.dim) == (other.degree, other.dim) and self.coeffs == other.coeffs
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.degree, self.dim, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, indices: Sequence[int]):
        sign, idx = sort_sign(indices)
        if sign == 0:
            return Fraction(0)
        return sign * self.coeffs.get(idx, Fraction(0))

    def top(self):
        """Coefficient relative to nu when this is an n-form."""
        if self.degree != self.dim:
            raise DegreeMismatch(f"{self.degree}-form is not a top form on R^{self.dim}")
        return self.coeffs.get(tuple(range(1, self.dim + 1)), Fraction(0))

    def map_coefficients(self, fn) -> "KForm":
        return KForm(self.degree, self.dim, {i: fn(c) for i, c in self.coeffs.items()})

    def __repr__(self):
        return f"KForm({self.degree}, {self.dim}, {format_form(self)!r})"

    def __str__(self):
        return format_form(self)


def wedge(f: KForm, g: KForm) -> KForm:
    f._check(g)
    k = f.degree + g.degree
    if k > f.dim:
        return KForm._raw(k, f.dim, {})
    out: Dict[MultiIndex, object] = {}
    for a, ca in f.coeffs.items():
        sa = set(a)
        for b, cb in g.coeffs.items():
            if sa.intersection(b):
                continue
            s = _merge_sign(a, b)
            idx = tuple(sorted(a + b))
            t = ca * cb if s > 0 else -(ca * cb)
            v = out.get(idx)
            out[idx] = t if v is None else v + t
    return KForm._raw(k, f.dim, {i: c for i, c in out.items() if not is_zero(c)})


def wedge_all(*forms: KForm) -> KForm:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def interior(v: Sequence[object], f: KForm) -> KForm:
    """Contraction ``v _| f`` in the first slot."""
    if len(v) != f.dim:
        raise DimensionMismatch(f"vector of length {len(v)} on R^{f.dim}")
    if f.degree == 0:
        return KForm._raw(-1, f.dim, {})
    out: Dict[MultiIndex, object] = {}
    for idx, c in f.coeffs.items():
        for p, i in enumerate(idx):
            vi = v[i - 1]
            if is_zero(vi):
                continue
            rest = idx[:p] + idx[p + 1:]
            t = vi * c
            if p & 1:
                t = -t
            w = out.get(rest)
            out[rest] = t if w is None else w + t
    return KForm._raw(f.degree - 1, f.dim, {i: c for i, c in out.items() if not is_zero(c)})


def basis_vector(dim: int, i: int) -> Vector:
    """The vector e_i (1-based)."""
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(1, dim + 1))


def kappa(xi: KForm) -> Vector:
    """Vector X with ``X _| nu = xi``, i.e. kappa(xi) = X (x) nu."""
    n = xi.dim
    if xi.degree != n - 1:
        raise DegreeMismatch(f"kappa needs an {n - 1}-form, got degree {xi.degree}")
    full = tuple(range(1, n + 1))
    out = []
    for i in range(1, n + 1):
        c = xi.coeffs.get(full[: i - 1] + full[i:], Fraction(0))
        out.append(c if i % 2 else -c)
    return tuple(out)


def pullback(f: KForm, matrix: Sequence[Sequence[object]]) -> KForm:
    """``(A^* f)(v_1, ..., v_k) = f(A v_1, ..., A v_k)`` for a square matrix A.

    ``matrix[j][i]`` is the e_j-component of A e_i.
    """
    n = f.dim
    if len(matrix) != n:
        raise DimensionMismatch("matrix size does not match form dimension")
    pulled = [KForm.one_form([matrix[j][i] for i in range(n)]) for j in range(n)]
    total = KForm.zero(f.degree, n)
    for idx, c in f.coeffs.items():
        if f.degree == 0:
            term = KForm(0, n, {(): c})
        else:
            term = wedge_all(*(pulled[i - 1] for i in idx)).scale(c)
        total = total + term
    return total


def monomials(dim: int, degree: int):
    return list(combinations(range(1, dim + 1), degree))


# -- textual syntax ----------------------------------------------------------

def _split_terms(text: str):
    """Split at top-level + and -; yields (sign, body)."""
    terms, depth, cur, sign, prev = [], 0, "", 1, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and prev not in ("*", "/", "("):
            if cur.strip():
                terms.append((sign, cur.strip()))
            elif terms or prev:
                raise FormError(f"dangling operator in {text!r}")
            sign = 1 if ch == "+" else -1
            cur = ""
        else:
            cur += ch
        if not ch.isspace():
            prev = ch
    if cur.strip():
        terms.append((sign, cur.strip()))
    elif text.strip():
        raise FormError(f"dangling operator in {text!r}")
    return terms


def parse_terms(text: str, params: Optional[Mapping[str, object]] = None, rootd: Optional[int] = None):
    """Parse ``coef*ijk`` terms; returns a list of (indices, coefficient)."""
    text = text.strip()
    if text == "0":
        return []
    out = []
    for sign, body in _split_terms(text):
        coef_text, star, idx_text = body.rpartition("*")
        idx_text = idx_text.strip()
        if idx_text.startswith("e"):
            idx_text = idx_text[1:]
        if not idx_text.isdigit():
            raise FormError(f"bad index group {idx_text!r} in term {body!r}")
        indices = tuple(int(ch) for ch in idx_text)
        if star:
            if not coef_text.strip():
                raise FormError(f"missing coefficient in term {body!r}")
            coef = _expr.evaluate(coef_text, params, rootd)
        else:
            coef = Fraction(1)
        out.append((indices, coef if sign > 0 else -coef))
    return out


def parse_form(text: str, dim: int, degree: Optional[int] = None,
               params: Optional[Mapping[str, object]] = None, rootd: Optional[int] = None) -> KForm:
    terms = parse_terms(text, params, rootd)
    if degree is None:
        degrees = {len(t[0]) for t in terms}
        if len(degrees) > 1:
            raise DegreeMismatch(f"mixed degrees in {text!r}")
        if not degrees:
            raise DegreeMismatch(f"cannot infer the degree of {text!r}")
        degree = degrees.pop()
    for idx, _ in terms:
        if any(not 1 <= i <= dim for i in idx):
            raise DimensionMismatch(f"index {idx} out of range for R^{dim}")
    return KForm.from_terms(degree, dim, terms)


def format_form(f: KForm, prefix: str = "") -> str:
    """Render in the input syntax; ``prefix="e"`` writes e4 instead of 4."""
    if not f.coeffs:
        return "0"
    parts = []
    for idx in sorted(f.coeffs):
        c = f.coeffs[idx]
        key = prefix + "".join(str(i) for i in idx) if idx else "1"
        if c == 1:
            parts.append(("+", key))
        elif c == -1:
            parts.append(("-", key))
        elif isinstance(c, (Quad, Poly)):
            parts.append(("+", f"({format_scalar(c)})*{key}"))
        elif c < 0:
            parts.append(("-", f"{format_scalar(-c)}*{key}"))
        else:
            parts.append(("+", f"{format_scalar(c)}*{key}"))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for s, body in parts[1:]:
        out += f" {s} {body}"
    return out

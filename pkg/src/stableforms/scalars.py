"""Exact scalar rings: rationals, one quadratic extension Q(sqrt d), polynomials.

Rationals are plain :class:`fractions.Fraction` values (ints are accepted
anywhere and coerced).  :class:`Quad` represents ``a + b*sqrt(d)`` for a fixed
square-free ``d > 1`` and collapses back to a Fraction whenever ``b == 0``, so
rational results never carry a stale radicand.  :class:`Poly` is a sparse
multivariate polynomial whose coefficients are Fractions or Quads.
"""
from __future__ import annotations

import math
import operator
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union


class ScalarError(ArithmeticError):
    pass


class IncompatibleRing(ScalarError):
    pass


class DivisionUndefined(ScalarError, ZeroDivisionError):
    pass


class NotOrdered(ScalarError):
    pass


class NotASquare(ScalarError):
    pass


class NegativeInput(ScalarError, ValueError):
    pass


def is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


class Quad:
    """``a + b*sqrt(d)`` with rational ``a``, ``b``.

    Construct through :meth:`make`, which demotes ``b == 0`` to a Fraction.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if not is_squarefree(d):
            raise IncompatibleRing(f"radicand {d} is not a square-free integer > 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    @classmethod
    def make(cls, a, b, d: int):
        if b == 0:
            return Fraction(a)
        return cls(a, b, d)

    @classmethod
    def root(cls, d: int) -> "Quad":
        return cls(0, 1, d)

    def _coerce(self, other):
        if isinstance(other, Quad):
            if other.d != self.d:
                raise IncompatibleRing(f"cannot mix sqrt({self.d}) and sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quad.make(self.a + o[0], self.b + o[1], self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quad.make(self.a - o[0], self.b - o[1], self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quad.make(o[0] - self.a, o[1] - self.b, self.d)

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = o
        return Quad.make(self.a * a + self.d * self.b * b, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "Quad":
        return Quad(self.a, -self.b, self.d)

    def inverse(self):
        n = self.norm()  # never zero: sqrt(d) is irrational
        return Quad.make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o[0] == 0 and o[1] == 0:
            raise DivisionUndefined("division by zero")
        if o[1] == 0:
            return Quad.make(self.a / o[0], self.b / o[0], self.d)
        return self * Quad(o[0], o[1], self.d).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.inverse() * Quad.make(o[0], o[1], self.d)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Fraction(1)
        base = self
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Quad):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return False  # b != 0 by construction
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Quad({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_scalar(self)


Rational = Fraction
Scalar = Union[int, Fraction, Quad, "Poly"]

Exponent = Tuple[int, ...]


class Poly:
    """Sparse polynomial over Fractions/Quads in a fixed tuple of variables.

    ``terms`` maps exponent tuples to non-zero coefficients.  Two polynomials
    combine only if their variable tuples are identical.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[Exponent, object]] = None):
        self.variables = tuple(variables)
        clean: Dict[Exponent, object] = {}
        if terms:
            n = len(self.variables)
            for e, c in terms.items():
                if len(e) != n:
                    raise IncompatibleRing("exponent length does not match variables")
                if not is_zero(c):
                    clean[tuple(e)] = _base_coeff(c)
        self.terms = clean

    @classmethod
    def gens(cls, variables: Sequence[str]) -> Tuple["Poly", ...]:
        variables = tuple(variables)
        n = len(variables)
        out = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            out.append(cls._raw(variables, {tuple(e): Fraction(1)}))
        return tuple(out)

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "Poly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def _raw(cls, variables, terms) -> "Poly":
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        return p

    def _lift(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise IncompatibleRing("polynomials over different indeterminates")
            return other
        if isinstance(other, (int, Fraction, Quad)):
            if is_zero(other):
                return Poly._raw(self.variables, {})
            return Poly._raw(self.variables, {(0,) * len(self.variables): _base_coeff(other)})
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            v = terms.get(e)
            if v is None:
                terms[e] = c
            else:
                v = v + c
                if v == 0:
                    del terms[e]
                else:
                    terms[e] = v
        return Poly._raw(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Quad)):
            if is_zero(other):
                return Poly._raw(self.variables, {})
            c0 = _base_coeff(other)
            return Poly._raw(self.variables, {e: c * c0 for e, c in self.terms.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms: Dict[Exponent, object] = {}
        add = operator.add
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(map(add, e1, e2))
                v = terms.get(e)
                terms[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly._raw(self.variables, {e: c for e, c in terms.items() if c != 0})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise IncompatibleRing("polynomials over different indeterminates")
            c = other.constant_value()
            if c is None:
                raise DivisionUndefined("division by a non-constant polynomial")
            other = c
        if isinstance(other, (int, Fraction, Quad)):
            if is_zero(other):
                raise DivisionUndefined("division by zero")
            inv = 1 / (Fraction(other) if isinstance(other, int) else other)
            return self * inv
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Poly.constant(self.variables, 1)
        for _ in range(n):
            result = result * self
        return result

    def constant_value(self):
        """The value of a constant polynomial, else ``None``."""
        if not self.terms:
            return Fraction(0)
        zero = (0,) * len(self.variables)
        if len(self.terms) == 1 and zero in self.terms:
            return self.terms[zero]
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction, Quad)):
            c = self.constant_value()
            return c is not None and c == other
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, names: Iterable[str]) -> int:
        idx = [self.variables.index(n) for n in names]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def evaluate(self, values: Mapping[str, object] | Sequence[object]):
        if isinstance(values, Mapping):
            vals = [values[v] for v in self.variables]
        else:
            vals = list(values)
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    def __repr__(self):
        return f"Poly({self.variables!r}, {self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            cs = format_scalar(c)
            if isinstance(c, Quad):
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def _base_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, (Fraction, Quad)):
        return c
    raise IncompatibleRing(f"not a polynomial coefficient: {c!r}")


def as_scalar(x):
    """Coerce ints to Fractions; leave other ring elements untouched."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, Quad, Poly)):
        return x
    raise TypeError(f"not an exact scalar: {x!r}")


def is_zero(x) -> bool:
    if isinstance(x, Poly):
        return not x.terms
    if isinstance(x, Quad):
        return False
    return x == 0


def exact_div(x, y):
    if is_zero(y):
        raise DivisionUndefined("division by zero")
    if isinstance(x, int) and isinstance(y, int):
        return Fraction(x, y)
    return x / y


def radicand_of(x) -> Optional[int]:
    if isinstance(x, Quad):
        return x.d
    if isinstance(x, Poly):
        ds = {c.d for c in x.terms.values() if isinstance(c, Quad)}
        if len(ds) > 1:
            raise IncompatibleRing("mixed radicands in polynomial")
        return ds.pop() if ds else None
    return None


def _sign_fraction(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def sign_of(x) -> int:
    """Exact sign of a rational or a + b*sqrt(d); no floating point."""
    if isinstance(x, Poly):
        c = x.constant_value()
        if c is None:
            raise NotOrdered("polynomials are not ordered")
        x = c
    if isinstance(x, (int, Fraction)):
        return _sign_fraction(Fraction(x))
    if isinstance(x, Quad):
        sa, sb = _sign_fraction(x.a), _sign_fraction(x.b)
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger of a^2 and d*b^2 wins (never equal)
        return sa if x.a * x.a > x.d * x.b * x.b else sb
    raise NotOrdered(f"cannot order {x!r}")


def _sqrt_fraction(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_exact(x, rootd: Optional[int] = None):
    """Non-negative exact square root in Q or Q(sqrt rootd).

    Raises :class:`NotASquare` if no root exists in the ring and
    :class:`NegativeInput` for negative arguments.
    """
    if isinstance(x, Poly):
        raise NotOrdered("square roots of polynomials are not supported")
    if isinstance(x, Quad):
        if rootd is not None and rootd != x.d:
            raise IncompatibleRing(f"cannot mix sqrt({rootd}) and sqrt({x.d})")
        rootd = x.d
    if sign_of(x) < 0:
        raise NegativeInput(f"negative argument {format_scalar(x)}")
    if isinstance(x, (int, Fraction)):
        q = Fraction(x)
        r = _sqrt_fraction(q)
        if r is not None:
            return r
        if rootd is not None:
            s = _sqrt_fraction(q / rootd)
            if s is not None:
                return Quad.make(0, s, rootd)
        raise NotASquare(f"{format_scalar(q)} has no square root in the ring")
    # (p + q sqrt d)^2 = a + b sqrt d with b != 0 forces p, q both non-zero
    a, b, d = x.a, x.b, x.d
    disc = _sqrt_fraction(a * a - d * b * b)
    if disc is not None:
        for p2 in ((a + disc) / 2, (a - disc) / 2):
            p = _sqrt_fraction(p2)
            if p:
                y = Quad.make(p, b / (2 * p), d)
                return y if sign_of(y) >= 0 else -y
    raise NotASquare(f"{format_scalar(x)} has no square root in Q(sqrt {d})")


def format_scalar(x) -> str:
    """Render in the input syntax: ``p/q`` or ``p/q + r/s*rt``."""
    if isinstance(x, Poly):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Quad):
        b = "rt" if x.b == 1 else "-rt" if x.b == -1 else f"{x.b}*rt"
        if x.a == 0:
            return b
        if b.startswith("-"):
            return f"{x.a} - {b[1:]}"
        return f"{x.a} + {b}"
    raise TypeError(f"not a scalar: {x!r}")


_SCALAR_RE = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?:(?P<sign>[+-])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?(?P<rt>rt))?\s*$"
)


def parse_scalar(text: str, rootd: Optional[int] = None):
    """Parse ``p/q``, ``p/q + r/s*rt`` or ``-rt`` style literals."""
    m = _SCALAR_RE.match(text)
    if not m or (m.group("a") is None and m.group("rt") is None):
        raise ValueError(f"malformed scalar literal {text!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    if not m.group("rt"):
        return a
    if rootd is None:
        raise ValueError("'rt' used without a declared radicand")
    if m.group("a") is not None and m.group("sign") is None:
        raise ValueError(f"malformed scalar literal {text!r}")
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("sign") == "-":
        b = -b
    return Quad.make(a, b, rootd)

"""Restricted arithmetic / boolean expressions for input files.

Coefficients such as ``(alpha+1)``, ``-beta``, ``29/2`` or ``2*rt`` and
parameter conditions such as ``-1 < alpha <= beta <= 1 and beta != 0`` are
parsed with :mod:`ast` and evaluated over exact scalars.  Only literals,
names, arithmetic, comparisons and boolean connectives are allowed.
"""
from __future__ import annotations

import ast
import operator
from fractions import Fraction
from typing import Mapping

from .scalars import Quad, exact_div, sign_of

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: exact_div,
}


class ExpressionError(ValueError):
    pass


class UnboundName(ExpressionError):
    pass


def _cmp(op, x, y) -> bool:
    if isinstance(op, ast.Eq):
        return x == y
    if isinstance(op, ast.NotEq):
        return x != y
    s = sign_of(x - y)
    if isinstance(op, ast.Lt):
        return s < 0
    if isinstance(op, ast.LtE):
        return s <= 0
    if isinstance(op, ast.Gt):
        return s > 0
    if isinstance(op, ast.GtE):
        return s >= 0
    raise ExpressionError(f"unsupported comparison {type(op).__name__}")


def _eval(node, env):
    if isinstance(node, ast.Expression):
        return _eval(node.body, env)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise UnboundName(node.id)
        return env[node.id]
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, env)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        if isinstance(node.op, ast.Not):
            return not v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left, env), _eval(node.right, env))
    if isinstance(node, ast.BoolOp):
        vals = (_eval(v, env) for v in node.values)
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    if isinstance(node, ast.Compare):
        left = _eval(node.left, env)
        for op, comp in zip(node.ops, node.comparators):
            if isinstance(op, (ast.In, ast.NotIn)):
                items = [_eval(e, env) for e in comp.elts]
                ok = any(left == it for it in items)
                ok = ok if isinstance(op, ast.In) else not ok
            else:
                right = _eval(comp, env)
                ok = _cmp(op, left, right)
                left = right
            if not ok:
                return False
        return True
    raise ExpressionError(f"unsupported syntax: {ast.dump(node)}")


def evaluate(text: str, env: Mapping[str, object] | None = None, rootd: int | None = None):
    env = dict(env or {})
    if rootd is not None:
        env.setdefault("rt", Quad.root(rootd))
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}") from exc
    return _eval(tree, env)

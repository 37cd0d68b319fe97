"""Expressions in ``t`` for plane curves.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' UINT)?
    base     := RATIONAL | 't' | '(' expr ')' | ('sin'|'cos'|'exp') '(' expr ')' | '-' factor
    RATIONAL := INT ('/' UINT)?

Unary minus binds looser than ``^``, so ``-t^2`` means ``-(t^2)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .curve import CurveJet
from .jet import FLOAT, RATIONAL, InexactError, Jet, compose


class ParseError(ValueError):
    def __init__(self, source: str, pos: int, expected: list[str]):
        self.source = source
        self.pos = pos
        self.expected = expected
        got = repr(source[pos]) if pos < len(source) else "end of input"
        super().__init__(f"at position {pos}: expected {' or '.join(expected)}, got {got}\n  {source}\n  {' ' * pos}^")


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Call:
    func: str  # 'sin', 'cos', 'exp'
    arg: "Node"


Node = Union[Num, Var, BinOp, Neg, Pow, Call]
FUNCS = ("sin", "cos", "exp")


@dataclass(frozen=True)
class CurveExpr:
    x: Node
    y: Node
    x_src: str = ""
    y_src: str = ""


# -- parser ------------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z_]\w*)|([-+*^/()])")


def _tokenize(src: str):
    toks = []
    pos = 0
    while pos < len(src):
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(src, pos, ["number", "'t'", "operator", "'('", "')'"])
        if m.group(1):
            toks.append(("INT", m.group(1), pos))
        elif m.group(2):
            if m.group(2) not in ("t",) + FUNCS:
                raise ParseError(src, pos, ["'t'", "'sin'", "'cos'", "'exp'"])
            toks.append(("NAME", m.group(2), pos))
        else:
            toks.append(("OP", m.group(3), pos))
        pos = m.end()
    toks.append(("END", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        raise ParseError(self.src, self.peek()[2], expected)

    def expect_op(self, ch):
        kind, val, _ = self.peek()
        if kind != "OP" or val != ch:
            self.fail([repr(ch)])
        self.take()

    def parse(self) -> Node:
        node = self.expr()
        if self.peek()[0] != "END":
            self.fail(["'+'", "'-'", "'*'", "'^'", "end of input"])
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] == "OP" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[0] == "OP" and self.peek()[1] == "*":
            self.take()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Node:
        if self.peek()[:2] == ("OP", "-"):
            self.take()
            return Neg(self.factor())
        node = self.base()
        if self.peek()[:2] == ("OP", "^"):
            self.take()
            kind, val, _ = self.peek()
            if kind != "INT":
                self.fail(["non-negative integer exponent"])
            self.take()
            node = Pow(node, int(val))
        return node

    def base(self) -> Node:
        kind, val, _ = self.peek()
        if kind == "INT":
            self.take()
            num = int(val)
            if self.peek()[:2] == ("OP", "/"):
                self.take()
                kind2, val2, _ = self.peek()
                if kind2 != "INT":
                    self.fail(["integer denominator"])
                self.take()
                if int(val2) == 0:
                    raise ParseError(self.src, self.toks[self.i - 1][2], ["non-zero denominator"])
                return Num(Fraction(num, int(val2)))
            return Num(Fraction(num))
        if kind == "NAME" and val == "t":
            self.take()
            return Var()
        if kind == "NAME":
            self.take()
            self.expect_op("(")
            arg = self.expr()
            self.expect_op(")")
            return Call(val, arg)
        if (kind, val) == ("OP", "("):
            self.take()
            node = self.expr()
            self.expect_op(")")
            return node
        self.fail(["number", "'t'", "'('", "'sin'", "'cos'", "'exp'", "'-'"])


def parse(src: str) -> Node:
    """Parse one expression in ``t``; raises :class:`ParseError`."""
    return _Parser(src).parse()


def parse_curve(x_src: str, y_src: str) -> CurveExpr:
    return CurveExpr(parse(x_src), parse(y_src), x_src, y_src)


# -- Maclaurin expansion -----------------------------------------------------


def _series(func: str, order: int, backend: str) -> Jet:
    coeffs = []
    for k in range(order + 1):
        if func == "exp":
            c = Fraction(1, math.factorial(k))
        elif func == "sin":
            c = Fraction((-1) ** (k // 2), math.factorial(k)) if k % 2 else Fraction(0)
        else:
            c = Fraction(0) if k % 2 else Fraction((-1) ** (k // 2), math.factorial(k))
        coeffs.append(c if backend == RATIONAL else float(c))
    return Jet(coeffs, backend)


def _apply_func(func: str, g: Jet) -> Jet:
    g0 = g.coeffs[0]
    h = g - g0
    if g0 == 0:
        return compose(_series(func, g.order, g.backend), h)
    if g.exact:
        raise InexactError(f"{func} of an argument that does not vanish at t=0 has irrational coefficients")
    s, c = compose(_series("sin", g.order, FLOAT), h), compose(_series("cos", g.order, FLOAT), h)
    if func == "exp":
        return compose(_series("exp", g.order, FLOAT), h) * math.exp(g0)
    if func == "sin":
        return s * math.cos(g0) + c * math.sin(g0)
    return c * math.cos(g0) - s * math.sin(g0)


def expand(node: Node, order: int, backend: str = RATIONAL, center=0) -> Jet:
    """Taylor jet of ``node`` at ``t = center`` (in the local variable ``t - center``)."""
    if isinstance(node, Num):
        return Jet.constant(node.value if backend == RATIONAL else float(node.value), order, backend)
    if isinstance(node, Var):
        return Jet.variable(order, backend) + center
    if isinstance(node, Neg):
        return -expand(node.arg, order, backend, center)
    if isinstance(node, BinOp):
        a = expand(node.left, order, backend, center)
        b = expand(node.right, order, backend, center)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    if isinstance(node, Pow):
        return expand(node.base, order, backend, center) ** node.exp
    if isinstance(node, Call):
        return _apply_func(node.func, expand(node.arg, order, backend, center))
    raise TypeError(f"unsupported expression node {node!r}")


def to_jet(e: CurveExpr, order: int, backend: str = RATIONAL, center=0) -> CurveJet:
    if order < 1:
        raise ValueError("jet order must be at least 1")
    return CurveJet(expand(e.x, order, backend, center), expand(e.y, order, backend, center))


# -- point evaluation ----------------------------------------------------------

_MATH = {"sin": math.sin, "cos": math.cos, "exp": math.exp}


def evaluate(node: Node, t: float) -> float:
    if isinstance(node, Num):
        return float(node.value)
    if isinstance(node, Var):
        return t
    if isinstance(node, Neg):
        return -evaluate(node.arg, t)
    if isinstance(node, BinOp):
        a, b = evaluate(node.left, t), evaluate(node.right, t)
        return a + b if node.op == "+" else a - b if node.op == "-" else a * b
    if isinstance(node, Pow):
        return evaluate(node.base, t) ** node.exp
    if isinstance(node, Call):
        return _MATH[node.func](evaluate(node.arg, t))
    raise TypeError(f"unsupported expression node {node!r}")


def sample_params(t_min: float, t_max: float, samples: int) -> list[float]:
    if samples < 2:
        raise ValueError("need at least two samples")
    step = (t_max - t_min) / (samples - 1)
    return [t_min + i * step for i in range(samples)]


def eval_points(e: CurveExpr, t_min: float, t_max: float, samples: int) -> list[tuple[float, float]]:
    return [(evaluate(e.x, t), evaluate(e.y, t)) for t in sample_params(t_min, t_max, samples)]


def is_polynomial(node: Node) -> bool:
    if isinstance(node, (Num, Var)):
        return True
    if isinstance(node, Call):
        return False
    if isinstance(node, Neg):
        return is_polynomial(node.arg)
    if isinstance(node, Pow):
        return is_polynomial(node.base)
    return is_polynomial(node.left) and is_polynomial(node.right)

"""Edge-weight expression language.

Grammar (lowest to highest precedence)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?          # right associative
    atom    := NUMBER | NAME | 'sqrt' '(' expr ')' | '(' expr ')'

Exponents may only contain integer literals, unary minus and ``^``.
Weights see two variables, ``du`` and ``dv``; the same parser reads the
``p``/``q`` closed forms used by family files (see :mod:`.forms`).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, NegativeSqrt, ParseError
from .radical import RadicalNumber, rad_to_float, sqrt_rational

__all__ = [
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Pow",
    "Sqrt",
    "WeightExpr",
    "WEIGHT_VARIABLES",
    "parse_expression",
    "parse_weight",
    "render_expr",
    "eval_weight",
    "eval_float",
]

WEIGHT_VARIABLES = ("du", "dv")


@dataclass(frozen=True)
class Num:
    value: Fraction
    text: str = ""

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("literals are unsigned; use Neg for negatives")
        if not self.text:
            object.__setattr__(self, "text", _literal_text(self.value))

    def __eq__(self, other):
        return isinstance(other, Num) and self.value == other.value

    def __hash__(self):
        return hash(("Num", self.value))


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "WeightExpr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "WeightExpr"
    right: "WeightExpr"


@dataclass(frozen=True)
class Pow:
    base: "WeightExpr"
    exponent: "WeightExpr"


@dataclass(frozen=True)
class Sqrt:
    arg: "WeightExpr"


WeightExpr = Union[Num, Var, Neg, BinOp, Pow, Sqrt]


def _literal_text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    d = value.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        raise ValueError(f"{value} has no finite decimal literal")
    return format(Decimal(value.numerator) / Decimal(value.denominator), "f")


# tokenizer ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # 'num', 'name', 'op', 'eof'
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", position=pos)
        kind = m.lastgroup
        tokens.append(_Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(_Token("eof", "", n))
    return tokens


_ATOM_START = {"number", "identifier", "'('", "'-'"}


class _Parser:
    def __init__(self, text: str, variables, aliases):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = frozenset(variables)
        self.aliases = dict(aliases or {})

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def _fail(self, expected):
        t = self.tok
        if t.kind == "eof":
            raise ParseError("unexpected end of input", position=t.pos, expected=expected)
        raise ParseError(f"unexpected token {t.text!r}", position=t.pos, expected=expected)

    def _accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def _expect(self, op: str):
        if not self._accept(op):
            self._fail({f"'{op}'"})

    def parse(self):
        node = self.expr()
        if self.tok.kind != "eof":
            self._fail({"operator", "end of input"})
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self._accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self._accept("^"):
            start = self.tok.pos
            exponent = self.unary()
            if not _is_integer_exponent(exponent):
                raise ParseError("exponent must be an integer literal", position=start)
            return Pow(base, exponent)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Num(Fraction(t.text), t.text)
        if t.kind == "name":
            self.i += 1
            if t.text == "sqrt":
                self._expect("(")
                arg = self.expr()
                self._expect(")")
                return Sqrt(arg)
            if t.text in self.aliases:
                return self.aliases[t.text]
            if t.text not in self.variables:
                allowed = ", ".join(sorted(self.variables)) or "none"
                raise ParseError(
                    f"unknown identifier {t.text!r} (variables: {allowed})", position=t.pos
                )
            return Var(t.text)
        if self._accept("("):
            node = self.expr()
            self._expect(")")
            return node
        self._fail(_ATOM_START)


def _is_integer_exponent(node) -> bool:
    if isinstance(node, Num):
        return node.value.denominator == 1
    if isinstance(node, Neg):
        return _is_integer_exponent(node.operand)
    if isinstance(node, Pow):
        return _is_integer_exponent(node.base) and _is_integer_exponent(node.exponent)
    return False


def parse_expression(text: str, variables=WEIGHT_VARIABLES, aliases=None) -> WeightExpr:
    """Parse ``text`` allowing the given variable names.

    ``aliases`` maps extra identifiers to ready-made subtrees (the form
    reader uses it to accept ``pq`` for ``p*q``).
    """
    return _Parser(text, variables, aliases).parse()


def parse_weight(text: str) -> WeightExpr:
    """Parse an edge-weight expression over ``du`` and ``dv``.

    >>> parse_weight("du*dv/(du+dv)")
    BinOp(op='/', left=BinOp(op='*', left=Var(name='du'), right=Var(name='dv')), right=BinOp(op='+', left=Var(name='du'), right=Var(name='dv')))
    """
    return parse_expression(text, WEIGHT_VARIABLES)


# rendering ------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}
_NEG_PREC = 3
_POW_PREC = 4
_ATOM_PREC = 5


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _NEG_PREC
    if isinstance(node, Pow):
        return _POW_PREC
    return _ATOM_PREC


def render_expr(node: WeightExpr) -> str:
    """Inverse of :func:`parse_expression` up to redundant parentheses."""
    if isinstance(node, Num):
        return node.text
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Sqrt):
        return f"sqrt({render_expr(node.arg)})"
    if isinstance(node, Neg):
        inner = render_expr(node.operand)
        return f"-{inner}" if _prec(node.operand) >= _NEG_PREC else f"-({inner})"
    if isinstance(node, Pow):
        base = render_expr(node.base)
        if _prec(node.base) <= _POW_PREC:
            base = f"({base})"
        exp = render_expr(node.exponent)
        if _prec(node.exponent) < _NEG_PREC:
            exp = f"({exp})"
        return f"{base}^{exp}"
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left = render_expr(node.left)
        if _prec(node.left) < p:
            left = f"({left})"
        right = render_expr(node.right)
        if _prec(node.right) <= p:
            right = f"({right})"
        return f"{left} {node.op} {right}"
    raise TypeError(f"not an expression node: {node!r}")


# evaluation -----------------------------------------------------------------

Value = Union[RadicalNumber, float]


def _div(a: Value, b: Value) -> Value:
    if isinstance(b, RadicalNumber):
        if b.is_zero():
            raise DivisionByZero("division by zero")
        if isinstance(a, RadicalNumber) and b.is_monomial():
            return a * b.reciprocal()
        b = rad_to_float(b)
    elif b == 0.0:
        raise DivisionByZero("division by zero")
    return float(a) / b


def _sqrt(a: Value) -> Value:
    if isinstance(a, RadicalNumber):
        if a.is_rational():
            r = a.rational_value()
            if r < 0:
                raise NegativeSqrt(f"square root of negative value {r}")
            return sqrt_rational(r)
        a = rad_to_float(a)
    if a < 0:
        raise NegativeSqrt(f"square root of negative value {a}")
    return math.sqrt(a)


def _pow(base: Value, exponent: Value) -> Value:
    e = exponent.rational_value() if isinstance(exponent, RadicalNumber) else exponent
    if isinstance(e, float) or Fraction(e).denominator != 1:
        raise ValueError(f"non-integer exponent {e}")
    e = int(e)
    if e < 0 and float(base) == 0.0:
        raise DivisionByZero("zero to a negative power")
    if isinstance(base, RadicalNumber):
        if e >= 0 or base.is_monomial():
            return base ** e
        base = rad_to_float(base)
    return base ** e


def _binop(op: str, a: Value, b: Value) -> Value:
    if op == "/":
        return _div(a, b)
    if isinstance(a, float) or isinstance(b, float):
        a, b = float(a), float(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    return a * b


def evaluate(node: WeightExpr, env: dict) -> Value:
    """Exact bottom-up evaluation; degrades to ``float`` where exactness is lost."""
    if isinstance(node, Num):
        return RadicalNumber.rational(node.value)
    if isinstance(node, Var):
        return RadicalNumber.coerce(env[node.name])
    if isinstance(node, Neg):
        return -evaluate(node.operand, env)
    if isinstance(node, Sqrt):
        return _sqrt(evaluate(node.arg, env))
    if isinstance(node, Pow):
        return _pow(evaluate(node.base, env), evaluate(node.exponent, env))
    return _binop(node.op, evaluate(node.left, env), evaluate(node.right, env))


def eval_weight(e: WeightExpr, du: int, dv: int) -> Value:
    """Evaluate a weight at the degree pair ``(du, dv)``.

    Returns a :class:`RadicalNumber` when the value is exact and a ``float``
    otherwise (the type is the exactness flag).

    >>> str(eval_weight(parse_weight("sqrt(du^2+dv^2)"), 2, 3))
    'sqrt(13)'
    """
    if du < 1 or dv < 1:
        raise ValueError(f"degrees must be positive, got ({du}, {dv})")
    return evaluate(e, {"du": du, "dv": dv})


def eval_float(node: WeightExpr, env: dict) -> float:
    """Plain floating-point evaluation, used as an exactness cross-check."""
    if isinstance(node, Num):
        return float(node.value)
    if isinstance(node, Var):
        return float(env[node.name])
    if isinstance(node, Neg):
        return -eval_float(node.operand, env)
    if isinstance(node, Sqrt):
        return math.sqrt(eval_float(node.arg, env))
    if isinstance(node, Pow):
        return eval_float(node.base, env) ** int(eval_float(node.exponent, env))
    a, b = eval_float(node.left, env), eval_float(node.right, env)
    return {"+": a + b, "-": a - b, "*": a * b, "/": a / b if b else math.inf}[node.op]

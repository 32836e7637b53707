"""Expression language for elements and tensors, and the measure literal syntax.

The grammar lives in ``docs/grammar.ebnf``.  Lexing notes:

* ``T*`` with no space between the two characters is always one token, the
  adjoint shift.  ``T*T`` is therefore ``T*`` juxtaposed with ``T`` (which
  is ``I``).  Write ``T * T`` or ``T'*T`` for other readings.
* ``T`` followed by ``(int, int)`` is a monomial literal ``T(n,m)``.
* ``(x)`` is the tensor product and binds loosest of all operators.
* ``p/q`` with no spaces is a single rational literal.
* Adjacent operands multiply, so ``3/4 i`` is ``(3/4)*i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import Element, Monomial
from .coalgebra import TensorElement, tensor
from .errors import EvaluationError, ExprSyntaxError
from .measures import CircleMeasure, dirac, haar_measure
from .scalars import GaussianRational

__all__ = [
    "Mono", "Shift", "ShiftAdj", "Ident", "Imag", "Num",
    "Neg", "Add", "Sub", "Mul", "Pow", "Adj", "Tensor",
    "Expression", "tokenize", "parse", "to_text", "evaluate", "parse_measure",
]


# --- AST -----------------------------------------------------------------------


@dataclass(frozen=True)
class Mono:
    n: int
    m: int


@dataclass(frozen=True)
class Shift:
    pass


@dataclass(frozen=True)
class ShiftAdj:
    pass


@dataclass(frozen=True)
class Ident:
    pass


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Neg:
    operand: Expression


@dataclass(frozen=True)
class Add:
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Sub:
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Mul:
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Pow:
    base: Expression
    exponent: int


@dataclass(frozen=True)
class Adj:
    operand: Expression


@dataclass(frozen=True)
class Tensor:
    left: Expression
    right: Expression


Expression = Union[Mono, Shift, ShiftAdj, Ident, Imag, Num, Neg, Add, Sub, Mul, Pow, Adj, Tensor]


# --- lexer -----------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int  # byte offset into the UTF-8 source


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<MONO>T\s*\(\s*\d+\s*,\s*\d+\s*\))
  | (?P<TSTAR>T\*)
  | (?P<T>T)
  | (?P<I>I)
  | (?P<IMAG>i)
  | (?P<NUM>\d+(?:/\d+)?)
  | (?P<TENSOR>\(x\))
  | (?P<OP>[-+*^'()])
    """,
    re.VERBOSE,
)

_ATOM_START = {"MONO", "TSTAR", "T", "I", "IMAG", "NUM", "("}


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos), frozenset(_ATOM_START))
        kind = match.lastgroup
        if kind != "ws":
            lexeme = match.group()
            if kind == "OP":
                kind = lexeme
            tokens.append(Token(kind, lexeme, _byte_offset(text, pos)))
        pos = match.end()
    tokens.append(Token("EOF", "", _byte_offset(text, len(text))))
    return tokens


# --- parser ------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected) -> ExprSyntaxError:
        tok = self.tok
        what = "end of input" if tok.kind == "EOF" else repr(tok.text)
        return ExprSyntaxError(f"unexpected {what}", tok.offset, frozenset(expected))

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise self.fail({kind})
        return self.advance()

    def parse(self) -> Expression:
        node = self.expression()
        if self.tok.kind != "EOF":
            raise self.fail({"(x)", "+", "-", "*", "^", "'", ")", "EOF"} | _ATOM_START)
        return node

    def expression(self) -> Expression:
        node = self.sum()
        while self.tok.kind == "TENSOR":
            self.advance()
            node = Tensor(node, self.sum())
        return node

    def sum(self) -> Expression:
        node = self.product()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            right = self.product()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def product(self) -> Expression:
        node = self.unary()
        while True:
            if self.tok.kind == "*":
                self.advance()
                node = Mul(node, self.unary())
            elif self.tok.kind in _ATOM_START:
                node = Mul(node, self.unary())
            else:
                return node

    def unary(self) -> Expression:
        if self.tok.kind == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expression:
        node = self.postfix()
        while self.tok.kind == "^":
            self.advance()
            tok = self.tok
            if tok.kind != "NUM" or "/" in tok.text:
                raise self.fail({"natural number"})
            self.advance()
            node = Pow(node, int(tok.text))
            # "x^2'" reads as (x^2)'
            while self.tok.kind == "'":
                self.advance()
                node = Adj(node)
        return node

    def postfix(self) -> Expression:
        node = self.atom()
        while self.tok.kind == "'":
            self.advance()
            node = Adj(node)
        return node

    def atom(self) -> Expression:
        tok = self.tok
        kind = tok.kind
        if kind == "MONO":
            self.advance()
            n, m = re.findall(r"\d+", tok.text)
            return Mono(int(n), int(m))
        if kind == "TSTAR":
            self.advance()
            return ShiftAdj()
        if kind == "T":
            self.advance()
            return Shift()
        if kind == "I":
            self.advance()
            return Ident()
        if kind == "IMAG":
            self.advance()
            return Imag()
        if kind == "NUM":
            self.advance()
            num, _, den = tok.text.partition("/")
            if den and int(den) == 0:
                raise ExprSyntaxError("zero denominator", tok.offset, frozenset({"nonzero denominator"}))
            return Num(Fraction(int(num), int(den) if den else 1))
        if kind == "(":
            self.advance()
            node = self.expression()
            self.expect(")")
            return node
        raise self.fail(_ATOM_START | {"-"})


def parse(text: str) -> Expression:
    """Parse an expression; raises :class:`ExprSyntaxError` with byte offset and expected tokens."""
    return _Parser(text).parse()


# --- printer -------------------------------------------------------------------------


def _prec(node: Expression) -> int:
    if isinstance(node, Tensor):
        return 0
    if isinstance(node, (Add, Sub)):
        return 1
    if isinstance(node, Mul):
        return 2
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    if isinstance(node, Adj):
        return 5
    return 6


def _wrap(node: Expression, minimum: int) -> str:
    s = to_text(node)
    return s if _prec(node) >= minimum else f"({s})"


def to_text(node: Expression) -> str:
    """Print with the fewest parentheses that reparse to the same tree."""
    if isinstance(node, Mono):
        return f"T({node.n},{node.m})"
    if isinstance(node, Shift):
        return "T"
    if isinstance(node, ShiftAdj):
        return "T*"
    if isinstance(node, Ident):
        return "I"
    if isinstance(node, Imag):
        return "i"
    if isinstance(node, Num):
        v = node.value
        if v < 0:
            raise ValueError("negative literals are written with unary minus")
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Tensor):
        return f"{_wrap(node.left, 0)} (x) {_wrap(node.right, 1)}"
    if isinstance(node, Add):
        return f"{_wrap(node.left, 1)} + {_wrap(node.right, 2)}"
    if isinstance(node, Sub):
        return f"{_wrap(node.left, 1)} - {_wrap(node.right, 2)}"
    if isinstance(node, Mul):
        return f"{_wrap(node.left, 2)} * {_wrap(node.right, 3)}"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, 3)
    if isinstance(node, Pow):
        return f"{_wrap(node.base, 4)}^{node.exponent}"
    if isinstance(node, Adj):
        return _wrap(node.operand, 5) + "'"
    raise TypeError(f"not an expression node: {node!r}")


# --- evaluation ----------------------------------------------------------------------

Value = Union[Element, TensorElement]


def _scalar_of(v: Value) -> GaussianRational | None:
    return v.scalar_value() if isinstance(v, Element) else None


def _add(a: Value, b: Value, sign: int) -> Value:
    if isinstance(a, Element) and isinstance(b, Element):
        return a + b if sign > 0 else a - b
    if isinstance(a, TensorElement) and isinstance(b, TensorElement) and a.degree == b.degree:
        return a + b if sign > 0 else a - b
    raise EvaluationError("cannot add an element and a tensor (or tensors of different degree)")


def multiply(a: Value, b: Value) -> Value:
    """Product of two values; a scalar element may scale a tensor."""
    if isinstance(a, Element) and isinstance(b, Element):
        return a * b
    if isinstance(a, TensorElement) and isinstance(b, TensorElement):
        if a.degree != b.degree:
            raise EvaluationError(f"cannot multiply tensors of degree {a.degree} and {b.degree}")
        return a * b
    c = _scalar_of(a)
    if c is not None:
        return b.scale(c)
    c = _scalar_of(b)
    if c is not None:
        return a.scale(c)
    raise EvaluationError("an element can multiply a tensor only if it is a scalar multiple of I")


def _tensor(a: Value, b: Value) -> TensorElement:
    if isinstance(a, Element) and isinstance(b, Element):
        return tensor(a, b)
    if isinstance(a, TensorElement) and isinstance(b, Element) and a.degree == 2:
        return TensorElement(3, [(key + (mono,), c * cb) for key, c in a.items() for mono, cb in b.items()])
    if isinstance(a, Element) and isinstance(b, TensorElement) and b.degree == 2:
        return TensorElement(3, [((mono,) + key, ca * c) for mono, ca in a.items() for key, c in b.items()])
    raise EvaluationError("tensor products are limited to degree 3")


def evaluate(node: Expression) -> Value:
    """Evaluate to an :class:`Element`, or a :class:`TensorElement` when ``(x)`` is used."""
    if isinstance(node, Mono):
        return Element.monomial(node.n, node.m)
    if isinstance(node, Shift):
        return Element.monomial(1, 0)
    if isinstance(node, ShiftAdj):
        return Element.monomial(0, 1)
    if isinstance(node, Ident):
        return Element.identity()
    if isinstance(node, Imag):
        return Element.scalar(GaussianRational(0, 1))
    if isinstance(node, Num):
        return Element.scalar(node.value)
    if isinstance(node, Neg):
        return -evaluate(node.operand)
    if isinstance(node, Add):
        return _add(evaluate(node.left), evaluate(node.right), 1)
    if isinstance(node, Sub):
        return _add(evaluate(node.left), evaluate(node.right), -1)
    if isinstance(node, Mul):
        return multiply(evaluate(node.left), evaluate(node.right))
    if isinstance(node, Pow):
        return evaluate(node.base) ** node.exponent
    if isinstance(node, Adj):
        return evaluate(node.operand).adjoint()
    if isinstance(node, Tensor):
        return _tensor(evaluate(node.left), evaluate(node.right))
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_text(text: str) -> Value:
    return evaluate(parse(text))


# --- measure literals ------------------------------------------------------------------

_MEASURE_RE = re.compile(
    r"(?P<ws>\s+)|(?P<KW>dirac|density|haar)|(?P<NUM>\d+(?:/\d+)?)|(?P<IMAG>i)|(?P<OP>[-+*(){}:,])"
)


def parse_measure(text: str) -> CircleMeasure:
    """Parse ``dirac(p/q) * w + density{k: c, ...} + haar``.

    Weights are a signed real or imaginary literal (``-2``, ``3/4i``, ``i``)
    or a parenthesized complex one (``(1/2-3i)``).
    """
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        match = _MEASURE_RE.match(text, pos)
        if match is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos), frozenset({"dirac", "density", "haar"}))
        if match.lastgroup != "ws":
            kind = match.lastgroup if match.lastgroup != "OP" else match.group()
            if kind == "KW":
                kind = match.group()
            tokens.append(Token(kind, match.group(), _byte_offset(text, pos)))
        pos = match.end()
    tokens.append(Token("EOF", "", _byte_offset(text, len(text))))
    return _MeasureParser(tokens).parse()


class _MeasureParser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected) -> ExprSyntaxError:
        tok = self.tok
        what = "end of input" if tok.kind == "EOF" else repr(tok.text)
        return ExprSyntaxError(f"unexpected {what}", tok.offset, frozenset(expected))

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise self.fail({kind})
        return self.advance()

    def parse(self) -> CircleMeasure:
        sign = 1
        if self.tok.kind == "-":
            self.advance()
            sign = -1
        total = self.term().scale(sign)
        while self.tok.kind in ("+", "-"):
            sign = 1 if self.advance().kind == "+" else -1
            total = total + self.term().scale(sign)
        if self.tok.kind != "EOF":
            raise self.fail({"+", "-", "EOF"})
        return total

    def term(self) -> CircleMeasure:
        kind = self.tok.kind
        if kind == "dirac":
            self.advance()
            self.expect("(")
            angle = self.rational()
            self.expect(")")
            weight = GaussianRational(1)
            if self.tok.kind == "*":
                self.advance()
                weight = self.weight()
            return dirac(angle, weight)
        if kind == "density":
            self.advance()
            self.expect("{")
            coeffs: dict[int, GaussianRational] = {}
            if self.tok.kind != "}":
                while True:
                    k = self.rational()
                    if k.denominator != 1:
                        raise self.fail({"integer frequency"})
                    self.expect(":")
                    coeffs[int(k)] = coeffs.get(int(k), GaussianRational(0)) + self.weight()
                    if self.tok.kind != ",":
                        break
                    self.advance()
            self.expect("}")
            return CircleMeasure(density=coeffs)
        if kind == "haar":
            self.advance()
            return haar_measure()
        raise self.fail({"dirac", "density", "haar"})

    def number(self) -> Fraction:
        tok = self.expect("NUM")
        num, _, den = tok.text.partition("/")
        if den and int(den) == 0:
            raise ExprSyntaxError("zero denominator", tok.offset, frozenset({"nonzero denominator"}))
        return Fraction(int(num), int(den) if den else 1)

    def rational(self) -> Fraction:
        sign = 1
        if self.tok.kind == "-":
            self.advance()
            sign = -1
        return sign * self.number()

    def weight(self) -> GaussianRational:
        if self.tok.kind == "(":
            self.advance()
            value = self.complex_sum()
            self.expect(")")
            return value
        sign = 1
        if self.tok.kind == "-":
            self.advance()
            sign = -1
        return self.imaginary_or_real() * sign

    def complex_sum(self) -> GaussianRational:
        sign = 1
        if self.tok.kind == "-":
            self.advance()
            sign = -1
        total = self.imaginary_or_real() * sign
        while self.tok.kind in ("+", "-"):
            sign = 1 if self.advance().kind == "+" else -1
            total = total + self.imaginary_or_real() * sign
        return total

    def imaginary_or_real(self) -> GaussianRational:
        if self.tok.kind == "IMAG":
            self.advance()
            return GaussianRational(0, 1)
        value = self.number()
        if self.tok.kind == "IMAG":
            self.advance()
            return GaussianRational(0, value)
        return GaussianRational(value)

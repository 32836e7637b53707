import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exprgen import random_expression
from toeplitz import coalgebra as co
from toeplitz.algebra import Element, Monomial
from toeplitz.errors import EvaluationError, ExprSyntaxError
from toeplitz.expr import (
    Add, Adj, Mono, Mul, Neg, Num, Pow, Shift, ShiftAdj, Tensor,
    evaluate, evaluate_text, parse, to_text, tokenize,
)
from toeplitz.scalars import GaussianRational as G


def mono(n, m, c=1):
    return Element.monomial(n, m, c)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("T*T", mono(0, 0)),
        ("T * T", mono(2, 0)),
        ("T'*T", mono(0, 0)),
        ("T(1,0)^2 * T(0,1)", mono(2, 1)),
        ("T T*", mono(1, 1)),
        ("I - T T*", mono(0, 0) - mono(1, 1)),
        ("1/2 i T(3, 4)", mono(3, 4, G(0, Fraction(1, 2)))),
        ("(2 + 3i)'", Element.scalar(G(2, -3))),
        ("-T^2'", -mono(2, 0).adjoint()),
        ("(T - T(2,1))(T* - T(1,2))", mono(1, 1) - mono(2, 2)),
    ],
)
def test_evaluation_examples(text, expected):
    assert evaluate_text(text) == expected


def test_tstar_lexing():
    assert [t.kind for t in tokenize("T*T")] == ["TSTAR", "T", "EOF"]
    assert [t.kind for t in tokenize("T * T")] == ["T", "*", "T", "EOF"]
    assert [t.kind for t in tokenize("T'*T")] == ["T", "'", "*", "T", "EOF"]
    assert parse("T*T") == Mul(ShiftAdj(), Shift())
    assert parse("T * T") == Mul(Shift(), Shift())
    assert parse("T'*T") == Mul(Adj(Shift()), Shift())


def test_precedence():
    assert parse("T^2'") == Adj(Pow(Shift(), 2))
    assert parse("T'^2") == Pow(Adj(Shift()), 2)
    assert parse("T + T * T") == Add(Shift(), Mul(Shift(), Shift()))
    assert parse("T * T * T") == Mul(Mul(Shift(), Shift()), Shift())
    assert parse("-T^2") == Neg(Pow(Shift(), 2))
    assert parse("T (x) T + T") == Tensor(Shift(), Add(Shift(), Shift()))


def test_tensor_literal():
    v = evaluate_text("(T(1,0) (x) T(0,1))")
    assert v == co.tensor(mono(1, 0), mono(0, 1))
    assert evaluate_text("T (x) T* (x) I").degree == 3
    assert evaluate_text("2 * (T (x) T)") == co.tensor(mono(1, 0), mono(1, 0)).scale(2)


def test_tensor_errors():
    with pytest.raises(EvaluationError):
        evaluate_text("T (x) T (x) T (x) T")
    with pytest.raises(EvaluationError):
        evaluate_text("T + (T (x) T)")
    with pytest.raises(EvaluationError):
        evaluate_text("T * (T (x) T)")


@pytest.mark.parametrize(
    "text, offset",
    [("T +", 3), ("T(1,", 3), ("2 ^ 1/2", 4), ("T ^ T", 4), ("(T", 2), ("T )", 2), ("é", 0), ("T + é", 4), ("1/0", 0)],
)
def test_syntax_errors_carry_byte_offsets(text, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset
    assert info.value.expected


def test_offsets_count_bytes_not_characters():
    with pytest.raises(ExprSyntaxError) as info:
        parse("é + ?")
    assert info.value.offset == 0
    with pytest.raises(ExprSyntaxError) as info:
        parse("T + (T ?")
    assert info.value.offset == 7


@pytest.mark.parametrize("seed", range(50))
def test_round_trip(seed):
    tree = random_expression(random.Random(seed))
    text = to_text(tree)
    assert parse(text) == tree
    assert to_text(parse(text)) == text


@given(st.integers(0, 2**32))
def test_round_trip_preserves_value(seed):
    tree = random_expression(random.Random(seed), depth=3, tensors=False)
    assert evaluate(parse(to_text(tree))) == evaluate(tree)


def test_printer_uses_minimal_parentheses():
    assert to_text(Mul(Add(Shift(), Shift()), Shift())) == "(T + T) * T"
    assert to_text(Add(Shift(), Mul(Shift(), Shift()))) == "T + T * T"
    assert to_text(Neg(Num(Fraction(3, 2)))) == "-3/2"
    assert to_text(Pow(Mono(1, 2), 3)) == "T(1,2)^3"

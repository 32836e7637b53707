import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import scalars
from toeplitz.scalars import Cyclotomic, GaussianRational, root_of_unity

G = GaussianRational


def test_arithmetic_is_exact():
    a, b = G(Fraction(1, 2), 1), G(-3, Fraction(1, 4))
    assert a + b == G(Fraction(-5, 2), Fraction(5, 4))
    assert a * b == G(Fraction(-3, 2) - Fraction(1, 4), Fraction(1, 8) - 3)
    assert (a / b) * b == a
    assert G(0, 1) * G(0, 1) == -1


def test_mixing_with_float_falls_back_to_complex():
    assert isinstance(G(1, 1) * 0.5, complex)


@pytest.mark.parametrize("text", ["7", "-i", "i", "1/2+3/4i", "-2/3-i", "5i", "0"])
def test_str_parse_round_trip(text):
    assert str(G.parse(text)) == text


@given(scalars)
def test_parse_inverts_str(c):
    assert G.parse(str(c)) == c


@given(scalars, scalars)
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a.abs2() == (a * a.conjugate()).re


@pytest.mark.parametrize("turns", [Fraction(k, d) for d in (3, 5, 6, 8, 12) for k in range(d)])
def test_root_of_unity_matches_float(turns):
    z = root_of_unity(turns)
    assert abs(complex(z) - cmath.exp(2j * cmath.pi * turns)) < 1e-12


def test_quarter_turns_stay_gaussian():
    assert root_of_unity(Fraction(1, 4)) == G(0, 1)
    assert isinstance(root_of_unity(Fraction(3, 4)), GaussianRational)
    assert isinstance(root_of_unity(Fraction(1, 3)), Cyclotomic)


@given(st.integers(1, 11), st.integers(1, 11), st.integers(1, 11))
def test_roots_of_unity_multiply_by_adding_angles(a, b, d):
    x, y = Fraction(a, d), Fraction(b, 12)
    assert root_of_unity(x) * root_of_unity(y) == root_of_unity(x + y)


def test_cyclotomic_downcasts_when_rational():
    w = root_of_unity(Fraction(1, 3))
    # 1 + w + w^2 = 0
    assert 1 + w + w * w == 0
    assert (w * w * w).to_gaussian() == 1
    assert w.to_gaussian() is None
    assert w.conjugate() == root_of_unity(Fraction(2, 3))


def test_cyclotomic_order_must_contain_i():
    with pytest.raises(ValueError):
        Cyclotomic(6, {0: 1})


@pytest.mark.parametrize("order", [4, 8, 12, 20, 24, 28, 36, 60, 84, 180])
def test_gaussian_embedding_round_trips(order):
    for g in (G(0, 1), G(Fraction(1, 2), -3), G(5)):
        c = Cyclotomic.from_gaussian(g, order)
        assert c.to_gaussian() == g
        assert abs(complex(c) - complex(g)) < 1e-12


@pytest.mark.parametrize("order", [12, 20, 60, 84])
def test_cyclotomic_products_match_floats(order):
    import random

    rng = random.Random(order)
    for _ in range(20):
        a = Cyclotomic(order, {rng.randrange(order): Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(3)})
        b = Cyclotomic(order, {rng.randrange(order): Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(3)})
        assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-9
        assert abs(complex(a + b) - (complex(a) + complex(b))) < 1e-9
        assert abs(complex(a.conjugate()) - complex(a).conjugate()) < 1e-9
        assert (a * b == b * a) and (a - a) == 0

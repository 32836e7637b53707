import random

import numpy as np
import pytest
from hypothesis import given, settings

from oracles import element_matrix
from strategies import diagonal_elements, elements
from toeplitz import algebra as alg
from toeplitz import numerics as num
from toeplitz.algebra import Element, Monomial
from toeplitz.errors import GuardBandTooSmall, NoConvergence, SpreadTooLarge
from toeplitz.sampling import random_element
from toeplitz.scalars import GaussianRational as G


def dense(a, N):
    return element_matrix([((m.n, m.m), complex(c)) for m, c in a.items()], N)


@given(elements)
def test_truncate_matches_oracle(a):
    assert np.allclose(num.truncate(a, 20).entries, dense(a, 20))


def test_truncate_dump_shape():
    d = num.truncate(Element.monomial(1, 0, G(0, 2)), 3).dump()
    assert d[1][0] == [0.0, 2.0] and len(d) == 3 and len(d[0]) == 3


def test_corner_product_check_passes():
    rng = random.Random(0)
    for _ in range(20):
        assert num.corner_product_check(random_element(rng), random_element(rng), 64)


def test_corner_check_catches_a_wrong_law():
    # the full truncated products differ in the last rows, which the guard band hides
    T, Ts = Element.monomial(1, 0), Element.monomial(0, 1)
    full = num.truncate(T * Ts, 8).entries - (num.truncate(T, 8) @ num.truncate(Ts, 8)).entries
    assert np.max(np.abs(full)) == 0
    full = num.truncate(Ts * T, 8).entries - (num.truncate(Ts, 8) @ num.truncate(T, 8)).entries
    assert np.max(np.abs(full)) == 1
    assert num.corner_deviation(Ts, T, 8) == 0


def test_guard_band_precondition():
    with pytest.raises(GuardBandTooSmall):
        num.corner_product_check(Element.monomial(5, 0), Element.monomial(0, 5), 10)


@settings(max_examples=40)
@given(elements)
def test_op_norm_matches_lapack(a):
    m = num.truncate(a, 24)
    assert num.op_norm(m) == pytest.approx(float(np.linalg.norm(m.entries, 2)), rel=1e-8, abs=1e-12)


def test_op_norm_examples():
    assert num.op_norm(num.truncate(Element.identity() - Element.monomial(1, 1, 2), 8)) == pytest.approx(1, abs=1e-10)
    assert num.op_norm(num.truncate(Element(), 5)) == 0.0
    # all-ones start lies in the kernel of this matrix
    assert num.op_norm(np.array([[1, -1], [1, -1]])) == pytest.approx(2, abs=1e-10)


def test_op_norm_reports_non_convergence():
    m = num.truncate(Element.monomial(1, 0) + Element.monomial(0, 1), 64)
    with pytest.raises(NoConvergence):
        num.op_norm(m, tol=1e-14, max_iter=3)


@given(diagonal_elements)
def test_norm_T0_agrees_with_truncation(a):
    N = alg.max_entry(a) + 2
    assert num.op_norm(num.truncate(a, N)) == pytest.approx(alg.norm_T0(a).value, abs=1e-10)


@given(elements)
def test_finite_rank_oracle_agrees_with_diagonal_sums(a):
    assert num.finite_rank_oracle(a) == alg.is_compact(a)


def test_rotation_average_extracts_components():
    a = Element({Monomial(0, 0): 1, Monomial(0, 1): G(0, 1), Monomial(2, 0): 3})
    # k = +-3 lies outside the index range and needs M > spread + 3
    M = 2 * alg.spread(a) + 2
    for k in range(-3, 4):
        assert num.max_deviation(num.rotation_average(a, k, M), alg.graded_component(a, k)) <= 1e-12


def test_rotation_average_rejects_aliasing():
    a = Element.monomial(0, 1) + Element.monomial(1, 0)
    with pytest.raises(SpreadTooLarge):
        num.rotation_average(a, 0, 2)
    with pytest.raises(SpreadTooLarge):
        num.rotation_average(a, 2, 3)

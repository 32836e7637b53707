import random

import numpy as np
import pytest
from hypothesis import given, settings

from oracles import monomial_matrix, reduce_word, word
from strategies import elements, monomials
from toeplitz import coalgebra as co
from toeplitz.algebra import Element, Monomial, antipode
from toeplitz.coalgebra import TensorElement
from toeplitz.errors import DegreeMismatch
from toeplitz.scalars import GaussianRational as G


def tensor_matrix(x: TensorElement, N: int) -> np.ndarray:
    out = np.zeros((N**x.degree, N**x.degree), dtype=complex)
    for key, c in x.items():
        block = np.ones((1, 1))
        for mono in key:
            block = np.kron(block, monomial_matrix(mono.n, mono.m, N))
        out += complex(c) * block
    return out


def test_delta_is_diagonal_on_monomials():
    d = co.delta(Element.monomial(2, 1, G(0, 1)))
    assert d.terms == {(Monomial(2, 1), Monomial(2, 1)): G(0, 1)}
    assert str(co.delta(Element.monomial(1, 0))) == "(T(1,0) (x) T(1,0))"


@settings(max_examples=50)
@given(elements, elements)
def test_delta_matches_kronecker_products(a, b):
    N, d = 18, 8  # guard band covers exponents up to 8
    lhs = tensor_matrix(co.delta(a * b), N)
    rhs = tensor_matrix(co.delta(a), N) @ tensor_matrix(co.delta(b), N)
    # compare on the corner where no truncation effects reach
    keep = [i * N + j for i in range(N - d) for j in range(N - d)]
    assert np.allclose(lhs[np.ix_(keep, keep)], rhs[np.ix_(keep, keep)])


@given(elements, elements)
def test_delta_is_a_unital_star_homomorphism(a, b):
    assert co.delta(a * b) == co.delta(a) * co.delta(b)
    assert co.delta(a.adjoint()) == co.delta(a).adjoint()
    assert co.delta(Element.identity()) == TensorElement.identity()


@given(elements)
def test_coassociative_and_cocommutative(a):
    d = co.delta(a)
    assert co.delta_left(d) == co.delta_right(d) == co.delta2(a)
    assert co.flip(d) == d


@given(monomials)
def test_weak_antipode_matches_word_reduction(x):
    # mu(id (x) S (x) id) delta2(T_{n,m}) = T_{n,m} T_{m,n} T_{n,m}
    n, m = x.n, x.m
    assert reduce_word(word(n, m) + word(m, n) + word(n, m)) == (n, m)
    assert reduce_word(word(m, n) + word(n, m) + word(m, n)) == (m, n)
    assert co.weak_hopf_axioms(Element({x: 1})) == (True, True)


@given(elements)
def test_weak_hopf_axioms_on_elements(a):
    assert co.weak_hopf_check(a)


def test_mu_is_multiplication_in_either_order():
    x = co.tensor(Element.monomial(1, 0), Element.monomial(0, 2), Element.monomial(3, 1))
    a, b, c = (Element({k: 1}) for k in next(iter(x.terms)))
    assert co.mu(x) == (a * b) * c == a * (b * c)


def test_antipode_is_not_a_true_antipode():
    # mu(S (x) id) delta is not the counit times I
    a = Element.monomial(1, 0)
    assert co.mu(co.slotwise(co.delta(a), (Monomial.inverse, None))) == Element.identity()
    b = Element.monomial(0, 1)
    assert co.mu(co.slotwise(co.delta(b), (Monomial.inverse, None))) == Element.monomial(1, 1)


def test_tensor_degrees_are_checked():
    with pytest.raises(DegreeMismatch):
        TensorElement(4)
    with pytest.raises(DegreeMismatch):
        co.delta(Element.identity()) + co.delta2(Element.identity())


def test_apply_tensor_matches_kronecker():
    N = 6
    x = co.tensor(Element.monomial(1, 0), Element.monomial(0, 1)) + co.tensor(Element.monomial(2, 2), Element.identity())
    vec = np.zeros(N * N, dtype=complex)
    vec[0 * N + 1] = 1
    dense = tensor_matrix(x, N) @ vec
    got = co.apply_tensor(x, {(0, 1): 1})
    expect = {(i // N, i % N): v for i, v in enumerate(dense) if abs(v) > 0}
    assert {k: complex(v) for k, v in got.items()} == expect


# --- witness ----------------------------------------------------------------------------


def test_witness_target():
    A, x = co.witness_setup()
    assert co.apply_tensor(A, {x: 1}) == {(1, 0): 1}
    A, x = co.witness_setup(mirror=True)
    assert co.apply_tensor(A, {x: 1}) == {(0, 1): 1}


@pytest.mark.parametrize("mirror", [False, True])
def test_witness_holds(mirror):
    report = co.cqg_witness(30, seed=3, mirror=mirror)
    assert report.holds
    assert report.min_lower_bound >= 1


def test_witness_is_seeded():
    a = co.cqg_witness(5, seed=11)
    b = co.cqg_witness(5, seed=11)
    assert [s.B for s in a.samples] == [s.B for s in b.samples]


def test_span_vectors_never_reach_the_forbidden_slot():
    # (T_outer (x) I) delta(T_inner) applied to e_0 (x) e_1: the second factor
    # T_inner e_1 is e_0 only when inner = T_{0,1}, and then the first factor
    # T_outer T_{0,1} e_0 vanishes
    rng = random.Random(0)
    for _ in range(200):
        outer = Monomial(rng.randint(0, 6), rng.randint(0, 6))
        inner = Monomial(rng.randint(0, 6), rng.randint(0, 6))
        s = co.certify(co.span_element([(outer, inner, 1)]))
        assert s.forbidden_component == 0


def test_certify_detects_a_bad_approximant():
    # A itself is not in the span; certify should report the forbidden component
    A, _ = co.witness_setup()
    s = co.certify(A)
    assert s.forbidden_component == 1 and s.lower_bound_squared == 0


@settings(max_examples=30)
@given(elements)
def test_delta_does_not_shrink_truncated_norms(a):
    # delta(A) preserves span{e_j (x) e_j} and acts there as A
    from toeplitz.numerics import op_norm, truncate

    N = 8
    assert op_norm(tensor_matrix(co.delta(a), N)) >= op_norm(truncate(a, N)) - 1e-9

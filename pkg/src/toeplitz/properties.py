"""The property sweep behind ``toeplitz axioms``.

Each law takes a seeded ``random.Random`` and returns True when it holds on
the case drawn from it.  Case seeds are derived as ``f"{seed}:{law}:{i}"``,
so a sweep is reproducible bit for bit and laws are independent of the order
they run in.
"""

from __future__ import annotations

import random
from collections.abc import Callable
from fractions import Fraction

from . import algebra as alg
from . import coalgebra as co
from . import dual
from . import measures as ms
from . import numerics as num
from .algebra import Element, Monomial
from .sampling import (
    random_diagonal_element,
    random_element,
    random_mixed_element,
    random_monomial,
    random_scalar,
)

Law = Callable[[random.Random], bool]
LAWS: dict[str, Law] = {}


def law(name: str):
    def register(fn: Law) -> Law:
        LAWS[name] = fn
        return fn

    return register


@law("inverse-semigroup")
def _inverse(rng):
    x = random_monomial(rng, 20)
    return x * x.inverse() * x == x and x.inverse() * x * x.inverse() == x.inverse()


@law("associativity")
def _assoc(rng):
    a, b, c = (random_element(rng) for _ in range(3))
    return (a * b) * c == a * (b * c)


@law("index-additivity")
def _index(rng):
    x, y = random_monomial(rng), random_monomial(rng)
    return (x * y).index == x.index + y.index


@law("projection-semigroup")
def _projections(rng):
    n, m = rng.randint(0, 20), rng.randint(0, 20)
    return Monomial(n, n) * Monomial(m, m) == Monomial(max(n, m), max(n, m))


@law("grading-closure")
def _closure(rng):
    a, b = random_element(rng), random_element(rng)
    for k, ak in alg.graded_components(a).items():
        for l, bl in alg.graded_components(b).items():
            if any(mono.index != k + l for mono in (ak * bl).support()):
                return False
    return True


@law("cauchy-product")
def _cauchy(rng):
    a, b = random_element(rng), random_element(rng)
    ga, gb = alg.graded_components(a), alg.graded_components(b)
    ab = alg.graded_components(a * b)
    for k in set(ab) | {i + j for i in ga for j in gb}:
        expected = Element()
        for i, ai in ga.items():
            if k - i in gb:
                expected = expected + ai * gb[k - i]
        if ab.get(k, Element()) != expected:
            return False
    return True


@law("adjoint-antihomomorphism")
def _adjoint(rng):
    a, b = random_element(rng), random_element(rng)
    return (a * b).adjoint() == b.adjoint() * a.adjoint() and a.adjoint().adjoint() == a


@law("antipode-antihomomorphism")
def _antipode(rng):
    a, b = random_element(rng), random_element(rng)
    return alg.antipode(a * b) == alg.antipode(b) * alg.antipode(a)


@law("compactness-three-ways")
def _compact(rng):
    a = random_mixed_element(rng)
    return alg.is_compact(a) == (not alg.symbol(a)) == num.finite_rank_oracle(a)


@law("symbol-multiplicative")
def _symbol(rng):
    a, b = random_element(rng), random_element(rng)
    return alg.symbol(a * b) == alg.symbol(a) * alg.symbol(b)


@law("eventual-constancy")
def _constancy(rng):
    a = random_diagonal_element(rng)
    top = alg.max_entry(a)
    tail = alg.gelfand_transform_T0(a, top)
    return all(alg.gelfand_transform_T0(a, m) == tail for m in range(top, top + 5))


@law("coassociativity")
def _coassoc(rng):
    d = co.delta(random_element(rng))
    return co.delta_left(d) == co.delta_right(d)


@law("cocommutativity")
def _cocomm(rng):
    d = co.delta(random_element(rng))
    return co.flip(d) == d


@law("delta-homomorphism")
def _delta_hom(rng):
    a, b = random_element(rng), random_element(rng)
    return (
        co.delta(a * b) == co.delta(a) * co.delta(b)
        and co.delta(a.adjoint()) == co.delta(a).adjoint()
        and co.delta(Element.identity()) == co.TensorElement.identity()
    )


@law("weak-hopf")
def _weak_hopf(rng):
    return co.weak_hopf_check(random_element(rng, max_terms=10))


@law("witness-w1")
def _witness(rng):
    return co.cqg_witness(1, rng.randrange(2**32)).holds


@law("witness-w2")
def _witness_mirror(rng):
    return co.cqg_witness(1, rng.randrange(2**32), mirror=True).holds


@law("counit-unit")
def _counit(rng):
    rho = dual.random_table(rng, 6)
    eps = dual.counit()
    return dual.rules_equal(dual.convolve(eps, rho), rho, 6) and dual.rules_equal(dual.convolve(rho, eps), rho, 6)


@law("convolution-commutative-associative")
def _conv(rng):
    f, g, h = (dual.random_table(rng, 5) for _ in range(3))
    return dual.rules_equal(f * g, g * f, 5) and dual.rules_equal((f * g) * h, f * (g * h), 5)


@law("haar-absorption")
def _haar(rng):
    return dual.is_haar(dual.haar(), [dual.random_table(rng, 6)], depth=6)


@law("k-perp-closure")
def _kperp(rng):
    f = ms.measure_to_functional(_random_atomic_measure(rng))
    g = ms.measure_to_functional(_random_atomic_measure(rng))
    return dual.in_k_perp(f, 8) and dual.in_k_perp(g, 8) and dual.in_k_perp(f * g, 8)


@law("measure-convolution-theorem")
def _conv_theorem(rng):
    a, b = _random_atomic_measure(rng), _random_atomic_measure(rng)
    ab = ms.convolve_measures(a, b)
    return all(ms.fourier(ab, k) == ms.fourier(a, k) * ms.fourier(b, k) for k in range(-6, 7))


@law("measure-intertwining")
def _intertwine(rng):
    a, b = _random_atomic_measure(rng), _random_atomic_measure(rng)
    lhs = ms.measure_to_functional(ms.convolve_measures(a, b))
    rhs = dual.convolve(ms.measure_to_functional(a), ms.measure_to_functional(b))
    return dual.rules_equal(lhs, rhs, 8)


@law("corner-product")
def _corner(rng):
    return num.corner_product_check(random_element(rng), random_element(rng), 64)


@law("rotation-average")
def _rotation(rng):
    a = random_element(rng)
    M = 2 * alg.spread(a) + 1
    return all(
        num.max_deviation(num.rotation_average(a, k, M), alg.graded_component(a, k)) <= 1e-12
        for k in range(-alg.spread(a), alg.spread(a) + 1)
    )


def _random_atomic_measure(rng: random.Random, max_atoms: int = 3, max_den: int = 12) -> ms.CircleMeasure:
    atoms = [
        (Fraction(rng.randint(0, max_den - 1), rng.randint(1, max_den)), random_scalar(rng))
        for _ in range(rng.randint(1, max_atoms))
    ]
    return ms.CircleMeasure(atoms)


def run_sweep(seed: int = 0, cases: int = 20, laws: list[str] | None = None) -> dict[str, dict]:
    """Run every law on ``cases`` derived seeds; report failing case indices per law."""
    report = {}
    for name in laws or list(LAWS):
        fn = LAWS[name]
        failures = [i for i in range(cases) if not fn(random.Random(f"{seed}:{name}:{i}"))]
        report[name] = {"cases": cases, "failures": failures}
    return report

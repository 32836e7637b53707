"""Seeded random generators shared by the property sweeps, the witness and the tests.

Distribution: monomial exponents uniform on ``[0, max_entry]`` (default 10);
coefficients ``p/q + (r/s)i`` with ``p, r`` uniform on ``[-4, 4]`` and
``q, s`` uniform on ``[1, 3]``.  All draws go through a ``random.Random``
instance so a seed reproduces a run bit for bit.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import Element, Monomial
from .scalars import GaussianRational

MAX_ENTRY = 10


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-4, 4), rng.randint(1, 3))


def random_scalar(rng: random.Random, nonzero: bool = True) -> GaussianRational:
    while True:
        c = GaussianRational(random_rational(rng), random_rational(rng))
        if c or not nonzero:
            return c


def random_monomial(rng: random.Random, max_entry: int = MAX_ENTRY) -> Monomial:
    return Monomial(rng.randint(0, max_entry), rng.randint(0, max_entry))


def random_monomial_of_index(rng: random.Random, k: int, max_entry: int = MAX_ENTRY) -> Monomial:
    lo = max(0, -k)
    hi = max_entry - max(k, 0)
    if hi < lo:
        raise ValueError(f"no monomial of index {k} with entries <= {max_entry}")
    n = rng.randint(lo, hi)
    return Monomial(n, n + k)


def random_element(rng: random.Random, max_terms: int = 6, max_entry: int = MAX_ENTRY) -> Element:
    count = rng.randint(1, max_terms)
    return Element([(random_monomial(rng, max_entry), random_scalar(rng)) for _ in range(count)])


def random_diagonal_element(rng: random.Random, max_terms: int = 6, max_entry: int = MAX_ENTRY) -> Element:
    count = rng.randint(1, max_terms)
    terms = []
    for _ in range(count):
        n = rng.randint(0, max_entry)
        terms.append((Monomial(n, n), random_scalar(rng)))
    return Element(terms)


def random_compact_element(rng: random.Random, max_diagonals: int = 3, max_entry: int = MAX_ENTRY) -> Element:
    """A random element whose every index diagonal sums to zero."""
    terms = []
    for _ in range(rng.randint(1, max_diagonals)):
        k = rng.randint(-max_entry // 2, max_entry // 2)
        coeffs = [random_scalar(rng) for _ in range(rng.randint(1, 3))]
        coeffs.append(-sum(coeffs, GaussianRational(0)))
        terms.extend((random_monomial_of_index(rng, k, max_entry), c) for c in coeffs)
    return Element(terms)


def random_mixed_element(rng: random.Random) -> Element:
    """Plain random, forced-compact, or forced-compact plus one perturbing term."""
    kind = rng.randrange(3)
    if kind == 0:
        return random_element(rng)
    a = random_compact_element(rng)
    if kind == 2:
        a = a + Element([(random_monomial(rng), random_scalar(rng))])
    return a

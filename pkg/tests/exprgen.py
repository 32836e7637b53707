"""Seeded random expression trees for round-trip testing."""

import random
from fractions import Fraction

from toeplitz.expr import Add, Adj, Ident, Imag, Mono, Mul, Neg, Num, Pow, Shift, ShiftAdj, Sub, Tensor


def random_leaf(rng: random.Random):
    kind = rng.randrange(6)
    if kind == 0:
        return Mono(rng.randint(0, 12), rng.randint(0, 12))
    if kind == 1:
        return Shift()
    if kind == 2:
        return ShiftAdj()
    if kind == 3:
        return Ident()
    if kind == 4:
        return Imag()
    return Num(Fraction(rng.randint(0, 20), rng.randint(1, 6)))


def random_expression(rng: random.Random, depth: int = 4, tensors: bool = True):
    if depth == 0 or rng.random() < 0.2:
        return random_leaf(rng)
    kind = rng.randrange(8 if tensors else 7)
    sub = lambda: random_expression(rng, depth - 1, tensors)  # noqa: E731
    if kind == 0:
        return Add(sub(), sub())
    if kind == 1:
        return Sub(sub(), sub())
    if kind == 2:
        return Mul(sub(), sub())
    if kind == 3:
        return Neg(sub())
    if kind == 4:
        return Pow(sub(), rng.randint(0, 4))
    if kind == 5:
        return Adj(sub())
    if kind == 6:
        return random_leaf(rng)
    return Tensor(random_expression(rng, depth - 1, False), random_expression(rng, depth - 1, False))

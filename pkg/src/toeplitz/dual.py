"""Functionals on the Toeplitz algebra and their convolution product.

A functional is determined on finite elements by its values on monomials,
its *rule*.  Because the comultiplication is diagonal on monomials,
convolution is the pointwise product of rules, so the dual algebra is
commutative with the counit (the constant rule 1) as unit.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .algebra import IDENTITY, Element, Monomial
from .errors import DomainError
from .sampling import random_scalar
from .scalars import GaussianRational

__all__ = [
    "Functional",
    "evaluate",
    "convolve",
    "counit",
    "haar",
    "haar0",
    "diagonal_state",
    "table",
    "random_table",
    "probe_grid",
    "rules_equal",
    "haar_constant",
    "satisfies_haar_values",
    "absorbs",
    "is_haar",
    "CesaroResult",
    "cesaro_iterate",
    "in_k_perp",
    "sup_norm",
    "DEFAULT_DEPTH",
]

DEFAULT_DEPTH = 32

Rule = Callable[[Monomial], Any]


def _normalize(value):
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return value


@dataclass(frozen=True, eq=False)
class Functional:
    """A linear functional given by its values on the monomials.

    ``kind`` names the family it was built from; ``k_perp`` caches whether
    it is known to vanish on compact operators (None when unknown).
    """

    rule: Rule
    kind: str = "table"
    params: Mapping[str, Any] = field(default_factory=dict)
    k_perp: bool | None = None

    def value(self, mono: Monomial | tuple[int, int]):
        if not isinstance(mono, Monomial):
            mono = Monomial(*mono)
        return _normalize(self.rule(mono))

    def __call__(self, x):
        if isinstance(x, Element):
            return evaluate(self, x)
        return self.value(x)

    def __mul__(self, other: Functional) -> Functional:
        if isinstance(other, Functional):
            return convolve(self, other)
        return NotImplemented

    def __add__(self, other: Functional) -> Functional:
        if not isinstance(other, Functional):
            return NotImplemented
        both = self.k_perp and other.k_perp
        return Functional(
            lambda mono: self.value(mono) + other.value(mono),
            kind="sum",
            params={"terms": (self, other)},
            k_perp=True if both else None,
        )

    def scale(self, c) -> Functional:
        return Functional(lambda mono: c * self.value(mono), kind="scaled", params={"base": self, "factor": c}, k_perp=self.k_perp)

    def __repr__(self) -> str:
        return f"Functional(kind={self.kind!r})"


def evaluate(f: Functional, a: Element):
    total = GaussianRational(0)
    for mono, c in a.items():
        total = total + c * f.value(mono)
    return total


def convolve(f: Functional, g: Functional) -> Functional:
    """``(f * g)(A) = (f (x) g)(delta A)``, i.e. the pointwise product of rules."""
    k_perp = True if (f.k_perp and g.k_perp) else None
    if k_perp:
        # both rules depend only on the index, so the product can be memoized by it
        cache: dict[int, Any] = {}

        def rule(mono):
            k = mono.index
            if k not in cache:
                cache[k] = f.value(mono) * g.value(mono)
            return cache[k]

    else:

        def rule(mono):
            return f.value(mono) * g.value(mono)

    return Functional(
        rule,
        kind="product",
        params={"factors": (f, g)},
        k_perp=k_perp,
    )


def counit() -> Functional:
    return Functional(lambda mono: GaussianRational(1), kind="counit", k_perp=True)


def haar() -> Functional:
    """The vector state at ``e_0``: 1 on the identity, 0 on every other monomial."""
    return Functional(lambda mono: GaussianRational(1 if mono == IDENTITY else 0), kind="haar", k_perp=False)


def haar0() -> Functional:
    """1 on the diagonal monomials ``T_{n,n}``, 0 elsewhere."""
    return Functional(lambda mono: GaussianRational(1 if mono.n == mono.m else 0), kind="haar0", k_perp=True)


def diagonal_state(q) -> Functional:
    """The faithful state ``A -> sum_k (1-q) q^k <A e_k, e_k>`` for rational ``0 < q < 1``.

    On monomials this is ``q^n`` on ``T_{n,n}`` and 0 off the diagonal.
    """
    q = Fraction(q)
    if not 0 < q < 1:
        raise DomainError(f"diagonal_state needs 0 < q < 1, got {q}")
    return Functional(
        lambda mono: GaussianRational(q**mono.n if mono.n == mono.m else 0),
        kind="diagonal-state",
        params={"q": q},
        k_perp=False,
    )


def table(values: Mapping, default=0, kind: str = "table") -> Functional:
    """A functional with explicit values on finitely many monomials and ``default`` elsewhere."""
    data = {(k if isinstance(k, Monomial) else Monomial(*k)): _normalize(v) for k, v in values.items()}
    fallback = _normalize(default)
    return Functional(lambda mono: data.get(mono, fallback), kind=kind, params={"values": data, "default": fallback})


def probe_grid(depth: int) -> Iterable[Monomial]:
    """All monomials with both exponents <= depth."""
    return (Monomial(n, m) for n in range(depth + 1) for m in range(depth + 1))


def random_table(rng: random.Random, depth: int) -> Functional:
    """Random values on the grid up to ``depth``; 0 beyond it."""
    return table({mono: random_scalar(rng) for mono in probe_grid(depth)})


def rules_equal(f: Functional, g: Functional, depth: int = DEFAULT_DEPTH) -> bool:
    return all(f.value(mono) == g.value(mono) for mono in probe_grid(depth))


def haar_constant(rho: Functional):
    """The scalar ``lambda_rho = rho(I)`` in ``h * rho = lambda_rho h``."""
    return rho.value(IDENTITY)


def satisfies_haar_values(f: Functional, depth: int = DEFAULT_DEPTH) -> bool:
    """f(I) = 1 and f vanishes on every other monomial of the grid."""
    return all(f.value(mono) == (1 if mono == IDENTITY else 0) for mono in probe_grid(depth))


def absorbs(f: Functional, probes: Iterable[Functional], depth: int = DEFAULT_DEPTH) -> bool:
    """``f * rho = rho * f = rho(I) f`` on the grid, for every probe."""
    grid = list(probe_grid(depth))
    for rho in probes:
        lam = haar_constant(rho)
        left, right = convolve(f, rho), convolve(rho, f)
        for mono in grid:
            target = lam * f.value(mono)
            if left.value(mono) != target or right.value(mono) != target:
                return False
    return True


def is_haar(f: Functional, probes: Iterable[Functional] = (), depth: int = DEFAULT_DEPTH) -> bool:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return satisfies_haar_values(f, depth) and absorbs(f, probes, depth)


@dataclass(frozen=True)
class CesaroResult:
    steps: int
    depth: int
    values: dict[Monomial, Any]
    max_deviation: float
    worst: Monomial

    def __getitem__(self, mono) -> Any:
        if not isinstance(mono, Monomial):
            mono = Monomial(*mono)
        return self.values[mono]


def cesaro_iterate(f: Functional, steps: int, probe_depth: int) -> CesaroResult:
    """Cesaro means ``(1/n) sum_{k=1..n} f^k`` of convolution powers on the probe grid.

    Convolution powers are pointwise powers of the rule.  Exact rules stay
    exact.  ``max_deviation`` is the largest distance to the Haar rule.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if f.value(IDENTITY) != 1:
        raise DomainError("Cesaro iteration needs a state (value 1 on the identity)")
    h = haar()
    values = {}
    worst, worst_dev = IDENTITY, -1.0
    for mono in probe_grid(probe_depth):
        v = f.value(mono)
        power, total = v, GaussianRational(0)
        for _ in range(steps):
            total = total + power
            power = power * v
        mean = total / steps
        values[mono] = mean
        dev = abs(mean - h.value(mono))
        if dev > worst_dev:
            worst, worst_dev = mono, dev
    return CesaroResult(steps=steps, depth=probe_depth, values=values, max_deviation=worst_dev, worst=worst)


def in_k_perp(f: Functional, depth: int = DEFAULT_DEPTH) -> bool:
    """Whether the rule depends only on the index ``m - n`` on the grid."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    for mono in probe_grid(depth):
        k = mono.index
        ref = Monomial(0, k) if k >= 0 else Monomial(-k, 0)
        if f.value(mono) != f.value(ref):
            return False
    return True


def sup_norm(f: Functional, depth: int = DEFAULT_DEPTH) -> float:
    """Largest ``|rule|`` on the grid."""
    return max(abs(f.value(mono)) for mono in probe_grid(depth))

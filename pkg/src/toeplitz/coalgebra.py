"""Tensor elements, the comultiplication and the weak-Hopf structure on finite elements.

``delta`` sends every monomial to its diagonal tensor ``T_{n,m} (x) T_{n,m}``.
Together with the antipode ``T_{n,m} -> T_{m,n}`` this makes the finite
elements a weak Hopf algebra, which :func:`weak_hopf_check` verifies term by
term.  :func:`cqg_witness` certifies that the span of ``(a (x) I) delta(b)``
stays at distance >= 1 from ``T (x) T*``.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    IDENTITY,
    Element,
    Monomial,
    antipode,
    format_terms,
    mul_monomial,
)
from .errors import DegreeMismatch
from .sampling import random_monomial, random_scalar
from .scalars import GaussianRational, as_gaussian

__all__ = [
    "TensorElement",
    "tensor",
    "delta",
    "delta2",
    "delta_left",
    "delta_right",
    "tensor_mul",
    "flip",
    "mu",
    "slotwise",
    "apply_tensor",
    "weak_hopf_check",
    "WitnessSample",
    "WitnessReport",
    "cqg_witness",
]

Key = tuple[Monomial, ...]


class TensorElement:
    """A finite combination of elementary tensors of monomials, of degree 2 or 3."""

    __slots__ = ("degree", "_terms", "_hash")

    def __init__(self, degree: int, terms: Mapping | Iterable = ()):
        if degree not in (2, 3):
            raise DegreeMismatch(f"tensor degree must be 2 or 3, got {degree}")
        self.degree = degree
        acc: dict[Key, GaussianRational] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            key = tuple(k if isinstance(k, Monomial) else Monomial(*k) for k in key)
            if len(key) != degree:
                raise DegreeMismatch(f"tensor factor count {len(key)} does not match degree {degree}")
            acc[key] = acc.get(key, GaussianRational(0)) + as_gaussian(c)
        self._terms = {k: acc[k] for k in sorted(acc) if acc[k]}
        self._hash = None

    @classmethod
    def identity(cls, degree: int = 2) -> TensorElement:
        return cls(degree, {(IDENTITY,) * degree: 1})

    @property
    def terms(self) -> dict[Key, GaussianRational]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Key, GaussianRational]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, TensorElement):
            # the zero tensor compares equal across degrees
            if not self._terms and not other._terms:
                return True
            return self.degree == other.degree and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.degree if self._terms else 0, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other: TensorElement) -> None:
        if self.degree != other.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree} differ")

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check(other)
        merged = dict(self._terms)
        for k, c in other._terms.items():
            merged[k] = merged.get(k, GaussianRational(0)) + c
        return TensorElement(self.degree, merged)

    def __neg__(self) -> TensorElement:
        return TensorElement(self.degree, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> TensorElement:
        c = as_gaussian(c)
        return TensorElement(self.degree, {k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_mul(self, other)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> TensorElement:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only natural powers are defined")
        result = TensorElement.identity(self.degree)
        for _ in range(exponent):
            result = tensor_mul(result, self)
        return result

    def adjoint(self) -> TensorElement:
        """Componentwise adjoint."""
        return TensorElement(
            self.degree,
            {tuple(k.inverse() for k in key): c.conjugate() for key, c in self._terms.items()},
        )

    def __repr__(self) -> str:
        return f"TensorElement({self})"

    def __str__(self) -> str:
        return format_terms([("(" + " (x) ".join(map(str, key)) + ")", c) for key, c in self._terms.items()])


def tensor(*factors: Element) -> TensorElement:
    """Elementary tensor product of two or three elements."""
    keys: list[tuple[Key, GaussianRational]] = [((), GaussianRational(1))]
    for f in factors:
        keys = [(key + (mono,), c * cf) for key, c in keys for mono, cf in f.items()]
    return TensorElement(len(factors), keys)


def delta(a: Element) -> TensorElement:
    return TensorElement(2, {(mono, mono): c for mono, c in a.items()})


def delta2(a: Element) -> TensorElement:
    return TensorElement(3, {(mono, mono, mono): c for mono, c in a.items()})


def delta_left(x: TensorElement) -> TensorElement:
    """``(delta (x) id)`` on a degree-2 tensor."""
    if x.degree != 2:
        raise DegreeMismatch("delta_left expects a degree-2 tensor")
    return TensorElement(3, {(a, a, b): c for (a, b), c in x.items()})


def delta_right(x: TensorElement) -> TensorElement:
    """``(id (x) delta)`` on a degree-2 tensor."""
    if x.degree != 2:
        raise DegreeMismatch("delta_right expects a degree-2 tensor")
    return TensorElement(3, {(a, b, b): c for (a, b), c in x.items()})


def tensor_mul(a: TensorElement, b: TensorElement) -> TensorElement:
    if a.degree != b.degree:
        raise DegreeMismatch(f"cannot multiply tensors of degree {a.degree} and {b.degree}")
    out: dict[Key, GaussianRational] = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = tuple(mul_monomial(x, y) for x, y in zip(ka, kb))
            out[key] = out.get(key, GaussianRational(0)) + ca * cb
    return TensorElement(a.degree, out)


def flip(x: TensorElement) -> TensorElement:
    if x.degree != 2:
        raise DegreeMismatch("flip is defined on degree-2 tensors")
    return TensorElement(2, {(b, a): c for (a, b), c in x.items()})


def mu(x: TensorElement) -> Element:
    """Multiply the tensor factors in order (left to right for degree 3)."""
    out: dict[Monomial, GaussianRational] = {}
    for key, c in x.items():
        prod = key[0]
        for mono in key[1:]:
            prod = mul_monomial(prod, mono)
        out[prod] = out.get(prod, GaussianRational(0)) + c
    return Element(out)


def slotwise(x: TensorElement, maps: Sequence[Callable[[Monomial], Monomial] | None]) -> TensorElement:
    """Apply a monomial-to-monomial linear map in each slot (None means identity)."""
    if len(maps) != x.degree:
        raise DegreeMismatch(f"{len(maps)} slot maps for a degree-{x.degree} tensor")
    return TensorElement(
        x.degree,
        [(tuple(f(k) if f else k for f, k in zip(maps, key)), c) for key, c in x.items()],
    )


def apply_tensor(x: TensorElement, v: Mapping[tuple[int, int], object]) -> dict[tuple[int, int], GaussianRational]:
    """Apply a degree-2 tensor to a finite combination of ``e_i (x) e_j``."""
    if x.degree != 2:
        raise DegreeMismatch("apply_tensor expects a degree-2 tensor")
    out: dict[tuple[int, int], GaussianRational] = {}
    for (i, j), cv in v.items():
        cv = as_gaussian(cv)
        for (a, b), c in x.items():
            if i >= a.m and j >= b.m:
                target = (i - a.m + a.n, j - b.m + b.n)
                out[target] = out.get(target, GaussianRational(0)) + c * cv
    return {k: out[k] for k in sorted(out) if out[k]}


def _swap(mono: Monomial) -> Monomial:
    return mono.inverse()


def weak_hopf_axioms(a: Element) -> tuple[bool, bool]:
    """``mu(id (x) S (x) id) delta2(a) == a`` and ``mu(S (x) id (x) S) delta2(a) == S(a)``."""
    d2 = delta2(a)
    first = mu(slotwise(d2, (None, _swap, None)))
    second = mu(slotwise(d2, (_swap, None, _swap)))
    return first == a, second == antipode(a)


def weak_hopf_check(a: Element) -> bool:
    return all(weak_hopf_axioms(a))


# --- the non-density witness -------------------------------------------------


def _sample_span_term(rng: random.Random, max_entry: int) -> tuple[Monomial, Monomial, GaussianRational]:
    outer = random_monomial(rng, max_entry)
    inner = random_monomial(rng, max_entry)
    return outer, inner, random_scalar(rng)


@dataclass(frozen=True)
class WitnessSample:
    B: TensorElement
    Bx: dict[tuple[int, int], GaussianRational]
    # largest |<Bx, e_i (x) e_0>|^2 (e_0 (x) e_i when mirrored); zero when the argument holds
    forbidden_component: Fraction
    # |<(A - B)x, Ax>|^2, a lower bound for ||A - B||^2 since ||x|| = ||Ax|| = 1
    lower_bound_squared: Fraction

    @property
    def lower_bound(self) -> float:
        return float(self.lower_bound_squared) ** 0.5


@dataclass(frozen=True)
class WitnessReport:
    mirror: bool
    A: TensorElement
    x: tuple[int, int]
    Ax: dict[tuple[int, int], GaussianRational]
    samples: list[WitnessSample] = field(repr=False)

    @property
    def holds(self) -> bool:
        return all(s.forbidden_component == 0 and s.lower_bound_squared >= 1 for s in self.samples)

    @property
    def min_lower_bound(self) -> float:
        return min(s.lower_bound for s in self.samples)


def witness_setup(mirror: bool = False) -> tuple[TensorElement, tuple[int, int]]:
    """The target ``A`` and probe vector ``x`` (``mirror`` swaps both tensor factors)."""
    T = Element.monomial(1, 0)
    Ts = Element.monomial(0, 1)
    if mirror:
        return tensor(Ts, T), (1, 0)
    return tensor(T, Ts), (0, 1)


def span_element(terms: Iterable[tuple[Monomial, Monomial, object]], mirror: bool = False) -> TensorElement:
    """``sum c (T_outer (x) I) delta(T_inner)``, or ``(I (x) T_outer)`` when mirrored."""
    out = TensorElement(2)
    for outer, inner, c in terms:
        if mirror:
            key = (inner, mul_monomial(outer, inner))
        else:
            key = (mul_monomial(outer, inner), inner)
        out = out + TensorElement(2, {key: c})
    return out


def certify(B: TensorElement, mirror: bool = False) -> WitnessSample:
    A, x = witness_setup(mirror)
    Bx = apply_tensor(B, {x: 1})
    if mirror:
        forbidden = [c for (i, j), c in Bx.items() if i == 0]
    else:
        forbidden = [c for (i, j), c in Bx.items() if j == 0]
    worst = max((c.abs2() for c in forbidden), default=Fraction(0))
    target = (1, 0) if not mirror else (0, 1)
    overlap = GaussianRational(1) - Bx.get(target, GaussianRational(0))
    return WitnessSample(B=B, Bx=Bx, forbidden_component=worst, lower_bound_squared=overlap.abs2())


def cqg_witness(samples: int, seed: int = 0, *, mirror: bool = False, max_terms: int = 6, max_entry: int = 10) -> WitnessReport:
    """Sample ``samples`` random members of the span and certify each one.

    Monomial exponents are uniform on ``[0, max_entry]``; each ``B`` has
    1..``max_terms`` summands with coefficients from
    :func:`toeplitz.sampling.random_scalar`.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    A, x = witness_setup(mirror)
    results = []
    for _ in range(samples):
        terms = [_sample_span_term(rng, max_entry) for _ in range(rng.randint(1, max_terms))]
        results.append(certify(span_element(terms, mirror), mirror))
    return WitnessReport(mirror=mirror, A=A, x=x, Ax=apply_tensor(A, {x: 1}), samples=results)

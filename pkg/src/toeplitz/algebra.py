"""Normal-form arithmetic for the monomials ``T_{n,m} = T^n T*^m``.

Every word in the unilateral shift ``T`` and its adjoint collapses to a single
monomial because ``T*T = I``.  An :class:`Element` is a finite linear
combination of monomials with Gaussian-rational coefficients, kept in
canonical form (no zero coefficients, each monomial once), so structural
equality is algebra equality.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NotDiagonal
from .scalars import GaussianRational, as_gaussian

__all__ = [
    "Monomial",
    "Element",
    "TrigPolynomial",
    "DiagonalNorm",
    "IDENTITY",
    "mul_monomial",
    "mul",
    "adjoint",
    "antipode",
    "index",
    "graded_component",
    "graded_components",
    "apply",
    "basis",
    "gelfand_transform_T0",
    "diagonal_from_eigenvalues",
    "norm_T0",
    "symbol",
    "diagonal_sums",
    "is_compact",
    "max_entry",
    "spread",
]


@dataclass(frozen=True, order=True)
class Monomial:
    """The operator ``T^n T*^m`` on l^2(Z_+)."""

    n: int
    m: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.m, int)):
            raise TypeError("monomial exponents must be integers")
        if self.n < 0 or self.m < 0:
            raise ValueError(f"monomial exponents must be nonnegative, got ({self.n}, {self.m})")

    @property
    def index(self) -> int:
        """Fredholm index ``m - n``."""
        return self.m - self.n

    def __mul__(self, other: Monomial) -> Monomial:
        if not isinstance(other, Monomial):
            return NotImplemented
        return mul_monomial(self, other)

    def inverse(self) -> Monomial:
        """The generalized inverse ``T_{m,n}``."""
        return Monomial(self.m, self.n)

    def __str__(self) -> str:
        return f"T({self.n},{self.m})"


IDENTITY = Monomial(0, 0)

Coefficient = Union[GaussianRational, Fraction, int]


def mul_monomial(a: Monomial, b: Monomial) -> Monomial:
    n, m = a.n, a.m
    k, l = b.n, b.m
    if k > m:
        return Monomial(n + k - m, l)
    if k < m:
        return Monomial(n, l + m - k)
    return Monomial(n, l)


def _as_monomial(key) -> Monomial:
    if isinstance(key, Monomial):
        return key
    n, m = key
    return Monomial(n, m)


class Element:
    """A finite linear combination of monomials in canonical form.

    >>> T = Element.monomial(1, 0)
    >>> str(T.adjoint() * T)
    'T(0,0)'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict[Monomial, GaussianRational] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            mono = _as_monomial(key)
            acc[mono] = acc.get(mono, GaussianRational(0)) + as_gaussian(coeff)
        self._terms = {k: acc[k] for k in sorted(acc) if acc[k]}
        self._hash = None

    @classmethod
    def monomial(cls, n: int, m: int, coeff: Coefficient = 1) -> Element:
        return cls({Monomial(n, m): coeff})

    @classmethod
    def identity(cls) -> Element:
        return cls({IDENTITY: 1})

    @classmethod
    def zero(cls) -> Element:
        return cls()

    @classmethod
    def scalar(cls, c: Coefficient) -> Element:
        return cls({IDENTITY: c})

    @property
    def terms(self) -> Mapping[Monomial, GaussianRational]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, GaussianRational]]:
        return iter(self._terms.items())

    def support(self) -> tuple[Monomial, ...]:
        return tuple(self._terms)

    def coefficient(self, mono) -> GaussianRational:
        return self._terms.get(_as_monomial(mono), GaussianRational(0))

    def scalar_value(self) -> GaussianRational | None:
        """The scalar ``c`` if this element is ``c*I``, else None."""
        if not self._terms:
            return GaussianRational(0)
        if len(self._terms) == 1 and IDENTITY in self._terms:
            return self._terms[IDENTITY]
        return None

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        merged = dict(self._terms)
        for k, c in other._terms.items():
            merged[k] = merged.get(k, GaussianRational(0)) + c
        return Element(merged)

    def __neg__(self) -> Element:
        return Element({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Coefficient) -> Element:
        c = as_gaussian(c)
        return Element({k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> Element:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only natural powers are defined")
        result = Element.identity()
        base = self
        while exponent:
            if exponent & 1:
                result = mul(result, base)
            base = mul(base, base)
            exponent >>= 1
        return result

    def adjoint(self) -> Element:
        return adjoint(self)

    def antipode(self) -> Element:
        return antipode(self)

    def __repr__(self) -> str:
        return f"Element({self})"

    def __str__(self) -> str:
        return format_terms([(str(k), c) for k, c in self._terms.items()])


def _coeff_prefix(c: GaussianRational) -> str:
    if c == 1:
        return ""
    if c == -1:
        return "-"
    s = str(c)
    if c.re and c.im:
        return f"({s})*"
    return s + "*"


def format_terms(terms: list[tuple[str, GaussianRational]]) -> str:
    """Join ``coeff*basis`` terms, e.g. ``T(0,0) - 2*T(1,1)``; empty gives ``0``."""
    if not terms:
        return "0"
    parts = []
    for i, (basis_str, c) in enumerate(terms):
        term = _coeff_prefix(c) + basis_str
        if i == 0:
            parts.append(term)
        elif term.startswith("-"):
            parts.append(" - " + term[1:])
        else:
            parts.append(" + " + term)
    return "".join(parts)


def mul(a: Element, b: Element) -> Element:
    out: dict[Monomial, GaussianRational] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = mul_monomial(ma, mb)
            out[mono] = out.get(mono, GaussianRational(0)) + ca * cb
    return Element(out)


def adjoint(a: Element) -> Element:
    return Element({Monomial(k.m, k.n): c.conjugate() for k, c in a.items()})


def antipode(a: Element) -> Element:
    """Linear (not conjugate-linear) extension of ``T_{n,m} -> T_{m,n}``."""
    return Element({Monomial(k.m, k.n): c for k, c in a.items()})


def index(mono: Monomial) -> int:
    return mono.m - mono.n


def graded_component(a: Element, k: int) -> Element:
    return Element({mono: c for mono, c in a.items() if mono.index == k})


def graded_components(a: Element) -> dict[int, Element]:
    """All nonzero graded components, keyed by index."""
    parts: dict[int, dict[Monomial, GaussianRational]] = {}
    for mono, c in a.items():
        parts.setdefault(mono.index, {})[mono] = c
    return {k: Element(parts[k]) for k in sorted(parts)}


def basis(j: int) -> dict[int, GaussianRational]:
    """The basis vector ``e_j`` as a finite combination."""
    if j < 0:
        raise ValueError("basis index must be nonnegative")
    return {j: GaussianRational(1)}


def apply(a: Element, v: Mapping[int, Coefficient] | int) -> dict[int, GaussianRational]:
    """Apply ``a`` to a finite combination of basis vectors (or to ``e_v`` for an int)."""
    if isinstance(v, int):
        v = basis(v)
    out: dict[int, GaussianRational] = {}
    for j, cv in v.items():
        cv = as_gaussian(cv)
        for mono, c in a.items():
            if j >= mono.m:
                target = j - mono.m + mono.n
                out[target] = out.get(target, GaussianRational(0)) + c * cv
    return {k: out[k] for k in sorted(out) if out[k]}


def _require_diagonal(a: Element) -> None:
    for mono in a.support():
        if mono.index != 0:
            raise NotDiagonal(f"{mono} has index {mono.index}; expected a diagonal element")


def gelfand_transform_T0(a: Element, m: int) -> GaussianRational:
    """Eigenvalue of a diagonal element on ``e_m``: the partial sum of its coefficients up to ``m``."""
    _require_diagonal(a)
    if m < 0:
        raise ValueError("the Gelfand transform is defined on nonnegative integers")
    total = GaussianRational(0)
    for mono, c in a.items():
        if mono.n <= m:
            total += c
    return total


def diagonal_from_eigenvalues(alphas: Iterable[Coefficient]) -> Element:
    """Inverse of the Gelfand transform on a finite window.

    Given eigenvalues ``alpha_0..alpha_N`` (constant from ``N`` on), returns
    ``sum beta_k T_{k,k}`` with ``beta_0 = alpha_0`` and
    ``beta_{k+1} = alpha_{k+1} - alpha_k``.
    """
    terms: dict[Monomial, GaussianRational] = {}
    prev = GaussianRational(0)
    for k, alpha in enumerate(alphas):
        alpha = as_gaussian(alpha)
        terms[Monomial(k, k)] = alpha - prev
        prev = alpha
    return Element(terms)


@dataclass(frozen=True)
class DiagonalNorm:
    """Norm of a diagonal element: the exact squared value and its float square root."""

    squared: Fraction
    value: float

    @property
    def exact(self) -> Fraction | None:
        """The norm as a rational when ``squared`` is a perfect rational square."""
        p, q = self.squared.numerator, self.squared.denominator
        rp, rq = math.isqrt(p), math.isqrt(q)
        if rp * rp == p and rq * rq == q:
            return Fraction(rp, rq)
        return None


def norm_T0(a: Element) -> DiagonalNorm:
    _require_diagonal(a)
    best = Fraction(0)
    top = max((mono.n for mono in a.support()), default=0)
    running = GaussianRational(0)
    # partial sums change only at support points, so scanning 0..top attains the sup
    for m in range(top + 1):
        running += a.coefficient(Monomial(m, m))
        best = max(best, running.abs2())
    return DiagonalNorm(best, math.sqrt(best))


class TrigPolynomial:
    """A finite sum ``sum_k c_k e^{ik theta}`` with Gaussian-rational coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, Coefficient] = ()):
        acc: dict[int, GaussianRational] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for k, c in items:
            acc[int(k)] = acc.get(int(k), GaussianRational(0)) + as_gaussian(c)
        self._coeffs = {k: acc[k] for k in sorted(acc) if acc[k]}

    @property
    def coeffs(self) -> dict[int, GaussianRational]:
        return dict(self._coeffs)

    def __getitem__(self, k: int) -> GaussianRational:
        return self._coeffs.get(k, GaussianRational(0))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, TrigPolynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: TrigPolynomial) -> TrigPolynomial:
        merged = dict(self._coeffs)
        for k, c in other._coeffs.items():
            merged[k] = merged.get(k, GaussianRational(0)) + c
        return TrigPolynomial(merged)

    def __mul__(self, other: TrigPolynomial) -> TrigPolynomial:
        out: dict[int, GaussianRational] = {}
        for k1, c1 in self._coeffs.items():
            for k2, c2 in other._coeffs.items():
                out[k1 + k2] = out.get(k1 + k2, GaussianRational(0)) + c1 * c2
        return TrigPolynomial(out)

    def __call__(self, theta: float) -> complex:
        return sum((complex(c) * complex(math.cos(k * theta), math.sin(k * theta)) for k, c in self._coeffs.items()), 0j)

    def __repr__(self) -> str:
        return f"TrigPolynomial({self})"

    def __str__(self) -> str:
        def char(k: int) -> str:
            if k == 0:
                return "1"
            if k == 1:
                return "e^(i*t)"
            if k == -1:
                return "e^(-i*t)"
            return f"e^({k}i*t)"

        terms = []
        for k, c in self._coeffs.items():
            if k == 0:
                terms.append((str(c) if not (c.re and c.im) else f"({c})", GaussianRational(1)))
            else:
                terms.append((char(k), c))
        return format_terms(terms)


def symbol(a: Element) -> TrigPolynomial:
    """Image in C(S^1): ``T_{n,m} -> e^{i(m-n)theta}``."""
    return TrigPolynomial(diagonal_sums(a))


def diagonal_sums(a: Element) -> dict[int, GaussianRational]:
    """Sum of coefficients along each index diagonal (zero sums omitted)."""
    sums: dict[int, GaussianRational] = {}
    for mono, c in a.items():
        sums[mono.index] = sums.get(mono.index, GaussianRational(0)) + c
    return {k: sums[k] for k in sorted(sums) if sums[k]}


def is_compact(a: Element) -> bool:
    return not diagonal_sums(a)


def max_entry(a: Element) -> int:
    """Largest exponent ``max(n, m)`` appearing in ``a`` (0 for the zero element)."""
    return max((max(mono.n, mono.m) for mono in a.support()), default=0)


def spread(a: Element) -> int:
    """Largest ``|index|`` over the terms of ``a``."""
    return max((abs(mono.index) for mono in a.support()), default=0)

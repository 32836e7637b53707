"""Exact scalars: Gaussian rationals and elements of cyclotomic fields.

``GaussianRational`` is the coefficient ring of the operator algebra.
``Cyclotomic`` holds exact values of characters ``exp(2*pi*i*p/q)`` that do
not land in Q(i); it is only produced by the circle-measure code.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

__all__ = [
    "GaussianRational",
    "Cyclotomic",
    "Scalar",
    "as_gaussian",
    "is_zero",
    "root_of_unity",
    "format_fraction",
]


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational number, got {type(x).__name__}")


class GaussianRational:
    """A complex number ``re + im*i`` with rational parts.

    Instances are immutable and hashable; equality is exact.  Arithmetic
    accepts ``int`` and ``Fraction`` operands, defers to ``Cyclotomic`` when
    mixed with one, and falls back to ``complex`` when mixed with a float.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im != 0:
                raise TypeError("cannot combine a GaussianRational real part with an imaginary part")
            re, im = re._re, re._im
        self._re = _frac(re)
        self._im = _frac(im)

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Read the ``str()`` form back, e.g. ``"1/2-3/4i"``, ``"-i"``, ``"7"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar literal")
        if not s.endswith("i"):
            return cls(Fraction(s))
        body = s[:-1]
        # split at the last sign that is not the leading one
        cut = max(body.rfind("+", 1), body.rfind("-", 1))
        if cut <= 0:
            re_part, im_part = "0", body
        else:
            re_part, im_part = body[:cut], body[cut:]
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return cls(Fraction(re_part), Fraction(im_part))

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self._re, -self._im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self._re * self._re + self._im * self._im

    def __abs__(self) -> float:
        return math.hypot(self._re, self._im)

    def __complex__(self) -> complex:
        return complex(float(self._re), float(self._im))

    def __bool__(self) -> bool:
        return bool(self._re) or bool(self._im)

    def __hash__(self) -> int:
        if not self._im:
            return hash(self._re)
        return hash((self._re, self._im))

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Fraction)):
            return not self._im and self._re == other
        if isinstance(other, Cyclotomic):
            return other == self
        return NotImplemented

    def __repr__(self) -> str:
        return f"GaussianRational({self})"

    def __str__(self) -> str:
        re, im = self._re, self._im
        if not im:
            return format_fraction(re)
        if im == 1:
            im_s = "i"
        elif im == -1:
            im_s = "-i"
        else:
            im_s = format_fraction(im) + "i"
        if not re:
            return im_s
        sign = "" if im_s.startswith("-") else "+"
        return f"{format_fraction(re)}{sign}{im_s}"

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) + other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self._re, -self._im)

    def __pos__(self) -> GaussianRational:
        return self

    def __sub__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) - other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        if isinstance(other, (float, complex)):
            return other - complex(self)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) * other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self._re * o._re - self._im * o._im,
            self._re * o._im + self._im * o._re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) / other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.abs2()
        if not d:
            raise ZeroDivisionError("division by zero GaussianRational")
        num = self * o.conjugate()
        return GaussianRational(num._re / d, num._im / d)

    def __rtruediv__(self, other):
        if isinstance(other, (float, complex)):
            return other / complex(self)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, exponent: int) -> GaussianRational:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return GaussianRational(1) / (self ** -exponent)
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


def as_gaussian(x) -> GaussianRational:
    """Coerce ``int``/``Fraction``/``GaussianRational`` to ``GaussianRational``."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    if isinstance(x, Cyclotomic):
        g = x.to_gaussian()
        if g is not None:
            return g
        raise ValueError(f"{x!r} is not a Gaussian rational")
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


def is_zero(x) -> bool:
    if isinstance(x, (GaussianRational, Cyclotomic)):
        return not x
    return x == 0


# --- cyclotomic fields -------------------------------------------------------
#
# Q(zeta_N) is the tensor product of Q(zeta_q) over the prime powers q
# exactly dividing N.  Each factor uses the power basis 1, x, ..., x^(phi(q)-1)
# and Phi_q(x) = sum_{j<p} x^(j q/p) is sparse, so a single power of zeta_N
# expands into at most prod(p - 1) basis terms.  Elements are sparse dicts
# keyed by exponent tuples, one exponent per prime-power factor.

Key = tuple  # tuple[int, ...]


@lru_cache(maxsize=None)
def _prime_powers(order: int) -> tuple[tuple[int, int], ...]:
    """``((p, q), ...)`` with ``q = p**a`` exactly dividing ``order``."""
    out = []
    n, p = order, 2
    while n > 1:
        if p * p > n:
            p = n
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append((p, q))
        p += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _expand_power(p: int, q: int, e: int) -> tuple[tuple[int, int], ...]:
    """``x^e`` in Q[x]/Phi_q as ``((exponent, sign), ...)`` in the power basis."""
    e %= q
    step = q // p
    phi = q - step
    if e < phi:
        return ((e, 1),)
    r = e - phi
    return tuple((j * step + r, -1) for j in range(p - 1))


@lru_cache(maxsize=None)
def _expand_key(order: int, exps: tuple[int, ...]) -> tuple[tuple[Key, int], ...]:
    """Basis expansion of ``prod_i x_i^(exps_i)``."""
    out: list[tuple[Key, int]] = [((), 1)]
    for (p, q), e in zip(_prime_powers(order), exps):
        out = [(key + (f,), sign * s) for key, sign in out for f, s in _expand_power(p, q, e)]
    return tuple(out)


@lru_cache(maxsize=None)
def _zeta_power(order: int, e: int) -> tuple[tuple[Key, int], ...]:
    """``zeta_N^e``: by CRT it is ``prod_i zeta_q^(e mod q)`` for a compatible choice of ``zeta_q``."""
    return _expand_key(order, tuple(e % q for _, q in _prime_powers(order)))


@lru_cache(maxsize=None)
def _key_exponent(order: int, key: Key) -> int:
    """Inverse of the CRT split: the exponent ``e`` with ``zeta_N^e`` equal to the basis monomial."""
    e = 0
    for (_, q), f in zip(_prime_powers(order), key):
        cofactor = order // q
        e += f * cofactor * pow(cofactor, -1, q)
    return e % order


def _accumulate_terms(acc: dict, expansion, c) -> None:
    for key, sign in expansion:
        v = acc.get(key, 0) + sign * c
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


class Cyclotomic:
    """An exact element of Q(zeta_N) with ``zeta_N = exp(2*pi*i/N)``.

    The order ``N`` is always a multiple of 4 so that ``i = zeta_N**(N/4)``
    lives in the same field and Gaussian-rational weights mix in without
    leaving Q.  Equality lifts both sides to a common order.  Construct from
    a mapping ``{exponent of zeta_N: rational coefficient}``.
    """

    __slots__ = ("order", "_terms")

    def __init__(self, order: int, coeffs: dict | None = None):
        if order <= 0 or order % 4:
            raise ValueError("cyclotomic order must be a positive multiple of 4")
        self.order = order
        acc: dict[Key, Fraction] = {}
        for e, c in (coeffs or {}).items():
            c = _frac(c)
            if c:
                _accumulate_terms(acc, _zeta_power(order, e), c)
        self._terms = acc

    @classmethod
    def _raw(cls, order: int, terms: dict) -> Cyclotomic:
        obj = cls.__new__(cls)
        obj.order = order
        obj._terms = terms
        return obj

    @classmethod
    def from_gaussian(cls, g, order: int = 4) -> Cyclotomic:
        g = as_gaussian(g)
        return cls(order, {0: g.re, order // 4: g.im})

    def terms(self) -> dict[int, Fraction]:
        """Coefficients keyed by the exponent of ``zeta_N`` for each basis element."""
        return {_key_exponent(self.order, key): c for key, c in self._terms.items()}

    def lift(self, order: int) -> Cyclotomic:
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        if order == self.order:
            return self
        step = order // self.order
        return Cyclotomic(order, {e * step: c for e, c in self.terms().items()})

    def _galois(self, j: int) -> Cyclotomic:
        # zeta -> zeta**j
        acc: dict[Key, Fraction] = {}
        for key, c in self._terms.items():
            _accumulate_terms(acc, _expand_key(self.order, tuple(j * f for f in key)), c)
        return Cyclotomic._raw(self.order, acc)

    def conjugate(self) -> Cyclotomic:
        return self._galois(-1)

    def to_gaussian(self) -> GaussianRational | None:
        """The same value as a ``GaussianRational``, or None if it is not in Q(i)."""
        # Q(i) is spanned by the basis keys of 1 and of zeta^(N/4) = i; the
        # latter is +-x^(q/4) in the 2-part depending on N/q mod 4
        ((i_key, i_sign),) = _zeta_power(self.order, self.order // 4)
        one_key = (0,) * len(i_key)
        re = im = Fraction(0)
        for key, c in self._terms.items():
            if key == one_key:
                re += c
            elif key == i_key:
                im += i_sign * c
            else:
                return None
        return GaussianRational(re, im)

    def __complex__(self) -> complex:
        total = 0j
        for e, c in self.terms().items():
            total += float(c) * complex(math.cos(2 * math.pi * e / self.order), math.sin(2 * math.pi * e / self.order))
        return total

    def __abs__(self) -> float:
        return abs(complex(self))

    def __bool__(self) -> bool:
        return bool(self._terms)

    __hash__ = None  # type: ignore[assignment]

    def _common(self, other) -> tuple[Cyclotomic, Cyclotomic] | None:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Cyclotomic.from_gaussian(other, self.order)
        if not isinstance(other, Cyclotomic):
            return None
        if other.order == self.order:
            return self, other
        lcm = math.lcm(self.order, other.order)
        return self.lift(lcm), other.lift(lcm)

    def __eq__(self, other) -> bool:
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a._terms == b._terms

    def __add__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        acc = dict(a._terms)
        for key, c in b._terms.items():
            v = acc.get(key, 0) + c
            if v:
                acc[key] = v
            else:
                del acc[key]
        return Cyclotomic._raw(a.order, acc)

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._raw(self.order, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        acc: dict[Key, Fraction] = {}
        for k1, c1 in a._terms.items():
            for k2, c2 in b._terms.items():
                _accumulate_terms(acc, _expand_key(a.order, tuple(x + y for x, y in zip(k1, k2))), c1 * c2)
        return Cyclotomic._raw(a.order, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Cyclotomic:
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = Cyclotomic.from_gaussian(1, self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def _format_terms(self) -> str:
        parts = []
        for e, c in sorted(self.terms().items()):
            power = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
            if not power:
                parts.append(format_fraction(c))
            elif c == 1:
                parts.append(power)
            elif c == -1:
                parts.append("-" + power)
            else:
                parts.append(f"{format_fraction(c)}*{power}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def __repr__(self) -> str:
        return f"Cyclotomic(N={self.order}: {self._format_terms()})"

    def __str__(self) -> str:
        g = self.to_gaussian()
        if g is not None:
            return str(g)
        return f"({self._format_terms()} where z = e^(2*pi*i/{self.order}))"


Scalar = Union[GaussianRational, Cyclotomic]

_QUARTER = {0: ONE, 1: I_UNIT, 2: -ONE, 3: -I_UNIT}


def root_of_unity(turns: Fraction) -> Scalar:
    """``exp(2*pi*i*turns)`` exactly.

    Quarter-turn multiples come back as ``GaussianRational``; anything else as
    a ``Cyclotomic`` of order ``lcm(4, denominator)``.
    """
    t = _frac(turns) % 1
    if (4 * t).denominator == 1:
        return _QUARTER[int(4 * t)]
    order = math.lcm(4, t.denominator)
    return Cyclotomic(order, {int(t * order): 1})

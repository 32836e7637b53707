"""Measures on the circle: finitely many atoms plus a trigonometric-polynomial density.

Angles are exact fractions of a full turn, reduced into ``[0, 1)``.  The
density is taken against normalized arc length ``dtheta/2pi``, so its
coefficient at ``k`` is exactly the ``k``-th Fourier coefficient of the
absolutely continuous part.  Characters ``exp(-2 pi i k t)`` stay exact:
Gaussian rationals for quarter turns, cyclotomic numbers otherwise.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction

from .dual import Functional
from .scalars import Cyclotomic, GaussianRational, Scalar, as_gaussian, is_zero, root_of_unity

__all__ = [
    "CircleMeasure",
    "dirac",
    "haar_measure",
    "character",
    "convolve_measures",
    "fourier",
    "measure_to_functional",
    "functional_to_measure",
]


def _exact(x) -> Scalar:
    if isinstance(x, Cyclotomic):
        g = x.to_gaussian()
        return g if g is not None else x
    return as_gaussian(x)


def _accumulate(target: dict, key, value) -> None:
    if key in target:
        target[key] = target[key] + value
    else:
        target[key] = value


def _prune(d: dict) -> dict:
    return {k: _exact(d[k]) for k in sorted(d) if not is_zero(d[k])}


class CircleMeasure:
    """``sum_j w_j delta_{t_j} + f(theta) dtheta/2pi`` with ``f`` a trigonometric polynomial."""

    __slots__ = ("_atoms", "_density")

    def __init__(self, atoms: Mapping | Iterable = (), density: Mapping | Iterable = ()):
        acc: dict[Fraction, Scalar] = {}
        for angle, w in (atoms.items() if isinstance(atoms, Mapping) else atoms):
            _accumulate(acc, Fraction(angle) % 1, _exact(w))
        dens: dict[int, Scalar] = {}
        for k, c in (density.items() if isinstance(density, Mapping) else density):
            _accumulate(dens, int(k), _exact(c))
        self._atoms = _prune(acc)
        self._density = _prune(dens)

    @property
    def atoms(self) -> dict[Fraction, Scalar]:
        return dict(self._atoms)

    @property
    def density(self) -> dict[int, Scalar]:
        return dict(self._density)

    @property
    def tier(self) -> str:
        """``"gaussian"`` when every stored value is a Gaussian rational, else ``"cyclotomic"``."""
        values = list(self._atoms.values()) + list(self._density.values())
        return "gaussian" if all(isinstance(v, GaussianRational) for v in values) else "cyclotomic"

    def __bool__(self) -> bool:
        return bool(self._atoms) or bool(self._density)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CircleMeasure):
            return NotImplemented
        return _dict_eq(self._atoms, other._atoms) and _dict_eq(self._density, other._density)

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: CircleMeasure) -> CircleMeasure:
        if not isinstance(other, CircleMeasure):
            return NotImplemented
        return CircleMeasure(
            list(self._atoms.items()) + list(other._atoms.items()),
            list(self._density.items()) + list(other._density.items()),
        )

    def __neg__(self) -> CircleMeasure:
        return self.scale(-1)

    def __sub__(self, other: CircleMeasure) -> CircleMeasure:
        return self + (-other)

    def scale(self, c) -> CircleMeasure:
        c = _exact(c)
        return CircleMeasure({t: c * w for t, w in self._atoms.items()}, {k: c * v for k, v in self._density.items()})

    def __mul__(self, other):
        if isinstance(other, CircleMeasure):
            return convolve_measures(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def total_mass(self) -> Scalar:
        return fourier(self, 0)

    def __repr__(self) -> str:
        return f"CircleMeasure({self})"

    def __str__(self) -> str:
        parts = []
        for t, w in self._atoms.items():
            angle = str(t.numerator) if t.denominator == 1 else f"{t.numerator}/{t.denominator}"
            parts.append(f"dirac({angle})" if w == 1 else f"dirac({angle}) * {_weight_text(w)}")
        if self._density:
            inner = ", ".join(f"{k}: {_weight_text(v)}" for k, v in self._density.items())
            parts.append(f"density{{{inner}}}")
        return " + ".join(parts) if parts else "0"


def _weight_text(w) -> str:
    # a bare real or imaginary literal reparses as is; anything else gets parentheses
    if isinstance(w, Cyclotomic) or not (w.re and w.im):
        return str(w)
    return f"({w})"


def _dict_eq(a: dict, b: dict) -> bool:
    return a.keys() == b.keys() and all(a[k] == b[k] for k in a)


def dirac(angle, weight=1) -> CircleMeasure:
    """Point mass at ``angle`` (a fraction of a full turn)."""
    return CircleMeasure({Fraction(angle): weight})


def haar_measure() -> CircleMeasure:
    """Normalized arc length: the constant density 1."""
    return CircleMeasure(density={0: 1})


def character(angle, k: int) -> Scalar:
    """``exp(-2 pi i k angle)``, exactly."""
    return root_of_unity(-k * Fraction(angle))


def convolve_measures(a: CircleMeasure, b: CircleMeasure) -> CircleMeasure:
    atoms: dict[Fraction, Scalar] = {}
    dens: dict[int, Scalar] = {}
    for t1, w1 in a._atoms.items():
        for t2, w2 in b._atoms.items():
            _accumulate(atoms, (t1 + t2) % 1, w1 * w2)
    # a point mass at t rotates a density: coefficient k picks up exp(-2 pi i k t)
    for atoms_side, dens_side in ((a._atoms, b._density), (b._atoms, a._density)):
        for t, w in atoms_side.items():
            for k, c in dens_side.items():
                _accumulate(dens, k, w * c * character(t, k))
    for k, c in a._density.items():
        if k in b._density:
            _accumulate(dens, k, c * b._density[k])
    return CircleMeasure(atoms, dens)


def fourier(m: CircleMeasure, k: int) -> Scalar:
    """``integral exp(-ik theta) dmu``."""
    total: Scalar = m._density.get(k, GaussianRational(0))
    for t, w in m._atoms.items():
        total = total + w * character(t, k)
    return _exact(total)


def measure_to_functional(m: CircleMeasure) -> Functional:
    """The functional vanishing on compacts with ``T_{n,m} -> integral e^{i(m-n)theta} dmu``."""
    cache: dict[int, Scalar] = {}

    def rule(mono):
        k = mono.n - mono.m
        if k not in cache:
            cache[k] = fourier(m, k)
        return cache[k]

    return Functional(rule, kind="measure-induced", params={"measure": m}, k_perp=True)


def functional_to_measure(f: Functional) -> CircleMeasure:
    """Inverse of :func:`measure_to_functional` on its image."""
    if f.kind != "measure-induced":
        raise ValueError("only functionals induced by a represented measure can be inverted")
    return f.params["measure"]

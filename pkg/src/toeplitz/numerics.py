"""Floating-point oracle: compressions of elements to span{e_0, ..., e_{N-1}}.

Everything here is independent of the symbolic multiplication law.  Products
are checked against matrix products, compactness against the action on
high basis vectors, and graded components against a discrete average over
the rotation action.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .algebra import Element, Monomial, apply, max_entry, spread
from .errors import GuardBandTooSmall, NoConvergence, SpreadTooLarge

__all__ = [
    "TruncatedMatrix",
    "truncate",
    "corner_product_check",
    "corner_deviation",
    "op_norm",
    "finite_rank_oracle",
    "rotation_average",
    "max_deviation",
]

PRODUCT_TOL = 1e-12
DEFAULT_TOL = 1e-10
MAX_SQUARINGS = 64


@dataclass(frozen=True, eq=False)
class TruncatedMatrix:
    """Entry ``(i, j)`` is ``<A e_j, e_i>`` for ``i, j < size``."""

    size: int
    entries: np.ndarray

    def dump(self) -> list[list[list[float]]]:
        """Row-major nested lists of ``[re, im]`` pairs (JSON friendly)."""
        return [[[float(z.real), float(z.imag)] for z in row] for row in self.entries]

    def __matmul__(self, other: TruncatedMatrix) -> TruncatedMatrix:
        return TruncatedMatrix(self.size, self.entries @ other.entries)


def truncate(a: Element, N: int) -> TruncatedMatrix:
    if N < 1:
        raise ValueError("truncation size must be >= 1")
    M = np.zeros((N, N), dtype=complex)
    for mono, c in a.items():
        shift = mono.n - mono.m
        for j in range(mono.m, N):
            i = j + shift
            if i < N:
                M[i, j] += complex(c)
    return TruncatedMatrix(N, M)


def corner_deviation(a: Element, b: Element, N: int) -> float:
    """Max |truncate(ab) - truncate(a) truncate(b)| over the corner outside the guard band."""
    d = max(max_entry(a), max_entry(b), max_entry(a * b))
    if N <= 2 * d:
        raise GuardBandTooSmall(f"N={N} must exceed twice the largest exponent {d}")
    lhs = truncate(a * b, N).entries
    rhs = (truncate(a, N) @ truncate(b, N)).entries
    corner = N - d
    return float(np.max(np.abs(lhs[:corner, :corner] - rhs[:corner, :corner]), initial=0.0))


def corner_product_check(a: Element, b: Element, N: int) -> bool:
    return corner_deviation(a, b, N) <= PRODUCT_TOL


def op_norm(m: TruncatedMatrix | np.ndarray, tol: float = DEFAULT_TOL, max_iter: int = MAX_SQUARINGS) -> float:
    """Largest singular value by power iteration on the Gram matrix ``G = M^H M``.

    The iterates are ``v_k = G^k 1 / |G^k 1|`` from the all-ones start, with
    ``k`` doubling at each step (``G`` is squared and rescaled), so ``max_iter``
    squarings cover ``2**max_iter`` plain power steps.  Iteration stops when
    the residual ``|G v - lam v|`` is at most ``tol * lam``, ``lam`` being the
    Rayleigh quotient.  Toeplitz truncations often have nearly degenerate top
    singular values; the doubling lets the iterate separate them, where a
    one-step iteration would stall with the estimate still biased low.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = m.entries if isinstance(m, TruncatedMatrix) else np.asarray(m, dtype=complex)
    G = M.conj().T @ M
    scale = float(np.max(np.abs(G))) if G.size else 0.0
    if scale == 0.0:
        return 0.0
    size = G.shape[0]
    start = np.ones(size, dtype=complex)
    if not np.any(G @ start):
        # all-ones lies in the kernel; fall back to another fixed start
        start = np.arange(1, size + 1, dtype=complex)
    P = G / scale
    for _ in range(max_iter):
        v = P @ start
        v /= np.linalg.norm(v)
        Gv = G @ v
        lam = float(np.vdot(v, Gv).real)
        if np.linalg.norm(Gv - lam * v) <= tol * lam:
            return math.sqrt(lam)
        P = P @ P
        P /= float(np.max(np.abs(P)))
    raise NoConvergence(f"power iteration did not reach tol={tol} in {max_iter} squarings")


def finite_rank_oracle(a: Element) -> bool:
    """True iff ``a`` kills every basis vector from ``1 + max exponent`` on.

    Past the largest exponent each monomial acts as a pure shift by its
    index, so checking a window as wide as the index spread settles it.
    """
    j0 = 1 + max_entry(a)
    return all(not apply(a, j) for j in range(j0, j0 + spread(a) + 1))


def rotation_average(a: Element, k: int, M: int) -> dict[Monomial, complex]:
    """``(1/M) sum_j e^{-2 pi i j k/M} alpha_{2 pi j/M}(a)`` in floating point.

    The rotation ``alpha_theta`` multiplies ``T_{n,m}`` by ``e^{i (m-n) theta}``.
    Requires ``M > 2*spread(a)`` and ``M > spread(a) + |k|`` so no index aliases onto ``k``.
    """
    s = spread(a)
    if M <= 2 * s or M <= s + abs(k):
        raise SpreadTooLarge(f"M={M} cannot separate indices up to {s} from k={k}")
    out: dict[Monomial, complex] = {}
    for mono, c in a.items():
        acc = 0j
        for j in range(M):
            theta = 2 * math.pi * j / M
            acc += cmath.exp(1j * mono.index * theta) * cmath.exp(-1j * k * theta)
        out[mono] = complex(c) * acc / M
    return out


def max_deviation(approx: dict[Monomial, complex], exact: Element) -> float:
    keys = set(approx) | set(exact.support())
    return max((abs(approx.get(k, 0j) - complex(exact.coefficient(k))) for k in keys), default=0.0)

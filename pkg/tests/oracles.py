"""Reference implementations that share no code with the package."""

from __future__ import annotations

import numpy as np


def reduce_word(word: str) -> tuple[int, int]:
    """Normal form of a word in ``T`` and ``S`` (= T*) using only ``ST -> empty``.

    Returns ``(n, m)`` for ``T^n S^m``.
    """
    stack: list[str] = []
    for ch in word:
        if ch == "T" and stack and stack[-1] == "S":
            stack.pop()
        else:
            stack.append(ch)
    n = stack.count("T")
    m = stack.count("S")
    assert stack == ["T"] * n + ["S"] * m
    return n, m


def word(n: int, m: int) -> str:
    return "T" * n + "S" * m


def shift_matrix(N: int) -> np.ndarray:
    S = np.zeros((N, N))
    for i in range(N - 1):
        S[i + 1, i] = 1.0
    return S


def monomial_matrix(n: int, m: int, N: int) -> np.ndarray:
    """``T^n (T*)^m`` compressed to the first N basis vectors.

    Computed at size ``N + n + m`` so that truncation does not cut into the product.
    """
    big = N + n + m + 1
    S = shift_matrix(big)
    M = np.linalg.matrix_power(S, n) @ np.linalg.matrix_power(S.T, m)
    return M[:N, :N]


def element_matrix(terms, N: int) -> np.ndarray:
    """Terms are ``((n, m), complex)`` pairs."""
    out = np.zeros((N, N), dtype=complex)
    for (n, m), c in terms:
        out += complex(c) * monomial_matrix(n, m, N)
    return out

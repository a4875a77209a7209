"""Exhaustive weight enumeration for linear block codes.

The minimum distance is computed from the full weight distribution.  When
the dual code is smaller than the code itself, the dual is enumerated and
the distribution transferred with the MacWilliams identity, which keeps
high-rate codes such as [8, 6] over GF(25) cheap.
"""

from __future__ import annotations

import functools
import itertools
from math import comb

import numpy as np

from .errors import BudgetExceeded, InvalidCodeError
from .galois import FiniteField
from .matf import FFMatrix, kernel, rref

DEFAULT_BUDGET = 1 << 26
_TABLE_LIMIT = 1024
_CHUNK_ROWS = 1 << 16


@functools.lru_cache(maxsize=16)
def _tables(field: FiniteField) -> tuple[np.ndarray, np.ndarray]:
    q = field.order
    add = np.array([[field.add(x, y) for y in range(q)] for x in range(q)], dtype=np.int32)
    mul = np.array([[field.mul(x, y) for y in range(q)] for x in range(q)], dtype=np.int32)
    return add, mul


def row_basis(g: FFMatrix) -> FFMatrix:
    r, rk, _ = rref(g)
    return r.take_rows(0, rk)


def _span_numpy(field: FiniteField, rows: list[tuple[int, ...]], n: int) -> np.ndarray:
    add, mul = _tables(field)
    words = np.zeros((1, n), dtype=np.int32)
    for g in rows:
        scaled = mul[:, np.array(g, dtype=np.int32)]  # (q, n): c * g for every scalar c
        words = add[words[:, None, :], scaled[None, :, :]].reshape(-1, n)
    return words


def _enumerate_weights(g: FFMatrix) -> list[int]:
    """Weight distribution of the row space of a full-rank ``g`` by enumeration."""
    field, n, k = g.field, g.ncols, g.nrows
    counts = [0] * (n + 1)
    if k == 0:
        counts[0] = 1
        return counts
    if field.order <= _TABLE_LIMIT:
        add = _tables(field)[0]
        q = field.order
        # split the basis so one half fits comfortably in memory
        k1 = k
        while k1 > 1 and q**k1 > _CHUNK_ROWS:
            k1 -= 1
        left = _span_numpy(field, list(g.rows[:k1]), n)
        right = _span_numpy(field, list(g.rows[k1:]), n)
        for b in right:
            w = np.count_nonzero(add[left, b[None, :]], axis=1)
            for wt, c in enumerate(np.bincount(w, minlength=n + 1)):
                counts[wt] += int(c)
        return counts
    f = field
    for msg in itertools.product(range(field.order), repeat=k):
        word = [0] * n
        for c, r in zip(msg, g.rows):
            if c:
                word = [f.add(x, f.mul(c, y)) for x, y in zip(word, r)]
        counts[sum(1 for x in word if x)] += 1
    return counts


def krawtchouk(j: int, i: int, n: int, q: int) -> int:
    return sum((-1) ** h * (q - 1) ** (j - h) * comb(i, h) * comb(n - i, j - h) for h in range(j + 1))


def macwilliams(dual_weights: list[int], q: int) -> list[int]:
    """Weight distribution of a code from that of its dual (alphabet size ``q``)."""
    n = len(dual_weights) - 1
    size = sum(dual_weights)
    out = []
    for j in range(n + 1):
        num = sum(b * krawtchouk(j, i, n, q) for i, b in enumerate(dual_weights) if b)
        if num % size:
            raise ArithmeticError("MacWilliams transform is not integral; inconsistent input")
        out.append(num // size)
    return out


def weight_distribution(g: FFMatrix, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Exact weight distribution ``[A_0, ..., A_n]`` of the row space of ``g``.

    Enumerates whichever of the code and its Euclidean dual is smaller; the
    smaller side must have at most ``budget`` codewords.
    """
    basis = row_basis(g)
    q, n, k = g.field.order, g.ncols, basis.nrows
    if min(k, n - k) and q ** min(k, n - k) > budget:
        raise BudgetExceeded(f"{q}^{min(k, n - k)} codewords exceeds the enumeration budget {budget}")
    if k <= n - k:
        return _enumerate_weights(basis)
    dual = kernel(basis)
    return macwilliams(_enumerate_weights(dual), q)


def min_distance(g: FFMatrix, budget: int = DEFAULT_BUDGET) -> int:
    """Minimum nonzero weight of the code generated by the rows of ``g``."""
    dist = weight_distribution(g, budget)
    for w in range(1, len(dist)):
        if dist[w]:
            return w
    raise InvalidCodeError("the zero code has no minimum distance")


def kernel_code_distance(h: FFMatrix, budget: int = DEFAULT_BUDGET) -> int:
    """Minimum distance of ``{x : h x^T = 0}``."""
    null = kernel(h)
    if null.nrows == 0:
        raise InvalidCodeError("parity-check matrix has trivial kernel")
    return min_distance(null, budget)


def brute_force_min_distance(g: FFMatrix) -> int:
    """Reference oracle: direct enumeration of all messages, no shortcuts."""
    f, n = g.field, g.ncols
    best = n + 1
    for msg in itertools.product(range(f.order), repeat=g.nrows):
        if not any(msg):
            continue
        word = g.vec_mul(msg)
        w = sum(1 for x in word if x)
        if w:
            best = min(best, w)
    if best > n:
        raise InvalidCodeError("the zero code has no minimum distance")
    return best

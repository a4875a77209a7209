from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmdsconv.errors import BudgetExceeded, InvalidCodeError
from qmdsconv.galois import gf
from qmdsconv.linear import (
    brute_force_min_distance,
    kernel_code_distance,
    macwilliams,
    min_distance,
    weight_distribution,
)
from qmdsconv.matf import FFMatrix, kernel


def _naive_distribution(g: FFMatrix) -> list[int]:
    f, n = g.field, g.ncols
    words = set()
    for msg in itertools.product(range(f.order), repeat=g.nrows):
        word = [0] * n
        for c, row in zip(msg, g.rows):
            word = [f.add(x, f.mul(c, y)) for x, y in zip(word, row)]
        words.add(tuple(word))
    counts = [0] * (n + 1)
    for w in words:
        counts[sum(1 for x in w if x)] += 1
    return counts


@given(st.sampled_from([2, 3, 4, 5, 9]), st.integers(1, 4), st.integers(2, 7), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_weight_distribution_matches_naive(order, k, n, rnd):
    f = gf(order)
    rows = [[rnd.randrange(order) for _ in range(n)] for _ in range(min(k, n))]
    g = FFMatrix(f, rows, n)
    assert weight_distribution(g) == _naive_distribution(g)


def test_macwilliams_on_the_hamming_code():
    f = gf(2)
    h = FFMatrix(f, [[1, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]])
    dual = _naive_distribution(h)
    assert dual == [1, 0, 0, 0, 7, 0, 0, 0]
    assert macwilliams(dual, 2) == [1, 0, 0, 7, 7, 0, 0, 1]
    assert kernel_code_distance(h) == 3


def test_high_rate_code_uses_the_dual():
    # [10, 8] over GF(64): 64^8 words directly, 64^2 through the dual
    f = gf(64)
    rng = random.Random(3)
    h = FFMatrix(f, [[rng.randrange(1, 64) for _ in range(10)] for _ in range(2)])
    g = kernel(h)
    dist = weight_distribution(g, budget=1 << 13)
    assert sum(dist) == 64**g.nrows
    with pytest.raises(BudgetExceeded):
        weight_distribution(g.take_rows(0, 5), budget=1000)


def test_min_distance_agrees_with_reference():
    rng = random.Random(11)
    f = gf(4)
    for _ in range(30):
        n = rng.randint(2, 6)
        k = rng.randint(1, n)
        g = FFMatrix(f, [[rng.randrange(4) for _ in range(n)] for _ in range(k)])
        if not any(any(r) for r in g.rows):
            continue
        assert min_distance(g) == brute_force_min_distance(g)


def test_zero_code_has_no_distance():
    f = gf(3)
    with pytest.raises(InvalidCodeError):
        min_distance(FFMatrix.zeros(f, 2, 3))
    with pytest.raises(InvalidCodeError):
        kernel_code_distance(FFMatrix.identity(f, 3))

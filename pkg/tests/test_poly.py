from __future__ import annotations

import itertools

from hypothesis import given
from hypothesis import strategies as st

from qmdsconv import poly
from qmdsconv.galois import gf

F = gf(5)
polys = st.lists(st.integers(0, 4), max_size=5).map(poly.trim)


def _cofactor_det(m):
    n = len(m)
    if n == 0:
        return (1,)
    total = poly.ZERO
    for perm in itertools.permutations(range(n)):
        term = (1,)
        for i, j in enumerate(perm):
            term = poly.mul(F, term, m[i][j])
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        total = poly.add(F, total, term if inversions % 2 == 0 else poly.neg(F, term))
    return total


@given(polys, polys)
def test_divmod_reconstructs(a, b):
    if not b:
        return
    q, r = poly.divmod_(F, a, b)
    assert poly.add(F, poly.mul(F, q, b), r) == a
    assert poly.deg(r) < poly.deg(b)


@given(polys, polys, polys)
def test_gcd_divides_and_is_monic(a, b, c):
    g = poly.gcd(F, poly.mul(F, a, c), poly.mul(F, b, c))
    if not g:
        assert not (poly.mul(F, a, c) or poly.mul(F, b, c))
        return
    assert g[-1] == 1
    if c:
        assert poly.divmod_(F, g, poly.monic(F, c))[1] == poly.ZERO


@given(st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(polys, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_cofactor_expansion(m):
    assert poly.det(F, m) == _cofactor_det(m)


def test_evaluate():
    assert poly.evaluate(F, (1, 0, 1), 2) == 0  # 1 + 4 = 5 = 0
    assert poly.evaluate(F, poly.ZERO, 3) == 0
    assert poly.is_unit((3,)) and not poly.is_unit((0, 1))

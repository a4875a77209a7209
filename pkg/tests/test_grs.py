from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmdsconv.errors import FormatError, InvalidCodeError
from qmdsconv.galois import gf, hermitian_field
from qmdsconv.grs import (
    GrsCode,
    grs_code,
    grs_dual_multipliers,
    grs_generator,
    grs_parity_check,
    hermitian_dual_by_membership,
    is_hermitian_dual_containing,
    is_hermitian_self_dual,
    min_distance_bruteforce,
    search_dual_containing,
)
from qmdsconv.linear import brute_force_min_distance
from qmdsconv.matf import rank


@st.composite
def grs_codes(draw, qs=(2, 3, 4, 5), max_n=7):
    q = draw(st.sampled_from(qs))
    f = hermitian_field(q)
    n = draw(st.integers(2, min(max_n, f.order)))
    k = draw(st.integers(1, n))
    a = draw(st.permutations(range(f.order)))[:n]
    v = [draw(st.integers(1, f.order - 1)) for _ in range(n)]
    return GrsCode(f, k, tuple(a), tuple(v))


def _closed_form_w(code: GrsCode) -> tuple[int, ...]:
    f = code.field
    raw = []
    for j, aj in enumerate(code.a):
        u = code.v[j]
        for i, ai in enumerate(code.a):
            if i != j:
                u = f.mul(u, f.sub(aj, ai))
        raw.append(f.inv(u))
    return tuple(f.div(x, raw[0]) for x in raw)


@given(grs_codes())
@settings(max_examples=80, deadline=None)
def test_generator_times_parity_check_vanishes(code):
    h = grs_parity_check(code)
    assert h.nrows == code.n - code.k
    if h.nrows:
        assert (grs_generator(code) @ h.T).is_zero()
        assert rank(h) == code.n - code.k


@given(grs_codes())
@settings(max_examples=80, deadline=None)
def test_dual_multipliers_closed_form(code):
    assert grs_dual_multipliers(code) == _closed_form_w(code)
    assert code.w[0] == 1


@given(grs_codes(qs=(2, 3), max_n=6))
@settings(max_examples=40, deadline=None)
def test_mds_against_reference_enumeration(code):
    if code.field.order ** code.k > 1 << 14:
        return
    d = brute_force_min_distance(grs_generator(code))
    assert d == code.n - code.k + 1
    assert min_distance_bruteforce(code) == d


@given(grs_codes(max_n=8))
@settings(max_examples=120, deadline=None)
def test_containment_predicate_matches_membership(code):
    assert is_hermitian_dual_containing(code) == hermitian_dual_by_membership(code)


@pytest.mark.parametrize("q,n,k", [(2, 4, 3), (3, 4, 2), (3, 6, 5), (3, 8, 6), (4, 8, 6), (5, 10, 8), (5, 12, 8), (5, 24, 21)])
def test_search_finds_verified_witnesses(q, n, k):
    code = search_dual_containing(q, n, k)
    assert code is not None
    assert (code.n, code.k, code.q) == (n, k, q)
    assert hermitian_dual_by_membership(code)
    if code.field.order ** min(k, n - k) <= 1 << 20:
        assert min_distance_bruteforce(code) == n - k + 1


def test_self_dual_witness():
    code = search_dual_containing(3, 4, 2)
    assert is_hermitian_self_dual(code)


def test_search_is_seeded():
    a = search_dual_containing(4, 7, 5, seed=5)
    b = search_dual_containing(4, 7, 5, seed=5)
    assert a == b


def test_search_declines_low_rate_and_bad_dimensions():
    assert search_dual_containing(3, 8, 3) is None
    with pytest.raises(InvalidCodeError):
        search_dual_containing(2, 5, 3)
    with pytest.raises(InvalidCodeError):
        search_dual_containing(3, 4, 0)


def test_translation_preserves_the_code():
    code = search_dual_containing(7, 25, 23)
    moved = code.translate(7)
    g1, g2 = grs_generator(code), grs_generator(moved)
    assert rank(g1.vstack(g2)) == rank(g1) == code.k
    assert moved.w == code.w
    assert is_hermitian_dual_containing(moved)


def test_invalid_codes():
    f = hermitian_field(2)
    with pytest.raises(InvalidCodeError):
        GrsCode(f, 2, (0, 0, 1), (1, 1, 1))
    with pytest.raises(InvalidCodeError):
        GrsCode(f, 2, (0, 1, 2), (1, 0, 1))
    with pytest.raises(InvalidCodeError):
        GrsCode(f, 4, (0, 1, 2), (1, 1, 1))
    with pytest.raises(InvalidCodeError):
        GrsCode(f, 1, (0, 1), (1, 1), w=(1, 2))
    with pytest.raises(InvalidCodeError):
        GrsCode(gf(8), 1, (0, 1), (1, 1))


def test_record_roundtrip():
    rng = random.Random(2)
    for _ in range(10):
        q = rng.choice((2, 3, 4, 5))
        f = hermitian_field(q)
        n = rng.randint(2, min(8, f.order))
        code = grs_code(q, rng.randint(1, n), rng.sample(range(f.order), n),
                        [rng.randrange(1, f.order) for _ in range(n)])
        assert GrsCode.from_text(code.to_text()) == code
    with pytest.raises(FormatError):
        GrsCode.from_text("not a record")
    text = grs_code(2, 1, (1, 2)).to_text().replace("n 2", "n 3")
    with pytest.raises(FormatError):
        GrsCode.from_text(text)

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmdsconv import poly
from qmdsconv.convcode import (
    ConvCode,
    PolyMatrix,
    SplitSpec,
    build_generator_poly,
    check_reduced_basic,
    column_reduced_diagonal,
    conv_from_split,
    conv_params,
    conv_self_orthogonal,
    encode,
    free_distance_search,
    in_hermitian_dual,
    maximal_minor_gcd,
    relative_distance_search,
    split_parity,
    unpad_blocks,
)
from qmdsconv.errors import FormatError, InvalidCodeError, ShapeError
from qmdsconv.galois import gf, hermitian_field
from qmdsconv.grs import grs_parity_check, search_dual_containing
from qmdsconv.matf import FFMatrix

F4 = gf(4)


def _brute_free_distance(c: ConvCode, max_len: int) -> int:
    """Lightest ``u(D) G(D)`` over inputs of degree below ``max_len`` with ``u(0) != 0``."""
    q, best = c.field.order, None
    for flat in itertools.product(range(q), repeat=c.k * max_len):
        rows = [flat[i * max_len:(i + 1) * max_len] for i in range(c.k)]
        if not any(r[0] for r in rows):
            continue
        w = sum(1 for fr in encode(c, [poly.trim(r) for r in rows]) for x in fr if x)
        best = w if best is None else min(best, w)
    return best


def _hermitian(f, x, y):
    return f.dot(x, [f.conj(t) for t in y])


def test_simple_free_distance():
    g = PolyMatrix.from_entries(F4, [[(1,), (1, 1)]])
    c = ConvCode.from_generator(g)
    assert conv_params(c) == (2, 1, 1, 1)
    assert free_distance_search(c).lower == 3
    assert _brute_free_distance(c, 4) == 3


def test_basic_examples():
    good = PolyMatrix.from_entries(F4, [[(1,), (0, 1)], [(), (1,)]])
    rep = check_reduced_basic(good)
    assert rep.basic
    bad = PolyMatrix.from_entries(F4, [[(0, 1), (0, 1)]])
    rep = check_reduced_basic(bad)
    assert not rep.basic and rep.reduced
    assert maximal_minor_gcd(bad)[0] == (0, 1)
    with pytest.raises(InvalidCodeError):
        ConvCode.from_generator(bad)


def test_reducedness_uses_leading_rows():
    # rows (1, D) and (1, D + 1): leading rows (0,1) and (0,1) are dependent
    g = PolyMatrix.from_entries(F4, [[(1,), (0, 1)], [(1,), (1, 1)]])
    rep = check_reduced_basic(g)
    assert rep.basic and not rep.reduced
    assert not rep


@st.composite
def poly_matrices(draw, field=F4, max_deg=2):
    k = draw(st.integers(1, 2))
    n = draw(st.integers(k, 3))
    entries = [[poly.trim(draw(st.lists(st.integers(0, field.order - 1), max_size=max_deg + 1)))
                for _ in range(n)] for _ in range(k)]
    return PolyMatrix.from_entries(field, entries)


@given(poly_matrices())
@settings(max_examples=80, deadline=None)
def test_minor_gcd_and_column_reduction_agree(g):
    gcd, complete = maximal_minor_gcd(g)
    assert complete
    if not gcd:
        with pytest.raises(InvalidCodeError):
            column_reduced_diagonal(g)
        return
    prod = (1,)
    for d in column_reduced_diagonal(g):
        prod = poly.mul(F4, prod, d)
    assert poly.monic(F4, prod) == gcd


def test_forced_column_reduction_fallback():
    # the first minor is not a unit in either case, so one scanned minor cannot settle basicness
    not_basic = PolyMatrix.from_entries(F4, [[(0, 1), (), (1,)], [(), (0, 1), (1,)]])
    basic = PolyMatrix.from_entries(F4, [[(0, 1), (), (1,)], [(), (1,), ()]])
    for g, want in ((not_basic, False), (basic, True)):
        rep = check_reduced_basic(g, minor_limit=1)
        assert rep.method == "column-reduction"
        assert rep.basic == want == check_reduced_basic(g).basic


def test_exact_search_matches_brute_force():
    rng = random.Random(7)
    checked = 0
    while checked < 12:
        entries = [[poly.trim([rng.randrange(4) for _ in range(rng.randint(1, 3))]) for _ in range(2)]]
        g = PolyMatrix.from_entries(F4, entries)
        if g.degree < 1 or not check_reduced_basic(g):
            continue
        c = ConvCode(g)
        fd = free_distance_search(c)
        assert fd.exact
        assert fd.lower == _brute_free_distance(c, 5)
        checked += 1


def test_bounded_search_gives_upper_bound():
    g = PolyMatrix.from_entries(F4, [[(1, 1, 1), (1, 0, 1)]])
    c = ConvCode.from_generator(g)
    exact = free_distance_search(c, exact=True)
    bounded = free_distance_search(c, exact=False, span_limit=3, lower_bound=2)
    assert exact.lower == 5
    assert bounded.upper >= exact.lower and bounded.lower == 2 and not bounded.exact


def test_split_build_roundtrip():
    code = search_dual_containing(5, 24, 21)
    h = grs_parity_check(code)
    for counts in [(3,), (2, 1), (1, 1, 1)]:
        blocks = split_parity(h, counts)
        g = build_generator_poly(blocks)
        assert unpad_blocks(g, counts) == blocks
        assert g.nrows == counts[0] and g.degree == len(counts) - 1
    with pytest.raises(ShapeError):
        split_parity(h, (1, 1))
    with pytest.raises(ShapeError):
        SplitSpec((1, 2))


def test_split_of_dual_containing_code_is_self_orthogonal():
    code = search_dual_containing(4, 8, 6)
    c = conv_from_split(grs_parity_check(code), (1, 1))
    assert conv_params(c) == (8, 1, 1, 1)
    assert conv_self_orthogonal(c)
    rng = random.Random(1)
    for _ in range(10):
        u = [poly.trim([rng.randrange(16) for _ in range(4)])]
        frames = encode(c, u)
        if frames:
            assert in_hermitian_dual(c, frames)


def test_self_orthogonality_matches_shift_definition():
    rng = random.Random(5)
    f = hermitian_field(2)
    for _ in range(40):
        entries = [[poly.trim([rng.randrange(4) for _ in range(2)]) for _ in range(4)]]
        g = PolyMatrix.from_entries(f, entries)
        if not g.coeffs:
            continue
        c = ConvCode(g)
        row = g.row(0)
        n = g.ncols
        flat = [x for fr in row for x in fr]
        want = True
        for s in range(len(row)):
            shifted = [0] * (s * n) + flat
            other = flat + [0] * (s * n)
            if _hermitian(f, other, shifted):
                want = False
        assert conv_self_orthogonal(c) == want


def test_relative_distance_on_small_split():
    code = search_dual_containing(4, 8, 6)
    c = conv_from_split(grs_parity_check(code), (1, 1))
    rel = relative_distance_search(c, 6, 3)
    assert rel.weight == 3 and rel.exhaustive_through == 2
    assert in_hermitian_dual(c, rel.witness)


def test_polymatrix_record_roundtrip():
    g = PolyMatrix.from_entries(F4, [[(1, 2), (0, 3)], [(3,), (1,)]])
    assert PolyMatrix.from_text(g.to_text()) == g
    with pytest.raises(FormatError):
        PolyMatrix.from_text("2 2 5 GF(2^2;1,1,1)\n")
    with pytest.raises(FormatError):
        PolyMatrix.from_text("")


def test_degree_zero_generator():
    f = hermitian_field(2)
    g = PolyMatrix(f, 1, 3, (FFMatrix(f, [[1, 1, 1]]),))
    c = ConvCode.from_generator(g)
    assert conv_params(c) == (3, 1, 0, 0)
    assert free_distance_search(c).lower == 3

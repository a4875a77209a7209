from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmdsconv.convcode import ConvCode, DualBounds, PolyMatrix, conv_from_split
from qmdsconv.errors import ConstructionError, InvalidCodeError, PreconditionError
from qmdsconv.galois import hermitian_field
from qmdsconv.grs import grs_code, grs_parity_check, is_hermitian_dual_containing, search_dual_containing
from qmdsconv.matf import FFMatrix
from qmdsconv.quantum import (
    QConvParams,
    build_construction_one,
    construct_one,
    construct_two,
    derive_quantum,
    mds_bound,
)


def test_mds_bound_values():
    # (n-k)/2 * (floor(2 gamma / (n+k)) + 1) + gamma + 1, evaluated by hand
    assert mds_bound(24, 20, 1) == 2 * 1 + 2
    assert mds_bound(24, 22, 2) == 1 * 1 + 3
    assert mds_bound(288, 272, 8) == 8 + 9
    assert mds_bound(288, 258, 1) == 15 + 2
    assert mds_bound(4, 2, 6) == 1 * (2 + 1) + 7
    with pytest.raises(ValueError):
        mds_bound(5, 2, 1)
    with pytest.raises(ValueError):
        mds_bound(4, 4, 1)


@given(st.integers(2, 400), st.integers(1, 200), st.integers(1, 100))
def test_construction_parameters_meet_the_bound(n, s, t0):
    # memory one: k = n - 2 t0, gamma = s - t0 with s/2 <= t0 < s <= n/2
    if not (s <= 2 * t0 and t0 < s and 2 * s < n):
        return
    assert mds_bound(n, n - 2 * t0, s - t0) == s + 1


def test_params_render_and_serialize():
    p = QConvParams(5, 24, 20, 1, 1, 4, 4, mds=True)
    assert p.bracket() == "[(24,20,1;1,4)]_5"
    assert p.exact and p.d_free == 4
    rec = json.loads(p.to_json())
    assert rec["k"] == 20 and rec["mds"] is True
    r = QConvParams(5, 24, 20, 1, 1, 3, 4)
    assert r.bracket() == "[(24,20,1;1,3..4)]_5"
    assert r.d_free == (3, 4)
    with pytest.raises(InvalidCodeError):
        QConvParams(5, 24, 21, 1, 1, 4, 4)
    with pytest.raises(InvalidCodeError):
        QConvParams(5, 24, 20, 1, 1, 5, 5)


@pytest.fixture(scope="module")
def w24():
    return search_dual_containing(5, 24, 21)


@pytest.fixture(scope="module")
def w8():
    return search_dual_containing(4, 8, 6)


def test_construction_one(w24):
    built = build_construction_one(w24, 2)
    assert built.params.bracket() == "[(24,20,1;1,4)]_5"
    assert built.params.mds
    assert built.split == (2, 1)
    assert all(built.checks.values())
    assert built.block_distances == (3, 2)


def test_construction_two(w24):
    p = construct_two(w24)
    assert p.bracket() == "[(24,22,2;2,4)]_5"
    assert p.mds


def test_small_construction_one(w8):
    assert construct_one(w8, 1).bracket() == "[(8,6,1;1,3)]_4"


@pytest.mark.parametrize("t0,constraint", [(2, "t0 < n-k"), (0, "(n-k)/2 <= t0")])
def test_construction_one_preconditions(w8, t0, constraint):
    with pytest.raises(PreconditionError) as err:
        construct_one(w8, t0)
    assert err.value.constraint == constraint


def test_construction_one_rejects_half_rate():
    code = search_dual_containing(3, 4, 2)
    with pytest.raises(PreconditionError) as err:
        construct_one(code, 1)
    assert err.value.constraint == "k != n/2"


def test_construction_two_preconditions(w8):
    with pytest.raises(PreconditionError) as err:
        construct_two(w8)
    assert err.value.constraint == "k < n-2"
    with pytest.raises(PreconditionError) as err:
        construct_two(search_dual_containing(3, 4, 2))
    assert err.value.constraint == "n/2 < k"


def test_non_dual_containing_input_is_rejected():
    code = grs_code(3, 5, tuple(range(1, 9)), (1,) * 8)
    assert not is_hermitian_dual_containing(code)
    for run in (lambda: construct_one(code, 2), lambda: construct_two(code)):
        with pytest.raises(PreconditionError) as err:
            run()
        assert err.value.constraint == "C^perpH <= C"


def test_zero_evaluation_point_is_translated():
    code = search_dual_containing(7, 25, 23)
    assert 0 in code.a
    built = build_construction_one(code, 1)
    assert built.translated_by != 0
    assert 0 not in built.code.a
    assert built.params.bracket() == "[(25,23,1;1,3)]_7"


def test_full_length_code_with_zero_point_cannot_be_split():
    code = search_dual_containing(3, 9, 7)
    with pytest.raises(ConstructionError):
        construct_one(code, 1)


def test_derive_quantum_memory_zero(w8):
    c = conv_from_split(grs_parity_check(w8), (2,))
    p = derive_quantum(c)
    assert p.bracket() == "[(8,4,0;0,3)]_4"


def test_derive_quantum_needs_self_orthogonality():
    f = hermitian_field(2)
    g = PolyMatrix(f, 1, 3, (FFMatrix(f, [[1, 0, 0]]),))
    with pytest.raises(PreconditionError) as err:
        derive_quantum(ConvCode(g))
    assert err.value.constraint == "V <= V^perpH"


def test_derive_quantum_caps_at_the_bound(w8):
    c = conv_from_split(grs_parity_check(w8), (1, 1))
    p = derive_quantum(c, DualBounds(2, 9, 7))
    assert (p.d_low, p.d_high) == (2, mds_bound(8, 6, 1))
    with pytest.raises(PreconditionError):
        derive_quantum(c)

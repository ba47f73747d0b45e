import pytest
from hypothesis import given
from hypothesis import strategies as st

from edgecodes.codes import hilbert_function, regularity_index
from edgecodes.formulas import (
    ceil_div,
    graph_invariants,
    length_formula,
    singleton_bound,
    theorem3_bounds,
    torus_hilbert,
    torus_min_distance,
    torus_reg,
)
from edgecodes.gf import GF
from edgecodes.graphs import from_dsl
from edgecodes.points import build_torus

SQUARES = from_dsl("union:cycle:4+cycle:4")


def test_length_formula():
    assert length_formula(8, 2, 5) == 1024
    assert length_formula(2, 1, 9) == 1
    with pytest.raises(ValueError):
        length_formula(4, 3, 3)


def test_torus_hilbert_values():
    assert [torus_hilbert(4, d, 5) for d in range(9)] == [1, 4, 10, 20, 32, 44, 54, 60, 63]
    assert torus_hilbert(4, 9, 5) == 64
    assert torus_hilbert(1, 5, 7) == 1


def test_torus_min_distance_values():
    # s=4, q=5: (q-1)^(s-2-a) (q-1-b) with d = 3a + b
    assert [torus_min_distance(4, 5, d) for d in range(1, 10)] == [48, 32, 16, 12, 8, 4, 3, 2, 1]
    assert torus_min_distance(3, 3, 1) == 2
    assert torus_min_distance(3, 3, 2) == 1
    assert torus_min_distance(2, 2, 1) == 1


def test_bounds_for_two_squares_q5():
    rows = [theorem3_bounds(SQUARES, 5, d) for d in range(1, 9)]
    assert [r.l_d for r in rows] == [512, 192, 64, 32, 12, 4, 2, 1]
    assert [r.u_d for r in rows] == [768, 512, 256, 192, 128, 64, 48, 32]
    r = rows[0]
    assert (r.reg_lower, r.reg_upper, r.reg_torus_lower, r.length) == (1, 24, 9, 1024)


def test_singleton_and_dimension_bound():
    hx = [8, 34, 104, 240, 440, 670, 856, 975]
    B = [theorem3_bounds(SQUARES, 5, d, h).B_d for d, h in zip(range(1, 9), hx)]
    assert B == [1017, 991, 921, 785, 585, 355, 169, 50]
    assert singleton_bound(10, 10) == 1
    for d, h in zip(range(1, 9), hx):
        assert theorem3_bounds(SQUARES, 5, d).dim_lower <= h


def test_single_point_regularity_bound():
    b = theorem3_bounds(from_dsl("edge"), 7, 1)
    assert b.length == 1
    assert b.reg_lower == 0 <= b.reg_upper


def test_invariants_reject_bad_graphs():
    with pytest.raises(ValueError):
        graph_invariants(from_dsl("cycle:5"))
    with pytest.raises(ValueError):
        graph_invariants(from_dsl("kab:1,2"))


@given(st.integers(-100, 100), st.integers(1, 30))
def test_ceil_div(a, b):
    assert ceil_div(a, b) == -((-a) // b)
    assert ceil_div(a, b) * b >= a > (ceil_div(a, b) - 1) * b


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_torus_hilbert_and_reg_against_rank(k, q):
    T = build_torus(k, GF(q))
    reg = regularity_index(T, method="rank")
    assert reg == torus_reg(k, q)
    for d in range(reg + 2):
        assert hilbert_function(T, d, "rank") == torus_hilbert(k, d, q)


@given(st.integers(1, 6), st.sampled_from([3, 4, 5, 7, 8]), st.integers(0, 30))
def test_torus_hilbert_shape(k, q, d):
    h = torus_hilbert(k, d, q)
    assert 1 <= h <= (q - 1) ** (k - 1)
    assert h <= torus_hilbert(k, d + 1, q)
    if d >= torus_reg(k, q):
        assert h == (q - 1) ** (k - 1)
    else:
        assert h < torus_hilbert(k, d + 1, q)


@given(st.integers(1, 6), st.sampled_from([3, 4, 5, 7, 8]), st.integers(0, 30))
def test_torus_distance_shape(s, q, d):
    delta = torus_min_distance(s, q, d)
    assert delta >= torus_min_distance(s, q, d + 1) >= 1
    assert delta <= singleton_bound((q - 1) ** (s - 1), torus_hilbert(s, d, q))

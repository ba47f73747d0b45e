import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from edgecodes.codes import evaluation_matrix, hilbert_function, monomials
from edgecodes.gf import GF
from edgecodes.graphs import from_dsl
from edgecodes.ideals import (
    PolyError,
    Report,
    SparsePoly,
    _setup,
    check_theta_containment,
    evaluate,
    i_y_generators,
    ker_theta_dim,
    theta,
    theta_matrix,
    verify_complete_intersection,
    verify_iy_decomposition,
    verify_prop_theta,
)
from edgecodes.linalg import MatrixGF, kernel_basis, rank
from edgecodes.points import build_torus, build_x, build_y

SQUARES = "union:cycle:4+cycle:4"


def X(spec, s, i, a=1):
    return SparsePoly.var(spec, s, i, a)


def test_evaluate_examples():
    F = GF(5)
    assert evaluate(X(F, 2, 0) - X(F, 2, 1), (1, 1)) == F.zero
    binom = X(F, 3, 1, 4) - X(F, 3, 0, 4)
    for pt in build_torus(3, F):
        assert evaluate(binom, pt) == F.zero
    with pytest.raises(PolyError):
        evaluate(binom, (1, 1))


def test_kernel_polynomials_vanish_on_x():
    F = GF(3)
    Xs = build_x(from_dsl("cycle:6"), F)
    exps = monomials(6, 2)
    K = kernel_basis(MatrixGF(F, evaluation_matrix(Xs, exps)))
    rng = np.random.default_rng(3)
    for row in K[rng.choice(len(K), size=min(5, len(K)), replace=False)]:
        f = SparsePoly.from_vector(F, exps, row)
        for pt in list(Xs)[:8]:
            assert evaluate(f, pt) == F.zero


def test_homogeneity_is_enforced():
    F = GF(3)
    with pytest.raises(PolyError):
        SparsePoly(F, 2, {(1, 0): 1, (2, 0): 1})
    assert (X(F, 2, 0) - X(F, 2, 0)).is_zero()


def test_generators_two_squares():
    gens = i_y_generators((2, 2, 2, 2), GF(5))
    assert list(gens.labels) == [
        "X3^(q-1)-X1^(q-1)", "X5^(q-1)-X1^(q-1)", "X7^(q-1)-X1^(q-1)",
        "X2-X1", "X4-X3", "X6-X5", "X8-X7",
    ]
    assert str(gens.all()[0]) == "X3^4 - X1^4"


def test_generators_small_cases():
    assert len(i_y_generators((1,), GF(3))) == 0
    gens = i_y_generators((3, 1), GF(3))
    assert [str(g) for g in gens.w0] == ["X4^2 - X1^2"]
    assert [str(g) for g in gens.blocks[0]] == ["X2 - X1", "X3 - X1"]
    assert gens.blocks[1] == ()
    assert len(gens) == 3 == gens.s - 1


def test_theta_examples():
    F = GF(5)
    assert theta(X(F, 4, 1) - X(F, 4, 0), (2, 2)).is_zero()
    img = theta(X(F, 4, 2, 4) - X(F, 4, 0, 4), (2, 2))
    assert str(img) == "Y3^4 - Y1^4"
    with pytest.raises(PolyError):
        theta(X(F, 3, 0), (2, 2))


def polys(spec, s, d):
    exps = monomials(s, d)

    @st.composite
    def build(draw):
        coeffs = draw(st.lists(st.integers(0, spec.q - 1), min_size=len(exps), max_size=len(exps)))
        return SparsePoly.from_vector(spec, exps, coeffs)

    return build()


F7 = GF(7)
BLOCKS = (2, 1, 3)


@given(polys(F7, 6, 2), polys(F7, 6, 1), polys(F7, 6, 2))
def test_theta_is_a_ring_map(f, g, h):
    assert theta(f * g, BLOCKS) == theta(f, BLOCKS) * theta(g, BLOCKS)
    assert theta(f + h, BLOCKS) == theta(f, BLOCKS) + theta(h, BLOCKS)
    image = theta(f * g, BLOCKS)
    assert image.is_zero() or image.degree == 3


@given(polys(F7, 6, 2))
def test_theta_matrix_agrees_with_substitution(f):
    s_exps, r_exps = monomials(6, 2), monomials(3, 2)
    th = theta_matrix(s_exps, r_exps, BLOCKS)
    via_matrix = (th @ f.to_vector(s_exps)) % 7
    assert np.array_equal(via_matrix, theta(f, BLOCKS).to_vector(r_exps))


@pytest.mark.parametrize("d", range(4))
def test_ker_theta_dimension(d):
    s_exps, r_exps = monomials(6, d), monomials(3, d)
    th = MatrixGF(F7, theta_matrix(s_exps, r_exps, BLOCKS))
    assert len(kernel_basis(th)) == ker_theta_dim(6, 3, d)
    assert rank(th) == len(r_exps)


@pytest.mark.parametrize("blocks,q,count,size", [((2, 2, 2, 2), 5, 7, 64), ((1, 1), 3, 1, 2), ((4,), 5, 3, 1), ((3, 1, 2), 4, 5, 9)])
def test_complete_intersection(blocks, q, count, size):
    rep = verify_complete_intersection(blocks, GF(q))
    assert rep.ok, rep.failures()
    assert len(i_y_generators(blocks, GF(q))) == count
    assert len(build_y(blocks, GF(q))) == size


def test_prop_theta_two_squares_q3():
    rep = verify_prop_theta(from_dsl(SQUARES), GF(3), 4)
    assert rep.ok, rep.failures()
    assert {r.degree for r in rep.results} == set(range(5))


def test_prop_theta_single_edge_is_vacuous():
    rep = verify_prop_theta(from_dsl("edge"), GF(5), 3)
    assert rep.ok
    assert all(r.expected == 0 for r in rep.results if r.check.startswith("dim"))


def test_iy_decomposition_reports_hpsi():
    rep = verify_iy_decomposition(from_dsl(SQUARES), GF(3), 3)
    assert rep.ok, rep.failures()
    hpsi = [r.expected for r in rep.results if r.check == "dim ker psi_d = H_psi(d)"]
    assert hpsi[0] == 0
    assert hpsi == sorted(hpsi)


def test_corrupted_kernel_vector_is_caught():
    F = GF(3)
    st_ = _setup(from_dsl(SQUARES), F)
    d = 2
    s_exps = monomials(st_.s, d)
    K = kernel_basis(MatrixGF(F, evaluation_matrix(st_.X, s_exps))).copy()
    good = check_theta_containment(st_, d, K, s_exps, Report("control"))
    assert good.ok
    # Y1^2 has image Y1^2, which does not vanish on the torus
    K[0] = 0
    K[0, 0] = 1
    bad = check_theta_containment(st_, d, K, s_exps, Report("corrupted"))
    assert not bad.ok
    assert bad.witness["vector"] == 0 and len(bad.witness["point"]) == st_.k


def test_report_json():
    rep = verify_complete_intersection((2, 1), GF(3))
    text = rep.to_json()
    assert '"check": "generator count = s-1"' in text


@pytest.mark.parametrize("name,q", [("cycle:6", 3), ("kmm:2", 4)])
def test_y_hilbert_is_torus_hilbert(name, q):
    from edgecodes.formulas import torus_hilbert
    from edgecodes.graphs import canonicalize

    g, co = canonicalize(from_dsl(name))
    Y = build_y(co.block_degrees, GF(q))
    for d in range(6):
        assert hilbert_function(Y, d, "rank") == torus_hilbert(co.k, d, q)

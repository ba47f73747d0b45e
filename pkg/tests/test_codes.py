import itertools
import json
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgecodes.codes import (
    CodeParams,
    code_params,
    evaluation_matrix,
    evaluation_profile,
    hilbert_function,
    min_distance,
    monomial_str,
    monomials,
    params_from_csv,
    params_to_csv,
    regularity_index,
)
from edgecodes.gf import GF
from edgecodes.graphs import Graph, analyze, canonicalize, from_dsl, is_perfect_matching
from edgecodes.linalg import MatrixGF, matmul, rank
from edgecodes.points import PointSet, build_torus, build_x, normalize
from oracles import brute_distance, eval_vectors

SQUARES = "union:cycle:4+cycle:4"


def test_monomials():
    assert monomials(2, 2).tolist() == [[2, 0], [1, 1], [0, 2]]
    assert len(monomials(8, 1)) == 8
    assert len(monomials(8, 8)) == comb(15, 7) == 6435
    assert monomials(3, 0).tolist() == [[0, 0, 0]]
    assert monomial_str([2, 0, 1]) == "X1^2*X3"
    with pytest.raises(ValueError):
        monomials(0, 1)


@given(st.integers(1, 5), st.integers(0, 6))
def test_monomials_graded_lex(s, d):
    m = monomials(s, d)
    assert len(m) == comb(s - 1 + d, s - 1)
    assert np.all(m.sum(axis=1) == d)
    rows = [tuple(r) for r in m.tolist()]
    assert rows == sorted(rows, reverse=True)


def test_profile_examples():
    F = GF(3)
    X = build_x(from_dsl("cycle:4"), F)
    assert evaluation_profile(X, 0).H == 1
    p = evaluation_profile(X, 1, with_kernel=True)
    assert p.H == 4 == len(X)
    assert p.kernel.shape[0] == 4 - 4


def test_profile_kernel_and_generator_rows():
    F = GF(4)
    X = build_x(from_dsl("cycle:6"), F)
    for d in range(4):
        p = evaluation_profile(X, d, with_kernel=True)
        full = evaluation_matrix(X, p.monomials)
        assert p.kernel.shape[0] == len(p.monomials) - p.H
        if p.kernel.size:
            assert not np.any(matmul(F, full, p.kernel.T))
        # generator rows span the column space of the evaluation matrix
        both = np.vstack([full.T, p.generator_matrix])
        assert rank(MatrixGF(F, both)) == p.H == rank(MatrixGF(F, p.generator_matrix))


def test_evaluation_matches_naive_arithmetic():
    F = GF(9)
    X = build_x(from_dsl("kmm:2"), F)
    exps = monomials(4, 3)
    assert evaluation_matrix(X, exps).T.tolist() == eval_vectors(F, list(X), exps.tolist())


def test_denominator_makes_evaluation_projective():
    F = GF(5)
    rng = np.random.default_rng(0)
    pts = np.array([[1, 2, 0], [1, 0, 4], [1, 3, 3]])  # zero coordinates use the generic route
    scaled = (pts * rng.integers(1, 5, size=(3, 1))) % 5
    exps = monomials(3, 2)
    a = evaluation_matrix(PointSet(F, pts), exps)
    b = evaluation_matrix(PointSet(F, scaled), exps)
    assert np.array_equal(a, b)
    with pytest.raises(ValueError):
        evaluation_matrix(PointSet(F, np.array([[0, 1, 1]])), exps)


@pytest.mark.parametrize("name,q", [("cycle:6", 3), ("kmm:3", 4), (SQUARES, 3), ("cycle:8", 4), ("path:6", 5)])
def test_character_count_matches_rank(name, q):
    X = build_x(from_dsl(name), GF(q))
    reg = regularity_index(X, method="rank")
    for d in range(reg + 2):
        assert hilbert_function(X, d, "character") == hilbert_function(X, d, "rank")
    with pytest.raises(ValueError):
        hilbert_function(X, 1, "magic")


def test_regularity_examples():
    assert regularity_index(build_x(from_dsl("edge"), GF(5))) == 0
    assert regularity_index(build_x(from_dsl(SQUARES), GF(3))) == 3


@pytest.mark.parametrize("name,q", [("cycle:6", 5), ("kmm:3", 3), (SQUARES, 4)])
def test_hilbert_strictly_increasing_until_length(name, q):
    X = build_x(from_dsl(name), GF(q))
    reg = regularity_index(X)
    H = [hilbert_function(X, d) for d in range(reg + 3)]
    assert all(a < b for a, b in zip(H[:reg], H[1 : reg + 1]))
    assert H[reg:] == [len(X)] * 3


ORACLE_CASES = [
    ("torus", 3, 3, 1),
    ("torus", 3, 4, 1),
    ("torus", 4, 3, 2),
    ("cycle:4", 4, None, 1),
    ("cycle:6", 3, None, 1),
    ("kmm:2", 5, None, 1),
    ("path:4", 4, None, 1),
    ("torus", 3, 4, 2),
    ("torus", 5, 3, 2),
]


@pytest.mark.parametrize("name,q,s,d", ORACLE_CASES)
def test_min_distance_matches_oracle(name, q, s, d):
    F = GF(q)
    X = build_torus(s, F) if name == "torus" else build_x(from_dsl(name), F)
    p = evaluation_profile(X, d)
    dim, delta = brute_distance(F, list(X), monomials(X.s, d).tolist())
    dist = min_distance(p)
    assert p.H == dim
    assert dist.exact and dist.value == delta


def test_min_distance_interval_mode():
    F = GF(3)
    X = build_x(from_dsl(SQUARES), F)
    p = evaluation_profile(X, 1)
    exact = min_distance(p)
    capped = min_distance(p, budget=100, lower=4)
    assert exact.exact and not capped.exact
    assert capped.lo <= exact.value <= capped.hi
    with pytest.raises(ValueError):
        capped.value
    with pytest.raises(ValueError):
        min_distance(np.zeros((0, 4), dtype=np.int64), spec=F)


def test_code_params_examples():
    cp = code_params(from_dsl("edge"), GF(5), 3)
    assert (cp.length, cp.dim, cp.min_distance) == (1, 1, 1)
    cp = code_params(from_dsl("cycle:4"), GF(3), 1)
    assert (cp.length, cp.dim, cp.min_distance) == (4, 4, 1)


@pytest.mark.slow
def test_code_params_two_squares_q5_d2():
    cp = code_params(from_dsl(SQUARES), GF(5), 2)
    assert (cp.length, cp.dim) == (1024, 34)
    assert not cp.exact and 192 <= cp.delta_lo <= cp.delta_hi <= 512


def test_code_params_validation():
    with pytest.raises(ValueError):
        CodeParams("g", 3, 1, 10, 8, 5, 5, True)  # Singleton: 5 > 3
    with pytest.raises(ValueError):
        CodeParams("g", 3, 1, 10, 8, 3, 2, False)


def test_csv_and_json_round_trip():
    rows = [
        code_params(from_dsl("cycle:6"), GF(3), d) for d in range(1, 4)
    ] + [CodeParams("union:cycle:4+cycle:4", 5, 2, 1024, 34, 192, 256, False)]
    assert params_from_csv(params_to_csv(rows)) == rows
    for r in rows:
        assert CodeParams.from_dict(json.loads(r.to_json())) == r


def _relabel(g: Graph, perm, edge_perm) -> Graph:
    edges = [g.edges[i] for i in edge_perm]
    return analyze(Graph(g.n, tuple((perm[u], perm[v]) for u, v in edges), g.name))


@settings(max_examples=25)
@given(
    st.sampled_from([("cycle:6", 3), ("kmm:2", 4), ("path:4", 5), (SQUARES, 3), ("cycle:4", 5)]),
    st.integers(1, 3),
    st.randoms(use_true_random=False),
)
def test_params_invariant_under_relabelling(case, d, rnd):
    name, q = case
    g = from_dsl(name)
    perm = list(range(g.n))
    rnd.shuffle(perm)
    eperm = list(range(g.s))
    rnd.shuffle(eperm)
    h = _relabel(g, perm, eperm)
    F = GF(q)
    a, b = code_params(g, F, d), code_params(h, F, d)
    assert (a.length, a.dim) == (b.length, b.dim)
    if a.exact and b.exact:
        assert a.delta_lo == b.delta_lo
    else:
        # sampled intervals may differ but must overlap
        assert max(a.delta_lo, b.delta_lo) <= min(a.delta_hi, b.delta_hi)
    # the point sets agree up to the coordinate permutation
    X = build_x(g, F)
    Y = build_x(h, F)
    assert {normalize([p[i] for i in eperm], F) for p in X} == Y.as_set()


@pytest.mark.parametrize("name,q", [("kmm:2", 4), ("kmm:3", 3), ("cycle:6", 4)])
def test_params_independent_of_matching(name, q):
    g = from_dsl(name)
    U, W = g.bipartition
    matchings = [
        list(zip(U, w)) for w in itertools.permutations(W) if is_perfect_matching(g, list(zip(U, w)))
    ]
    assert len(matchings) >= 2
    F = GF(q)
    seen = set()
    for M in matchings:
        cg, co = canonicalize(g, M)
        X = build_x(cg, F)
        key = tuple((len(X), *(code_params(cg, F, d, xset=X).dim for d in range(4))))
        seen.add((key, code_params(cg, F, 1, xset=X).min_distance))
    assert len(seen) == 1

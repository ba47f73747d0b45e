"""Evaluation codes C_X(d): Hilbert function, regularity index, minimum distance."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from .formulas import singleton_bound, theorem3_bounds
from .gf import FieldSpec
from .graphs import Graph, analyze, perfect_matching
from .linalg import MatrixGF, kernel_basis, matmul, rank, row_basis
from .points import DEFAULT_BUDGET, PointSet, build_x

MONOMIAL_LIMIT = 5_000_000
# above this many points "auto" counts characters instead of eliminating
RANK_POINT_LIMIT = 1024


class RegularityNotReached(RuntimeError):
    pass


def monomials(s: int, d: int) -> np.ndarray:
    """Exponent vectors of all degree-d monomials in s variables.

    Rows are in graded-lex order with X1 > X2 > ... > Xs, so for s=2, d=2
    the order is X1^2, X1 X2, X2^2.
    """
    if s < 1 or d < 0:
        raise ValueError(f"need s >= 1 and d >= 0, got s={s}, d={d}")
    count = comb(s - 1 + d, s - 1)
    if count > MONOMIAL_LIMIT:
        raise OverflowError(f"{count} monomials of degree {d} in {s} variables exceeds {MONOMIAL_LIMIT}")
    return _monomials(s, d).copy()


@lru_cache(maxsize=256)
def _monomials(s: int, d: int) -> np.ndarray:
    if s == 1:
        return np.array([[d]], dtype=np.int64)
    parts = []
    for a in range(d, -1, -1):
        rest = _monomials(s - 1, d - a)
        parts.append(np.hstack([np.full((len(rest), 1), a, dtype=np.int64), rest]))
    out = np.vstack(parts)
    out.setflags(write=False)
    return out


def _unique_rows(a: np.ndarray) -> np.ndarray:
    """Distinct rows; sorting a bytes view is much faster than ``np.unique(axis=0)``."""
    a = np.ascontiguousarray(a)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return a
    view = a.view(np.dtype((np.void, a.dtype.itemsize * a.shape[1]))).ravel()
    _, idx = np.unique(view, return_index=True)
    return a[np.sort(idx)]


def monomial_str(exps, var: str = "X", names=None) -> str:
    parts = []
    for i, a in enumerate(exps):
        if a:
            name = names[i] if names else f"{var}{i + 1}"
            parts.append(name if a == 1 else f"{name}^{a}")
    return "*".join(parts) or "1"


def evaluation_matrix(xset: PointSet, exps: np.ndarray) -> np.ndarray:
    """``M[i, j] = m_j(P_i) / X1(P_i)^d`` as field codes (points x monomials)."""
    spec = xset.spec
    exps = np.asarray(exps, dtype=np.int64)
    d = int(exps[0].sum()) if len(exps) else 0
    coords = xset.coords
    if np.any(coords[:, 0] == 0):
        raise ValueError("evaluation needs a nonzero first coordinate at every point")
    if xset.on_torus:
        logs = xset.logs()
        vals = logs @ exps.T - d * logs[:, :1]
        return spec.power_from_log(vals)
    # zero coordinates: evaluate factor by factor
    out = np.ones((len(xset), len(exps)), dtype=np.int64)
    for j in range(xset.s):
        col = coords[:, j]
        for a in np.unique(exps[:, j]):
            if a == 0:
                continue
            pw = np.ones_like(col)
            for _ in range(int(a)):
                pw = spec.vmul(pw, col)
            sel = exps[:, j] == a
            out[:, sel] = spec.vmul(out[:, sel], pw[:, None])
    denom_inv = spec.inv_table[coords[:, 0]]
    dpow = np.ones_like(denom_inv)
    for _ in range(d):
        dpow = spec.vmul(dpow, denom_inv)
    return spec.vmul(out, dpow[:, None])


def _distinct_columns(xset: PointSet, d: int) -> np.ndarray:
    """Evaluation matrix restricted to its distinct columns.

    On the torus a monomial's values only depend on its exponents mod q-1,
    so those classes are collapsed before evaluating.  Dropping repeated
    columns leaves the rank and the column space unchanged.
    """
    exps = monomials(xset.s, d)
    if xset.on_torus and xset.spec.q > 2:
        red = _unique_rows(exps % (xset.spec.q - 1))
        logs = xset.logs()
        vals = logs @ red.T - d * logs[:, :1]
        mat = xset.spec.power_from_log(vals)
    else:
        mat = evaluation_matrix(xset, exps)
    return _unique_rows(mat.T).T


def hilbert_by_rank(xset: PointSet, d: int) -> int:
    if d == 0:
        return 1
    return rank(MatrixGF(xset.spec, _distinct_columns(xset, d)))


def hilbert_by_characters(xset: PointSet, d: int) -> int:
    """Count distinct characters ``t -> t^(param^T a - d param[0])`` mod q-1.

    For a set parameterized by monomials over the torus, each normalized
    monomial restricted to the set is a character of ``(K*)^r``; distinct
    characters are linearly independent, so the count is H(d).
    """
    if xset.param is None:
        raise ValueError("character count needs a parameterized point set")
    if d == 0:
        return 1
    qm1 = xset.spec.q - 1
    param = xset.param
    chars = (monomials(xset.s, d) @ param - d * param[0]) % qm1
    return len(_unique_rows(chars))


def hilbert_function(xset: PointSet, d: int, method: str = "auto") -> int:
    """H_X(d) = dim of the degree-d evaluation code.

    ``method`` is "rank" (Gaussian elimination), "character" (counting, needs
    a parameterized set) or "auto" (rank up to RANK_POINT_LIMIT points).
    """
    if method == "auto":
        method = "character" if xset.param is not None and len(xset) > RANK_POINT_LIMIT else "rank"
    if method == "rank":
        return hilbert_by_rank(xset, d)
    if method == "character":
        return hilbert_by_characters(xset, d)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True, eq=False)
class EvalProfile:
    d: int
    H: int
    npoints: int
    generator_matrix: np.ndarray  # (H, npoints), RREF rows spanning C_X(d)
    monomials: np.ndarray | None = field(default=None, repr=False)
    kernel: np.ndarray | None = field(default=None, repr=False)  # rows: I_X(d) coefficient vectors
    spec: FieldSpec | None = field(default=None, repr=False)


def evaluation_profile(xset: PointSet, d: int, with_kernel: bool = False) -> EvalProfile:
    """Degree-d evaluation data for ``xset``.

    The generator matrix is the RREF of the transposed evaluation matrix
    (duplicate columns removed first).  ``with_kernel`` also returns a basis
    of I_X(d) in the monomial basis, which needs the full matrix.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    spec = xset.spec
    if with_kernel:
        exps = monomials(xset.s, d)
        full = evaluation_matrix(xset, exps)
        kern = kernel_basis(MatrixGF(spec, full))
        gen = row_basis(MatrixGF(spec, _unique_rows(full.T)))
        return EvalProfile(d, gen.shape[0], len(xset), gen, exps, kern, spec)
    cols = _distinct_columns(xset, d) if d else np.ones((len(xset), 1), dtype=np.int64)
    gen = row_basis(MatrixGF(spec, cols.T))
    return EvalProfile(d, gen.shape[0], len(xset), gen, spec=spec)


def regularity_index(xset: PointSet, cap: int | None = None, method: str = "auto") -> int:
    """Least d with H(d) = |X|, sweeping d = 0, 1, 2, ..."""
    cap = len(xset) if cap is None else cap
    target = len(xset)
    for d in range(cap + 1):
        if hilbert_function(xset, d, method) == target:
            return d
    raise RegularityNotReached(f"H(d) < {target} for all d <= {cap}")


def hilbert_series(xset: PointSet, d_max: int, method: str = "auto") -> list[int]:
    return [hilbert_function(xset, d, method) for d in range(d_max + 1)]


# -- minimum distance --------------------------------------------------------


@dataclass(frozen=True)
class Distance:
    lo: int
    hi: int
    exact: bool
    enumerated: int = 0

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"distance only known within [{self.lo}, {self.hi}]")
        return self.lo


def _weights(spec: FieldSpec, msgs: np.ndarray, gen: np.ndarray) -> np.ndarray:
    return np.count_nonzero(matmul(spec, msgs, gen), axis=1)


def _digits(idx: np.ndarray, base: int, width: int) -> np.ndarray:
    radix = base ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // radix[None, :]) % base


def _exhaustive(spec: FieldSpec, gen: np.ndarray, best: int) -> tuple[int, int]:
    """Minimum weight over all words whose first nonzero message entry is 1.

    The span of the last t tail rows is tabulated once; every other message
    contributes a base vector b and the weights of ``table + b`` follow from
    one comparison, since a + b = 0 exactly when a = -b.
    """
    H, n = gen.shape
    q = spec.q
    small = gen.astype(np.uint8) if q <= 256 else gen
    t_max = max(0, int(np.log((1 << 22) / max(n, 1)) / np.log(q)))
    batch = max(1, (1 << 20) // n)
    done = 0
    for lead in range(H):
        if best == 1:
            break
        w = H - 1 - lead
        t = min(w, t_max)
        high, low_rows = gen[lead + 1 : lead + 1 + w - t], gen[lead + 1 + w - t :]
        if t:
            table = matmul(spec, _digits(np.arange(q**t, dtype=np.int64), q, t), low_rows)
            table = table.astype(small.dtype)
        else:
            table = np.zeros((1, n), dtype=small.dtype)
        nh = w - t
        for start in range(0, q**nh, batch):
            idx = np.arange(start, min(q**nh, start + batch), dtype=np.int64)
            bases = matmul(spec, _digits(idx, q, nh), high) if nh else np.zeros((1, n), dtype=np.int64)
            neg = spec.neg_table[spec.vadd(bases, gen[lead][None, :])].astype(small.dtype)
            for row in neg:
                zeros = int(np.count_nonzero(table == row[None, :], axis=1).max())
                best = min(best, n - zeros)
                if best == 1:
                    break
            done += len(idx) * len(table)
            if best == 1:
                break
    return best, done


def min_distance(
    profile: EvalProfile | np.ndarray,
    budget: int = DEFAULT_BUDGET,
    lower: int = 1,
    spec: FieldSpec | None = None,
    sample_seed: int = 0,
) -> Distance:
    """Minimum Hamming weight of the code spanned by the generator rows.

    If ``q^H <= budget`` every message whose first nonzero entry is 1 is
    encoded (that covers every codeword up to scalars) and the result is
    exact.  Otherwise ``[lower, best weight seen]`` is returned, where the
    weights seen come from the generator rows and a seeded random sample.
    ``lower`` only feeds the interval; the exhaustive sweep stops early at
    weight 1 and nowhere else.
    """
    if isinstance(profile, EvalProfile):
        gen, spec = profile.generator_matrix, profile.spec
    else:
        gen = np.asarray(profile, dtype=np.int64)
    if spec is None:
        raise ValueError("field spec required")
    H, length = gen.shape
    if H == 0:
        raise ValueError("the zero code has no minimum distance")
    q = spec.q
    best = int(np.count_nonzero(gen, axis=1).min())
    if q**H <= budget:
        best, done = _exhaustive(spec, gen, best)
        return Distance(best, best, True, done)
    rng = np.random.default_rng(sample_seed)
    n_sample = min(budget, 1 << 12)
    msgs = rng.integers(0, q, size=(n_sample, H))
    msgs = msgs[np.any(msgs != 0, axis=1)]
    if len(msgs):
        best = min(best, int(_weights(spec, msgs, gen).min()))
    return Distance(max(1, min(lower, best)), best, False, len(msgs))


# -- assembled parameters ----------------------------------------------------


CSV_FIELDS = ["graph", "q", "d", "length", "dim", "delta_lo", "delta_hi", "exact"]


@dataclass(frozen=True)
class CodeParams:
    graph: str
    q: int
    d: int
    length: int
    dim: int
    delta_lo: int
    delta_hi: int
    exact: bool

    def __post_init__(self) -> None:
        if self.delta_lo < 1 or self.delta_lo > self.delta_hi:
            raise ValueError(f"bad distance interval [{self.delta_lo}, {self.delta_hi}]")
        if self.exact and self.delta_hi > singleton_bound(self.length, self.dim):
            raise ValueError("Singleton bound violated")

    @property
    def min_distance(self) -> int | tuple[int, int]:
        return self.delta_lo if self.exact else (self.delta_lo, self.delta_hi)

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, row: dict) -> "CodeParams":
        exact = row["exact"]
        if isinstance(exact, str):
            exact = exact.strip().lower() in ("1", "true", "yes")
        return cls(
            str(row["graph"]), int(row["q"]), int(row["d"]), int(row["length"]), int(row["dim"]),
            int(row["delta_lo"]), int(row["delta_hi"]), bool(exact),
        )


def params_to_csv(rows: list[CodeParams]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({**r.as_dict(), "exact": int(r.exact)})
    return buf.getvalue()


def params_from_csv(text: str) -> list[CodeParams]:
    return [CodeParams.from_dict(row) for row in csv.DictReader(io.StringIO(text))]


def has_bipartite_matching(graph: Graph) -> bool:
    g = graph if graph.gamma is not None else analyze(graph)
    return g.gamma == 0 and perfect_matching(g) is not None


def code_params(
    graph: Graph,
    spec: FieldSpec,
    d: int,
    budget: int = DEFAULT_BUDGET,
    xset: PointSet | None = None,
) -> CodeParams:
    """Length, dimension and (exact or bracketed) minimum distance of C_X(d)."""
    xset = build_x(graph, spec, budget) if xset is None else xset
    profile = evaluation_profile(xset, d)
    lower = 1
    if has_bipartite_matching(graph) and d >= 1:
        lower = theorem3_bounds(graph, spec.q, d, profile.H).l_d
    if profile.H == len(xset):
        dist = Distance(1, 1, True)
    else:
        dist = min_distance(profile, budget, lower=lower)
    hi = dist.hi
    if not dist.exact:
        hi = min(hi, singleton_bound(len(xset), profile.H))
    # a closed interval pins the value even without full enumeration
    exact = dist.exact or dist.lo == hi
    return CodeParams(graph.name, spec.q, d, len(xset), profile.H, dist.lo, hi, exact)

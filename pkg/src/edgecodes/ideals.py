"""Sparse polynomials, generators of I_Y, the variable-collapsing map theta,
and degreewise checks of the ideal identities relating X, Y and the torus.

All ideal statements are checked one degree at a time with linear algebra:
I_X(d) is the kernel of the degree-d evaluation matrix on X, span
membership is a rank comparison, and containment in a vanishing ideal is
evaluation at every point.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from math import comb

import numpy as np

from .codes import evaluation_matrix, monomials
from .gf import FieldElem, FieldSpec
from .graphs import Graph, canonicalize
from .linalg import MatrixGF, kernel_basis, matmul, rank
from .points import PointSet, build_torus, build_x, build_y


class PolyError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SparsePoly:
    """Homogeneous polynomial: exponent tuple -> nonzero field code."""

    spec: FieldSpec
    nvars: int
    terms: dict = field(default_factory=dict)
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(int(a) for a in exps)
            if len(exps) != self.nvars:
                raise PolyError(f"exponent {exps} does not have {self.nvars} entries")
            c = int(c) % self.spec.q if self.spec.e == 1 else int(c)
            if c:
                clean[exps] = c
        degs = {sum(e) for e in clean}
        if len(degs) > 1:
            raise PolyError(f"not homogeneous: degrees {sorted(degs)}")
        object.__setattr__(self, "terms", clean)

    @classmethod
    def monomial(cls, spec, nvars, exps, coeff: int = 1, names=None) -> "SparsePoly":
        return cls(spec, nvars, {tuple(exps): coeff}, names)

    @classmethod
    def var(cls, spec, nvars, i, power: int = 1, names=None) -> "SparsePoly":
        exps = [0] * nvars
        exps[i] = power
        return cls.monomial(spec, nvars, exps, 1, names)

    @classmethod
    def from_vector(cls, spec, exps: np.ndarray, coeffs, names=None) -> "SparsePoly":
        nvars = exps.shape[1]
        return cls(spec, nvars, {tuple(e): int(c) for e, c in zip(exps.tolist(), coeffs) if c}, names)

    @property
    def degree(self) -> int | None:
        return sum(next(iter(self.terms))) if self.terms else None

    def is_zero(self) -> bool:
        return not self.terms

    def to_vector(self, exps: np.ndarray) -> np.ndarray:
        index = {tuple(e): j for j, e in enumerate(exps.tolist())}
        out = np.zeros(len(exps), dtype=np.int64)
        for e, c in self.terms.items():
            if e not in index:
                raise PolyError(f"monomial {e} not in the given basis")
            out[index[e]] = c
        return out

    def _compatible(self, other: "SparsePoly") -> None:
        if other.spec != self.spec or other.nvars != self.nvars:
            raise PolyError("polynomials live in different rings")

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = int(self.spec.add_table[out.get(e, 0), c])
        return SparsePoly(self.spec, self.nvars, out, self.names)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.spec, self.nvars, {e: int(self.spec.neg_table[c]) for e, c in self.terms.items()}, self.names)

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other: "SparsePoly | int") -> "SparsePoly":
        spec = self.spec
        if isinstance(other, int):
            return SparsePoly(spec, self.nvars, {e: int(spec.mul_table[c, other]) for e, c in self.terms.items()}, self.names)
        self._compatible(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = int(spec.add_table[out.get(e, 0), spec.mul_table[c1, c2]])
        return SparsePoly(spec, self.nvars, out, self.names)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SparsePoly)
            and other.spec == self.spec
            and other.nvars == self.nvars
            and other.terms == self.terms
        )

    def __hash__(self) -> int:
        return hash((self.spec, self.nvars, frozenset(self.terms.items())))

    def evaluate(self, point) -> FieldElem:
        """Value at a coordinate vector (the given affine representative)."""
        point = [int(x) for x in point]
        if len(point) != self.nvars:
            raise PolyError(f"point has {len(point)} coordinates, ring has {self.nvars} variables")
        spec = self.spec
        acc = 0
        for exps, c in self.terms.items():
            term = c
            for x, a in zip(point, exps):
                for _ in range(a):
                    term = int(spec.mul_table[term, x])
            acc = int(spec.add_table[acc, term])
        return FieldElem(spec, acc)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.names or tuple(f"X{i + 1}" for i in range(self.nvars))
        out = ""
        for exps, c in self.terms.items():
            mono = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, exps) if a)
            neg = self.spec.e == 1 and c == self.spec.p - 1 and self.spec.p > 2
            if neg:
                coef = ""
            elif c == 1:
                coef = ""
            else:
                coef = f"{FieldElem(self.spec, c)!r}*" if mono else repr(FieldElem(self.spec, c))
            body = coef + (mono or ("1" if not coef else ""))
            if not out:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    __repr__ = __str__


def evaluate(p: SparsePoly, point) -> FieldElem:
    return p.evaluate(point)


def y_names(k: int) -> tuple[str, ...]:
    """Variable names of the collapsed ring: Y1, Y3, ..., Y_{2k-1}."""
    return tuple(f"Y{2 * i + 1}" for i in range(k))


# -- generators of I_Y -------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSet:
    block_degrees: tuple[int, ...]
    q: int
    w0: tuple[SparsePoly, ...]
    blocks: tuple[tuple[SparsePoly, ...], ...]  # W_1, W_3, ..., W_{2k-1}
    labels: tuple[str, ...]  # same order as all(), exponent q-1 written symbolically

    @property
    def s(self) -> int:
        return sum(self.block_degrees)

    def all(self) -> list[SparsePoly]:
        return list(self.w0) + [p for blk in self.blocks for p in blk]

    def __len__(self) -> int:
        return len(self.w0) + sum(len(b) for b in self.blocks)

    def degrees(self) -> list[int]:
        return [p.degree for p in self.all()]


def i_y_generators(block_degrees, spec: FieldSpec) -> GeneratorSet:
    """Binomials X_lead^{q-1} - X_1^{q-1} per later block, X_j - X_lead inside blocks."""
    block_degrees = tuple(int(b) for b in block_degrees)
    if not block_degrees or min(block_degrees) < 1:
        raise ValueError(f"block degrees must be positive, got {block_degrees}")
    s = sum(block_degrees)
    q = spec.q
    starts = np.cumsum((0,) + block_degrees[:-1]).tolist()
    var = lambda i, a=1: SparsePoly.var(spec, s, i, a)  # noqa: E731
    w0, labels = [], []
    for st in starts[1:]:
        w0.append(var(st, q - 1) - var(0, q - 1))
        labels.append(f"X{st + 1}^(q-1)-X1^(q-1)")
    blocks = []
    for st, b in zip(starts, block_degrees):
        blk = []
        for j in range(st + 1, st + b):
            blk.append(var(j) - var(st))
            labels.append(f"X{j + 1}-X{st + 1}")
        blocks.append(tuple(blk))
    return GeneratorSet(block_degrees, q, tuple(w0), tuple(blocks), tuple(labels))


# -- theta ---------------------------------------------------------------------


def block_index(block_degrees) -> list[int]:
    return [i for i, b in enumerate(block_degrees) for _ in range(b)]


def theta(p: SparsePoly, block_degrees) -> SparsePoly:
    """Substitute X_i -> Y_{block(i)}; the result lives in k variables."""
    block_degrees = list(block_degrees)
    if p.nvars != sum(block_degrees):
        raise PolyError(f"polynomial has {p.nvars} variables, blocks cover {sum(block_degrees)}")
    k = len(block_degrees)
    idx = block_index(block_degrees)
    spec = p.spec
    out: dict = {}
    for exps, c in p.terms.items():
        y = [0] * k
        for i, a in enumerate(exps):
            y[idx[i]] += a
        y = tuple(y)
        out[y] = int(spec.add_table[out.get(y, 0), c])
    return SparsePoly(spec, k, out, y_names(k))


def theta_matrix(s_exps: np.ndarray, r_exps: np.ndarray, block_degrees) -> np.ndarray:
    """0/1 matrix of theta in degree d: rows are R_d monomials, columns S_d monomials."""
    k = len(block_degrees)
    collapse = np.zeros((sum(block_degrees), k), dtype=np.int64)
    for i, b in enumerate(block_index(block_degrees)):
        collapse[i, b] = 1
    images = s_exps @ collapse
    index = {tuple(e): j for j, e in enumerate(r_exps.tolist())}
    mat = np.zeros((len(r_exps), len(s_exps)), dtype=np.int64)
    for col, e in enumerate(images.tolist()):
        mat[index[tuple(e)], col] = 1
    return mat


# -- reports ---------------------------------------------------------------------


@dataclass
class CheckResult:
    check: str
    degree: int | None
    expected: object
    got: object
    ok: bool
    witness: object = None

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class Report:
    name: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def add(self, check, degree, expected, got, ok=None, witness=None) -> CheckResult:
        res = CheckResult(check, degree, expected, got, expected == got if ok is None else ok, witness)
        self.results.append(res)
        return res

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.ok]

    def to_json(self) -> str:
        return json.dumps([r.as_dict() for r in self.results], default=_jsonable)


def _jsonable(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return str(obj)


def _vanishing_witness(spec, evals: np.ndarray, vectors: np.ndarray, pset: PointSet):
    """First (vector index, point) where a coefficient vector does not vanish, if any."""
    if vectors.size == 0:
        return None
    vals = matmul(spec, evals, vectors.T)  # points x vectors
    bad = np.argwhere(vals != 0)
    if bad.size == 0:
        return None
    pt, vec = bad[0]
    return {"vector": int(vec), "point": [int(x) for x in pset.coords[pt]]}


# -- checks ----------------------------------------------------------------------


@dataclass
class _Setup:
    spec: FieldSpec
    graph: Graph
    blocks: tuple[int, ...]
    X: PointSet
    Y: PointSet
    T: PointSet

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def s(self) -> int:
        return sum(self.blocks)


def _setup(graph: Graph, spec: FieldSpec) -> _Setup:
    g, co = canonicalize(graph)
    return _Setup(spec, g, co.block_degrees, build_x(g, spec), build_y(co.block_degrees, spec), build_torus(co.k, spec))


def check_theta_containment(setup: _Setup, d: int, kernel: np.ndarray, s_exps: np.ndarray, report: Report) -> CheckResult:
    """Every theta(f), f a row of ``kernel``, vanishes on T_{k-1}."""
    spec = setup.spec
    r_exps = monomials(setup.k, d)
    th = theta_matrix(s_exps, r_exps, setup.blocks)
    images = matmul(spec, kernel, th.T) if kernel.size else np.zeros((0, len(r_exps)), dtype=np.int64)
    witness = _vanishing_witness(spec, evaluation_matrix(setup.T, r_exps), images, setup.T)
    return report.add("theta(I_X) in I_T", d, 0, 0 if witness is None else 1, witness is None, witness)


def verify_prop_theta(graph: Graph, spec: FieldSpec, d_max: int, setup: _Setup | None = None) -> Report:
    """theta(I_X(d)) = I_T(d) for the torus on the matching edges, d <= d_max."""
    st = setup or _setup(graph, spec)
    report = Report("theta(I_X) = I_T")
    q = spec.q
    for d in range(d_max + 1):
        s_exps = monomials(st.s, d)
        r_exps = monomials(st.k, d)
        kx = kernel_basis(MatrixGF(spec, evaluation_matrix(st.X, s_exps)))
        check_theta_containment(st, d, kx, s_exps, report)

        th = theta_matrix(s_exps, r_exps, st.blocks)
        images = matmul(spec, kx, th.T) if kx.size else np.zeros((0, len(r_exps)), dtype=np.int64)
        img_rank = rank(MatrixGF(spec, images)) if images.size else 0
        # I_T(d) as a kernel on the torus, independently of the generators
        it_dim = len(r_exps) - rank(MatrixGF(spec, evaluation_matrix(st.T, r_exps)))
        report.add("dim theta(I_X(d)) = dim I_T(d)", d, it_dim, img_rank)

        # reverse inclusion: multiples of Y_j^{q-1} - Y_1^{q-1} lie in theta(I_X(d))
        mults = []
        labels = []
        if d >= q - 1 and st.k > 1:
            index = {tuple(e): j for j, e in enumerate(r_exps.tolist())}
            for cof in monomials(st.k, d - (q - 1)).tolist():
                for j in range(1, st.k):
                    v = np.zeros(len(r_exps), dtype=np.int64)
                    a = list(cof)
                    a[j] += q - 1
                    b = list(cof)
                    b[0] += q - 1
                    v[index[tuple(a)]] = 1
                    v[index[tuple(b)]] = int(spec.neg_table[1])
                    mults.append(v)
                    labels.append((tuple(cof), j))
        witness = None
        if mults:
            stacked = np.vstack([images, np.array(mults)]) if images.size else np.array(mults)
            if rank(MatrixGF(spec, stacked)) != img_rank:
                for v, lab in zip(mults, labels):
                    both = np.vstack([images, v[None, :]]) if images.size else v[None, :]
                    if rank(MatrixGF(spec, both)) != img_rank:
                        witness = {"cofactor": lab[0], "generator": f"{y_names(st.k)[lab[1]]}^{q - 1}-Y1^{q - 1}"}
                        break
        report.add("I_T(d) in theta(I_X(d))", d, 0, 0 if witness is None else 1, witness is None, witness)
    return report


def verify_iy_decomposition(graph: Graph, spec: FieldSpec, d_max: int, setup: _Setup | None = None) -> Report:
    """I_Y(d) = I_X(d) + ker theta_d, and H_X - H_Y = dim I_Y(d)/I_X(d) = dim ker psi_d."""
    st = setup or _setup(graph, spec)
    report = Report("I_Y = I_X + ker theta")
    for d in range(d_max + 1):
        s_exps = monomials(st.s, d)
        r_exps = monomials(st.k, d)
        ev_x = evaluation_matrix(st.X, s_exps)
        ev_y = evaluation_matrix(st.Y, s_exps)
        ev_t = evaluation_matrix(st.T, r_exps)
        kx = kernel_basis(MatrixGF(spec, ev_x))
        ky = kernel_basis(MatrixGF(spec, ev_y))
        th = theta_matrix(s_exps, r_exps, st.blocks)
        kth = kernel_basis(MatrixGF(spec, th))
        parts = [a for a in (kx, kth) if a.size]
        summed = np.vstack(parts) if parts else np.zeros((0, len(s_exps)), dtype=np.int64)
        sum_dim = rank(MatrixGF(spec, summed)) if summed.size else 0
        report.add("dim (I_X(d) + ker theta_d) = dim I_Y(d)", d, len(ky), sum_dim)
        witness = _vanishing_witness(spec, ev_y, summed, st.Y)
        report.add("I_X(d) + ker theta_d vanishes on Y", d, 0, 0 if witness is None else 1, witness is None, witness)

        # evaluating theta(f) on the torus is evaluating f on Y
        ok = np.array_equal(matmul(spec, ev_t, th), ev_y)
        report.add("f(P) = theta(f)(Q) on Y", d, True, ok)

        h_x = len(s_exps) - len(kx)
        h_y = len(s_exps) - len(ky)
        h_psi = h_x - h_y
        report.add("H_X - H_Y = dim I_Y(d) - dim I_X(d)", d, h_psi, len(ky) - len(kx))
        # ker psi_d = {f : theta(f) in I_T(d)} / I_X(d)
        pre_dim = len(s_exps) - rank(MatrixGF(spec, matmul(spec, ev_t, th)))
        report.add("dim ker psi_d = H_psi(d)", d, h_psi, pre_dim - len(kx), witness={"H_X": h_x, "H_Y": h_y, "dim_IX": len(kx)})
    return report


def verify_complete_intersection(block_degrees, spec: FieldSpec) -> Report:
    """Generator count s-1, vanishing on Y, and |Y| equal to the degree product."""
    gens = i_y_generators(block_degrees, spec)
    Y = build_y(block_degrees, spec)
    s = gens.s
    report = Report("Y complete intersection")
    report.add("generator count = s-1", None, s - 1, len(gens))
    witness = None
    for g, label in zip(gens.all(), gens.labels):
        for pt in Y:
            if g.evaluate(pt):
                witness = {"generator": label, "point": list(pt)}
                break
        if witness:
            break
    report.add("generators vanish on Y", None, 0, 0 if witness is None else 1, witness is None, witness)
    prod = 1
    for deg in gens.degrees():
        prod *= deg
    report.add("|Y| = product of generator degrees", None, prod, len(Y))
    report.add("|Y| = (q-1)^(k-1)", None, (spec.q - 1) ** (len(gens.block_degrees) - 1), len(Y))
    return report


def ker_theta_dim(s: int, k: int, d: int) -> int:
    """dim S_d - dim R_d: theta is onto in every degree."""
    return comb(s - 1 + d, s - 1) - comb(k - 1 + d, k - 1)

"""Projective point sets: the toric set X of a graph, the set Y, and tori.

Points are stored as rows of integer field codes, normalized so that the
first nonzero coordinate is 1, deduplicated and sorted lexicographically.
Sets built from a monomial parameterization ``t -> (t^a_1, ..., t^a_s)``
remember the exponent matrix; ``codes.hilbert_function`` can use it.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .gf import FieldSpec
from .graphs import Graph

DEFAULT_BUDGET = 2**24


class BudgetExceeded(RuntimeError):
    pass


def normalize(vec, spec: FieldSpec) -> tuple[int, ...]:
    """Scale a nonzero coordinate vector so its first nonzero entry is 1."""
    vec = np.asarray(vec, dtype=np.int64)
    nz = np.flatnonzero(vec)
    if nz.size == 0:
        raise ValueError("the zero vector is not a projective point")
    lead = spec.inv_table[vec[nz[0]]]
    return tuple(int(x) for x in spec.vmul(vec, lead))


@dataclass(frozen=True, eq=False)
class PointSet:
    spec: FieldSpec
    coords: np.ndarray  # (npoints, s) field codes
    provenance: str = ""
    # exponent matrix (s, r): coordinate j is prod_i t_i^param[j, i]
    param: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.coords.ndim != 2 or self.coords.shape[0] == 0:
            raise ValueError("a point set needs at least one point")
        self.coords.setflags(write=False)

    @property
    def s(self) -> int:
        return self.coords.shape[1]

    def __len__(self) -> int:
        return self.coords.shape[0]

    def __iter__(self):
        for row in self.coords:
            yield tuple(int(x) for x in row)

    def __contains__(self, point) -> bool:
        return tuple(point) in self.as_set()

    def as_set(self) -> set[tuple[int, ...]]:
        return set(map(tuple, self.coords.tolist()))

    @property
    def on_torus(self) -> bool:
        return bool(np.all(self.coords != 0))

    def logs(self) -> np.ndarray:
        """Discrete logs of all coordinates (torus points only)."""
        if not self.on_torus:
            raise ValueError("point set has zero coordinates")
        return self.spec.log_table[self.coords]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"x{j + 1}" for j in range(self.s)])
        w.writerows(self.coords.tolist())
        return buf.getvalue()


def from_points(points, spec: FieldSpec, provenance: str = "") -> PointSet:
    """Normalize, dedupe and sort an arbitrary collection of nonzero vectors."""
    rows = sorted({normalize(p, spec) for p in points})
    if not rows:
        raise ValueError("no points given")
    return PointSet(spec, np.array(rows, dtype=np.int64), provenance)


def parametrized_set(param, spec: FieldSpec, provenance: str = "", budget: int = DEFAULT_BUDGET) -> PointSet:
    """Image of ``(K*)^r`` under ``t -> [t^param[0], ..., t^param[s-1]]``.

    Every tuple is visited (no subgroup shortcut).  Work is done on discrete
    logs: coordinate logs are ``L @ param.T`` mod q-1, normalized by
    subtracting the first coordinate's log.
    """
    param = np.asarray(param, dtype=np.int64)
    s, r = param.shape
    qm1 = spec.q - 1
    total = qm1**r
    if total > budget:
        raise BudgetExceeded(f"{qm1}^{r} = {total} tuples exceeds enumeration budget {budget}")
    chunk = 1 << 18
    seen = []
    radix = qm1 ** np.arange(r - 1, -1, -1, dtype=np.int64)
    # rows are packed into one integer key when it fits in int64
    packed = s * np.log2(max(qm1, 2)) < 62
    weights = qm1 ** np.arange(s - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        tlogs = (idx[:, None] // radix[None, :]) % qm1
        logs = (tlogs @ param.T) % qm1
        logs = (logs - logs[:, :1]) % qm1
        seen.append(np.unique(logs @ weights) if packed else np.unique(logs, axis=0))
    if packed:
        keys = np.unique(np.concatenate(seen))
        logs = (keys[:, None] // weights[None, :]) % qm1
    else:
        logs = np.unique(np.concatenate(seen), axis=0)
    coords = spec.exp_table[logs]
    coords = np.unique(coords, axis=0)  # lexicographic on codes
    param.setflags(write=False)
    return PointSet(spec, coords, provenance, param)


def incidence_param(graph: Graph) -> np.ndarray:
    """Exponent matrix (s, n) whose row j is the 0/1 indicator of edge j."""
    param = np.zeros((graph.s, graph.n), dtype=np.int64)
    for j, (u, v) in enumerate(graph.edges):
        param[j, u] = param[j, v] = 1
    return param


def build_x(graph: Graph, spec: FieldSpec, budget: int = DEFAULT_BUDGET) -> PointSet:
    """Toric set parameterized by the edges, coordinates in ``graph.edges`` order."""
    return parametrized_set(incidence_param(graph), spec, f"X:{graph.name}", budget)


def build_y(block_degrees, spec: FieldSpec, budget: int = DEFAULT_BUDGET) -> PointSet:
    """Points ``[t1,..,t1, t3,..,t3, ...]`` with block i repeated ``block_degrees[i]`` times."""
    block_degrees = list(block_degrees)
    if not block_degrees or min(block_degrees) < 1:
        raise ValueError(f"block degrees must be positive, got {block_degrees}")
    param = np.zeros((sum(block_degrees), len(block_degrees)), dtype=np.int64)
    row = 0
    for i, b in enumerate(block_degrees):
        param[row : row + b, i] = 1
        row += b
    return parametrized_set(param, spec, f"Y:{tuple(block_degrees)}", budget)


def build_torus(s: int, spec: FieldSpec, budget: int = DEFAULT_BUDGET) -> PointSet:
    if s < 1:
        raise ValueError("torus dimension must be >= 0")
    return parametrized_set(np.eye(s, dtype=np.int64), spec, f"T:{s - 1}", budget)


def is_subset(a: PointSet, b: PointSet) -> bool:
    if a.s != b.s or a.spec != b.spec:
        raise ValueError(f"incompatible point sets: P^{a.s - 1}/{a.spec!r} vs P^{b.s - 1}/{b.spec!r}")
    return a.as_set() <= b.as_set()

"""Dense exact linear algebra over GF(q) on numpy arrays of field codes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import FieldSpec


@dataclass(frozen=True, eq=False)
class MatrixGF:
    spec: FieldSpec
    data: np.ndarray

    def __post_init__(self) -> None:
        if self.data.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {self.data.shape}")
        if self.data.size and (self.data.min() < 0 or self.data.max() >= self.spec.q):
            raise ValueError(f"entries out of range for {self.spec!r}")

    @classmethod
    def of(cls, spec: FieldSpec, rows) -> "MatrixGF":
        data = np.array(rows, dtype=np.int64)
        if data.ndim == 1:
            data = data.reshape(1, -1) if data.size else data.reshape(0, 0)
        return cls(spec, data)

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> "MatrixGF":
        return cls(spec, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "MatrixGF":
        return cls(spec, np.eye(n, dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> "MatrixGF":
        return MatrixGF(self.spec, self.data.T.copy())

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        return MatrixGF(self.spec, matmul(self.spec, self.data, other.data))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MatrixGF)
            and other.spec == self.spec
            and np.array_equal(self.data, other.data)
        )


def matmul(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Field matrix product of code arrays."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if spec.e == 1:
        p = spec.p
        # float64 BLAS is exact while partial sums stay below 2^52
        step = max(1, (1 << 52) // ((p - 1) ** 2 or 1))
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        af, bf = a.astype(np.float64), b.astype(np.float64)
        for k0 in range(0, a.shape[1], step):
            part = af[:, k0 : k0 + step] @ bf[k0 : k0 + step]
            out = (out + np.fmod(part, p).astype(np.int64)) % p
        return out
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = spec.add_table[out, spec.mul_table[a[:, k, None], b[None, k, :]]]
    return out


def _eliminate(spec: FieldSpec, data: np.ndarray, full: bool) -> tuple[np.ndarray, list[int]]:
    """Gaussian elimination; first nonzero entry in column order is the pivot.

    With ``full`` the result is the reduced row echelon form, otherwise only
    rows below each pivot are cleared (enough for the rank).
    """
    A = np.array(data, dtype=np.int64, copy=True)
    rows, cols = A.shape
    prime = spec.e == 1
    p = spec.p
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r, c:] = spec.vmul(A[r, c:], int(spec.inv_table[lead]))
        target = np.flatnonzero(A[:, c]) if full else r + 1 + np.flatnonzero(A[r + 1 :, c])
        target = target[target != r]
        if target.size:
            f = A[target, c][:, None]
            prow = A[r, c:][None, :]
            if prime:
                A[target, c:] = (A[target, c:] - f * prow) % p
            else:
                A[target, c:] = spec.add_table[A[target, c:], spec.neg_table[spec.mul_table[f, prow]]]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(m: MatrixGF) -> int:
    if 0 in m.shape:
        return 0
    return len(_eliminate(m.spec, m.data, full=False)[1])


def rref(m: MatrixGF) -> MatrixGF:
    if 0 in m.shape:
        return m
    return MatrixGF(m.spec, _eliminate(m.spec, m.data, full=True)[0])


def rref_with_pivots(m: MatrixGF) -> tuple[MatrixGF, list[int]]:
    if 0 in m.shape:
        return m, []
    A, piv = _eliminate(m.spec, m.data, full=True)
    return MatrixGF(m.spec, A), piv


def row_basis(m: MatrixGF) -> np.ndarray:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    R, piv = rref_with_pivots(m)
    return R.data[: len(piv)]


def kernel_basis(m: MatrixGF) -> np.ndarray:
    """Canonical basis of ``{v : m v = 0}`` as rows, one per free column.

    The vector for free column f has a 1 at f, zeros at the other free
    columns, and minus the RREF entries at the pivot columns.
    """
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref_with_pivots(m)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    if not free:
        return basis
    free_idx = np.array(free)
    basis[np.arange(len(free)), free_idx] = 1
    if piv:
        block = R.data[: len(piv)][:, free_idx]  # (npiv, nfree)
        basis[:, piv] = m.spec.neg_table[block].T
    return basis


def in_span(spec: FieldSpec, rows: np.ndarray, vec: np.ndarray) -> bool:
    """``vec`` lies in the row space of ``rows``: rank does not grow when stacked."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, len(vec))
    base = rank(MatrixGF(spec, rows))
    return rank(MatrixGF(spec, np.vstack([rows, np.asarray(vec, dtype=np.int64)[None, :]]))) == base

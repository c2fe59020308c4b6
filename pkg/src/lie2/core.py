"""Lie algebras over GF(2^k) given by structure constants.

``table[i, j]`` holds the coordinates of ``[b_i, b_j]``. In characteristic 2
the bracket is symmetric, and the diagonal is zero by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .exactla import (
    Subspace,
    common_kernel,
    lincomb,
    matmul,
    nullspace,
    spin,
)
from .field import FieldSpec


class LieError(ValueError):
    """Raised for malformed algebras or illegal operations on them."""


class LieAlgebra:
    """A finite-dimensional Lie algebra with an explicit basis."""

    def __init__(self, field: FieldSpec, table: np.ndarray, labels: Sequence[str] | None = None):
        table = np.asarray(table, dtype=field.dtype)
        n = table.shape[0]
        if table.shape != (n, n, n):
            raise LieError(f"structure table must be n x n x n, got {table.shape}")
        if not np.array_equal(table, table.transpose(1, 0, 2)):
            raise LieError("bracket table is not symmetric (characteristic 2 alternation)")
        if np.any(table[np.arange(n), np.arange(n)]):
            raise LieError("[b_i, b_i] must vanish")
        self.field = field
        self.table = table
        self.table.setflags(write=False)
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(n))
        if len(self.labels) != n:
            raise LieError("one label per basis vector required")
        self._ad = None

    # -- construction ------------------------------------------------------
    @classmethod
    def from_constants(cls, field: FieldSpec, dim: int, constants: Iterable, labels=None) -> "LieAlgebra":
        """Build from ``(i, j, m, c)`` entries with ``i < j``: [b_i,b_j] has c at m."""
        table = np.zeros((dim, dim, dim), dtype=field.dtype)
        for i, j, m, c in constants:
            i, j, m, c = int(i), int(j), int(m), field.check(int(c))
            if not (0 <= i < j < dim and 0 <= m < dim):
                raise LieError(f"constant index out of range or not i<j: {(i, j, m)}")
            table[i, j, m] = c
            table[j, i, m] = c
        return cls(field, table, labels)

    def constants(self) -> list[tuple[int, int, int, int]]:
        """Nonzero entries with i < j, ordered by (i, j, m)."""
        i, j, m = np.nonzero(self.table)
        keep = i < j
        out = [(int(a), int(b), int(c), int(self.table[a, b, c])) for a, b, c in zip(i[keep], j[keep], m[keep])]
        out.sort()
        return out

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, k={self.field.k})"

    # -- basics ------------------------------------------------------------
    def vec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=self.field.dtype)
        if x.shape[-1] != self.dim:
            raise LieError(f"vector length {x.shape[-1]} does not match dim {self.dim}")
        return x

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = 1
        return v

    def bracket(self, x, y) -> np.ndarray:
        x, y = self.vec(x), self.vec(y)
        return matmul(self.field, x, self._right(y))

    def _right(self, y: np.ndarray) -> np.ndarray:
        # rows i: [b_i, y]
        return lincomb(self.field, y, self.table.transpose(1, 0, 2))

    def brackets(self, X, Y) -> np.ndarray:
        """All brackets [X[a], Y[b]] as an array of shape (len X, len Y, n)."""
        F, n = self.field, self.dim
        X = np.asarray(X, dtype=F.dtype).reshape(-1, n)
        Y = np.asarray(Y, dtype=F.dtype).reshape(-1, n)
        # P[a, j, m] = [x_a, b_j]_m
        P = matmul(F, X, self.table.reshape(n, n * n)).reshape(X.shape[0], n, n)
        out = F.zeros((X.shape[0], Y.shape[0], n))
        for a in range(X.shape[0]):
            out[a] = matmul(F, Y, P[a])
        return out

    @property
    def ad_matrices(self) -> np.ndarray:
        """Stack of ad(b_i); ``ad[i] @ v = [b_i, v]``."""
        if self._ad is None:
            self._ad = np.ascontiguousarray(self.table.transpose(0, 2, 1))
            self._ad.setflags(write=False)
        return self._ad

    def ad(self, x) -> np.ndarray:
        return lincomb(self.field, self.vec(x), self.ad_matrices)

    def is_abelian(self) -> bool:
        return not self.table.any()

    def sparse_rows(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """CSR form over pair index ``i * n + j``."""
        n = self.dim
        flat = self.table.reshape(n * n, n)
        rows, cols = np.nonzero(flat)
        indptr = np.zeros(n * n + 1, dtype=np.int64)
        np.add.at(indptr, rows + 1, 1)
        indptr = np.cumsum(indptr)
        return indptr, cols.astype(np.int64), flat[rows, cols].astype(np.int64)

    # -- subalgebras -------------------------------------------------------
    def subalgebra(self, S: Subspace, labels=None) -> "LieAlgebra":
        """The subalgebra on the rref basis of S (must be bracket-closed)."""
        B = S.basis
        prods = self.brackets(B, B).reshape(-1, self.dim)
        if S.reduce(prods).any():
            raise LieError("subspace is not closed under the bracket")
        coords = prods[:, list(S.pivots)].reshape(S.dim, S.dim, S.dim)
        return LieAlgebra(self.field, coords, labels)


@dataclass
class AxiomReport:
    ok: bool
    violation: tuple | None = None
    detail: str = "ok"

    def __bool__(self):
        return self.ok


def verify_axioms(L: LieAlgebra, backend: str | None = None) -> AxiomReport:
    """Alternation plus Jacobi on every basis triple i < j < k."""
    n = L.dim
    if np.any(L.table[np.arange(n), np.arange(n)]) or not np.array_equal(L.table, L.table.transpose(1, 0, 2)):
        return AxiomReport(False, None, "bracket is not alternating")
    F = L.field
    if F.q <= 256:
        mul = np.zeros((F.q, F.q), dtype=np.uint16)
        els = np.arange(F.q)
        mul[:] = F.mul_arr(els[:, None], els[None, :])
        indptr, idx, val = L.sparse_rows()
        hit = kernels.jacobi_scan(indptr, idx, val, n, mul, backend=backend)
    else:
        hit = _jacobi_dense(L)
    if hit is None:
        return AxiomReport(True)
    i, j, k = hit
    e = [L.basis_vector(t) for t in (i, j, k)]
    val = (
        L.bracket(e[0], L.bracket(e[1], e[2]))
        ^ L.bracket(e[1], L.bracket(e[2], e[0]))
        ^ L.bracket(e[2], L.bracket(e[0], e[1]))
    )
    return AxiomReport(False, (i, j, k), f"Jacobi fails on basis triple {(i, j, k)}: {val.tolist()}")


def _jacobi_dense(L: LieAlgebra):
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                e = [L.basis_vector(t) for t in (i, j, k)]
                v = (
                    L.bracket(e[0], L.bracket(e[1], e[2]))
                    ^ L.bracket(e[1], L.bracket(e[2], e[0]))
                    ^ L.bracket(e[2], L.bracket(e[0], e[1]))
                )
                if v.any():
                    return (i, j, k)
    return None


# ---------------------------------------------------------------------------
# ideals, series, centers
# ---------------------------------------------------------------------------
def ideal_closure(L: LieAlgebra, seed: Subspace | np.ndarray) -> Subspace:
    """Least ideal containing the seed: spin it under every ad(b_i)."""
    if isinstance(seed, Subspace):
        vecs = seed.basis
    else:
        vecs = np.asarray(seed, dtype=L.field.dtype).reshape(-1, L.dim)
    return spin(L.field, L.ad_matrices, vecs, L.dim)


def bracket_space(L: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """span{[u, v] : u in U, v in V}."""
    if U.dim == 0 or V.dim == 0:
        return Subspace.zero(L.field, L.dim)
    return Subspace.span(L.field, L.brackets(U.basis, V.basis).reshape(-1, L.dim), L.dim)


def is_ideal(L: LieAlgebra, I: Subspace) -> bool:
    if I.dim == 0:
        return True
    prods = L.brackets(np.eye(L.dim, dtype=L.field.dtype), I.basis).reshape(-1, L.dim)
    return not I.reduce(prods).any()


def derived_series(L: LieAlgebra) -> list[Subspace]:
    """L = L^(0) > L^(1) > ... until the chain stabilises (inclusive)."""
    cur = Subspace.full(L.field, L.dim)
    series = [cur]
    for _ in range(L.dim + 1):
        nxt = bracket_space(L, cur, cur)
        series.append(nxt)
        if nxt == cur or nxt.dim == 0:
            break
        cur = nxt
    return series


def derived_dims(L: LieAlgebra) -> list[int]:
    dims = [S.dim for S in derived_series(L)]
    if len(dims) >= 2 and dims[-1] == dims[-2] and dims[-1] != 0:
        dims.pop()
    return dims


def lower_central_series(L: LieAlgebra, S: Subspace) -> list[Subspace]:
    cur = S
    series = [cur]
    for _ in range(L.dim + 1):
        nxt = bracket_space(L, S, cur)
        series.append(nxt)
        if nxt == cur or nxt.dim == 0:
            break
        cur = nxt
    return series


def is_nilpotent_subalgebra(L: LieAlgebra, S: Subspace) -> bool:
    return lower_central_series(L, S)[-1].dim == 0


def center(L: LieAlgebra) -> Subspace:
    return common_kernel(L.field, _chunks(L.ad_matrices), L.dim)


def _chunks(mats: np.ndarray, size: int = 8):
    for lo in range(0, mats.shape[0], size):
        blk = mats[lo : lo + size]
        yield blk.reshape(-1, blk.shape[-1])


def centralizer(L: LieAlgebra, S: Subspace) -> Subspace:
    """{x : [x, s] = 0 for every s in S}."""
    if S.dim == 0:
        return Subspace.full(L.field, L.dim)
    mats = np.stack([L.ad(s) for s in S.basis])
    return common_kernel(L.field, _chunks(mats), L.dim)


def normalizer(L: LieAlgebra, S: Subspace) -> Subspace:
    """{x : [x, S] within S}."""
    F, n = L.field, L.dim
    if S.dim == 0 or S.dim == n:
        return Subspace.full(F, n)
    comp = S.complement_indices()
    # x -> [x, s] reduced mod S, read on complement coordinates
    blocks = []
    for s in S.basis:
        ad_s = L.ad(s)  # columns: [s, b_j] = [b_j, s]
        red = S.reduce(ad_s.T).T
        blocks.append(red[comp])
    return common_kernel(F, blocks, n)


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------
class Projection:
    """Linear map L -> L/I onto the complement coordinates of I's rref."""

    def __init__(self, I: Subspace):
        self.ideal = I
        self.complement = I.complement_indices()

    def __call__(self, v) -> np.ndarray:
        return self.ideal.reduce(v)[..., self.complement]

    def lift(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=self.ideal.field.dtype)
        out = np.zeros(w.shape[:-1] + (self.ideal.ambient,), dtype=w.dtype)
        out[..., self.complement] = w
        return out

    def matrix(self) -> np.ndarray:
        F = self.ideal.field
        return self(np.eye(self.ideal.ambient, dtype=F.dtype))


def quotient_by_ideal(L: LieAlgebra, I: Subspace, label_suffix: str = "") -> tuple[LieAlgebra, Projection]:
    if I.ambient != L.dim:
        raise LieError("ideal lives in a different ambient space")
    if not is_ideal(L, I):
        raise LieError("subspace is not an ideal")
    proj = Projection(I)
    comp = proj.complement
    sub = L.table[np.ix_(comp, comp)]  # (d, d, n)
    table = proj(sub)
    labels = [L.labels[c] + label_suffix for c in comp]
    return LieAlgebra(L.field, table, labels), proj

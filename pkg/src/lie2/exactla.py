"""Dense exact linear algebra over GF(2^k).

Matrices are numpy arrays of field integers paired with a FieldSpec.
Vectors are rows; an operator A acts on a column vector x as ``A @ x``.
Over GF(2) row reduction and spinning go through the bit-packed kernels.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .field import FieldSpec, FieldError

_CHUNK = 1 << 22


# ---------------------------------------------------------------------------
# elementwise helpers
# ---------------------------------------------------------------------------
def matmul(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Field matrix product (works for 1-d operands like numpy)."""
    A = np.asarray(A)
    B = np.asarray(B)
    if F.k == 1:
        prod = A.astype(np.float64) @ B.astype(np.float64)
        return (prod.astype(np.int64) & 1).astype(F.dtype)
    vec_a, vec_b = A.ndim == 1, B.ndim == 1
    A2 = A.reshape(1, -1) if vec_a else A
    B2 = B.reshape(-1, 1) if vec_b else B
    r, inner = A2.shape
    c = B2.shape[1]
    if F.k <= 8:
        out = _matmul_bitsliced(F, A2, B2)
    else:
        out = _matmul_tables(F, A2, B2)
    if vec_a and vec_b:
        return out.reshape(())
    if vec_a:
        return out.reshape(c)
    if vec_b:
        return out.reshape(r)
    return out


def _matmul_bitsliced(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    # A = sum_s x^s A_s with 0/1 planes A_s; the product is sum_{s,t} x^(s+t) A_s B_t
    k = F.k
    pa = [((A >> s) & 1).astype(np.float64) for s in range(k)]
    pb = [((B >> t) & 1).astype(np.float64) for t in range(k)]
    acc = [None] * (2 * k - 1)
    for s in range(k):
        if not pa[s].any():
            continue
        for t in range(k):
            if not pb[t].any():
                continue
            prod = (pa[s] @ pb[t]).astype(np.int64) & 1
            acc[s + t] = prod if acc[s + t] is None else acc[s + t] ^ prod
    out = np.zeros((A.shape[0], B.shape[1]), dtype=F.dtype)
    for e, P in enumerate(acc):
        if P is not None:
            out ^= P.astype(F.dtype) * F.dtype(F.pow(F.gen, e))
    return out


def _matmul_tables(F: FieldSpec, A2: np.ndarray, B2: np.ndarray) -> np.ndarray:
    r, inner = A2.shape
    c = B2.shape[1]
    out = np.zeros((r, c), dtype=F.dtype)
    if r and c and inner:
        step = max(1, _CHUNK // max(1, r * c))
        for lo in range(0, inner, step):
            hi = min(inner, lo + step)
            blk = F.mul_arr(A2[:, lo:hi, None], B2[None, lo:hi, :])
            out ^= np.bitwise_xor.reduce(blk, axis=1)
    return out


def lincomb(F: FieldSpec, coeffs: np.ndarray, stack: np.ndarray) -> np.ndarray:
    """Sum of ``coeffs[i] * stack[i]`` over the leading axis."""
    coeffs = np.asarray(coeffs)
    stack = np.asarray(stack)
    flat = stack.reshape(stack.shape[0], -1)
    return matmul(F, coeffs, flat).reshape(stack.shape[1:])


def scale(F: FieldSpec, c: int, A: np.ndarray) -> np.ndarray:
    return F.mul_arr(np.asarray(A), c)


def identity(F: FieldSpec, n: int) -> np.ndarray:
    return np.eye(n, dtype=F.dtype)


def unit(F: FieldSpec, n: int, i: int) -> np.ndarray:
    v = F.zeros(n)
    v[i] = 1
    return v


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------
def _rref_gf2(A: np.ndarray, backend=None) -> tuple[np.ndarray, list[int]]:
    r, c = A.shape
    if r == 0 or c == 0:
        return A.copy(), []
    P = kernels.pack(A)
    piv = kernels.rref_packed(P, c, backend=backend)
    return kernels.unpack(P, c).astype(A.dtype), piv


def _rref_generic(F: FieldSpec, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    A = A.copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        piv = int(A[r, c])
        if piv != 1:
            A[r] = F.mul_arr(A[r], F.inv(piv))
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] ^= F.mul_arr(col[hit, None], A[r][None, :])
        pivots.append(c)
        r += 1
    return A, pivots


def rref_pivots(F: FieldSpec, A, backend=None) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns (pivot rows first)."""
    A = np.asarray(A, dtype=F.dtype)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    if F.k == 1:
        return _rref_gf2(A, backend)
    return _rref_generic(F, A)


def rref(F: FieldSpec, A, backend=None) -> tuple[np.ndarray, int]:
    R, piv = rref_pivots(F, A, backend)
    return R, len(piv)


def rank(F: FieldSpec, A) -> int:
    return rref(F, A)[1]


def nullspace(F: FieldSpec, A) -> "Subspace":
    """Subspace of column vectors v with ``A @ v = 0``."""
    A = np.asarray(A, dtype=F.dtype)
    cols = A.shape[1]
    R, piv = rref_pivots(F, A)
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    basis = F.zeros((len(free), cols))
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, p in enumerate(piv):
            basis[t, p] = R[i, f]
    return Subspace.span(F, basis, cols)


def solve(F: FieldSpec, A, B) -> tuple[np.ndarray, list[int]]:
    """Particular solutions X of ``A @ X = B`` (free variables set to 0).

    Returns the solution matrix and the list of column indices of B for
    which the system is inconsistent (their X column is zero).
    """
    A = np.asarray(A, dtype=F.dtype)
    B = np.asarray(B, dtype=F.dtype)
    n = A.shape[1]
    R, piv = rref_pivots(F, np.hstack([A, B]))
    X = F.zeros((n, B.shape[1]))
    bad = sorted(p - n for p in piv if p >= n)
    rows_x = [i for i, p in enumerate(piv) if p < n]
    for i in rows_x:
        X[piv[i]] = R[i, n:]
    for b in bad:
        X[:, b] = 0
    return X, bad


def inverse(F: FieldSpec, A) -> np.ndarray:
    A = np.asarray(A, dtype=F.dtype)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    R, piv = rref_pivots(F, np.hstack([A, identity(F, n)]))
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return np.ascontiguousarray(R[:, n:])


def common_kernel(F: FieldSpec, mats: Iterable[np.ndarray], n: int) -> "Subspace":
    """Common kernel of operators given as (rows x n) matrices.

    Intersects kernels one block at a time, so the working systems shrink
    as soon as the kernel does.
    """
    K = identity(F, n)
    for M in mats:
        if K.shape[0] == 0:
            break
        M = np.asarray(M, dtype=F.dtype)
        if not M.size:
            continue
        img = matmul(F, M, K.T)
        if not img.any():
            continue
        ns = nullspace(F, img)
        K = matmul(F, ns.basis, K) if ns.dim else F.zeros((0, n))
    return Subspace.span(F, K, n)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------
class Subspace:
    """A subspace of F^n stored by its canonical reduced row-echelon basis."""

    __slots__ = ("field", "ambient", "basis", "pivots", "_key")

    def __init__(self, F: FieldSpec, basis: np.ndarray, ambient: int, pivots: Sequence[int]):
        self.field = F
        self.ambient = ambient
        self.basis = basis
        self.pivots = tuple(pivots)
        self.basis.setflags(write=False)
        self._key = None

    @classmethod
    def span(cls, F: FieldSpec, vectors, ambient: int | None = None) -> "Subspace":
        V = np.asarray(vectors, dtype=F.dtype)
        if ambient is None:
            ambient = V.shape[-1]
        V = V.reshape(-1, ambient)
        R, piv = rref_pivots(F, V)
        return cls(F, np.ascontiguousarray(R[: len(piv)]), ambient, piv)

    @classmethod
    def zero(cls, F: FieldSpec, n: int) -> "Subspace":
        return cls(F, F.zeros((0, n)), n, ())

    @classmethod
    def full(cls, F: FieldSpec, n: int) -> "Subspace":
        return cls(F, identity(F, n), n, range(n))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return self.dim

    def _check(self, other: "Subspace") -> None:
        if self.ambient != other.ambient or self.field != other.field:
            raise ValueError("subspaces live in different ambient spaces")

    def key(self) -> bytes:
        if self._key is None:
            self._key = bytes([self.field.k]) + self.ambient.to_bytes(4, "little") + self.basis.tobytes()
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, k={self.field.k})"

    def reduce(self, v) -> np.ndarray:
        """Remainder of v (rows) modulo the subspace; zero iff v lies in it."""
        v = np.asarray(v, dtype=self.field.dtype)
        if self.dim == 0:
            return v.copy()
        coeffs = v[..., list(self.pivots)]
        flat = coeffs.reshape(-1, coeffs.shape[-1])
        return v ^ matmul(self.field, flat, self.basis).reshape(v.shape)

    def contains(self, v) -> bool:
        r = self.reduce(v)
        return not r.any()

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of v (rows) in the rref basis; raises if v is outside."""
        v = np.asarray(v, dtype=self.field.dtype)
        if self.reduce(v).any():
            raise ValueError("vector not in subspace")
        return v[..., list(self.pivots)].copy()

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        return other.dim == 0 or not self.reduce(other.basis).any()

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, np.vstack([self.basis, other.basis]), self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        F = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(F, self.ambient)
        # a @ U = b @ V  <=>  [U; V]^T [a; b] = 0
        stacked = np.vstack([self.basis, other.basis]).T
        ns = nullspace(F, stacked)
        if ns.dim == 0:
            return Subspace.zero(F, self.ambient)
        return Subspace.span(F, matmul(F, ns.basis[:, : self.dim], self.basis), self.ambient)

    def complement_indices(self) -> list[int]:
        pv = set(self.pivots)
        return [i for i in range(self.ambient) if i not in pv]


def subspace_combine(op: str, u: Subspace, v: Subspace):
    if op == "sum":
        return u.sum(v)
    if op == "intersect":
        return u.intersect(v)
    if op == "contains":
        return u.contains_space(v)
    raise ValueError(f"unknown subspace operation {op!r}")


def coordinates_in(F: FieldSpec, basis: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Coordinates C with ``C @ basis = vectors`` for an independent basis."""
    basis = np.asarray(basis, dtype=F.dtype)
    vectors = np.asarray(vectors, dtype=F.dtype).reshape(-1, basis.shape[1])
    X, bad = solve(F, basis.T, vectors.T)
    if bad:
        raise ValueError(f"vectors {bad} are not in the span")
    return X.T.copy()


# ---------------------------------------------------------------------------
# spinning (invariant subspace generation)
# ---------------------------------------------------------------------------
def spin(F: FieldSpec, ops: np.ndarray, seeds, n: int | None = None) -> Subspace:
    """Smallest subspace containing ``seeds`` and stable under every ``ops[g]``.

    ``ops`` has shape (G, n, n) with columns as images: ``ops[g] @ x``.
    """
    ops = np.asarray(ops, dtype=F.dtype)
    if n is None:
        n = ops.shape[1]
    seeds = np.asarray(seeds, dtype=F.dtype).reshape(-1, n)
    if F.k == 1:
        cols = packed_columns(ops)
        basis = kernels.spin_packed(cols, kernels.pack(seeds), n)
        return Subspace.span(F, kernels.unpack(basis, n).astype(F.dtype), n)
    return _spin_generic(F, ops, seeds, n)


def packed_columns(ops: np.ndarray) -> np.ndarray:
    """Pack each operator's columns: result[g, j] = packed ops[g][:, j]."""
    return kernels.pack(np.ascontiguousarray(np.swapaxes(ops, 1, 2)))


def _spin_generic(F: FieldSpec, ops: np.ndarray, seeds: np.ndarray, n: int) -> Subspace:
    cur = Subspace.span(F, seeds, n)
    frontier = cur.basis
    opsT = np.ascontiguousarray(np.swapaxes(ops, 1, 2))  # row form: x @ A^T
    G = ops.shape[0]
    while frontier.shape[0] and cur.dim < n:
        imgs = matmul(F, frontier, opsT.transpose(1, 0, 2).reshape(n, G * n))
        imgs = imgs.reshape(frontier.shape[0] * G, n)
        rem = cur.reduce(imgs)
        rem = rem[rem.any(axis=1)]
        if not rem.shape[0]:
            break
        new = Subspace.span(F, rem, n)
        cur = cur.sum(new)
        frontier = new.basis
    return cur

"""Matrix Lie algebras: gl, sl, psl, sp and its derived algebras, o, o1.

Each family has a fixed basis order:

* gl: e_ij in lexicographic order.
* sl: h_k = e_kk + e_{k+1,k+1}, then e_ij (i != j) lexicographic.
* sp: d_i, a_ij (i != j), b_ij (i < j), b_i, c_ij (i < j), c_i.
* sp1: d_i, a_ij, b_ij, c_ij.   sp2: d_i + d_{i+1}, a_ij, b_ij, c_ij.
* o: e_ii, then ebar_ij = e_ij + e_ji (i < j).   o1: ebar_ij only.

psl and psp2 are quotients by the scalar matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import LieAlgebra, Projection, centralizer, quotient_by_ideal
from .exactla import Subspace, coordinates_in, inverse, matmul, nullspace
from .field import FieldSpec, field_make
from .restricted import NotRestricted, TwoMap, cartan_subalgebra, induced_two_map, two_map_derive

FAMILIES = ("gl", "sl", "psl", "sp", "sp1", "sp2", "psp2", "o", "o1")
SP_FAMILIES = ("sp", "sp1", "sp2", "psp2")


class ClassicalError(ValueError):
    pass


@dataclass(frozen=True)
class ClassicalSpec:
    family: str
    size: int
    k: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ClassicalError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.family in SP_FAMILIES:
            if self.size < 1:
                raise ClassicalError("sp families need m >= 1")
            if self.family == "sp2" and self.size < 2:
                raise ClassicalError("sp2 needs m >= 2")
            if self.family == "psp2" and self.size % 2:
                raise ClassicalError("psp2 needs 4 | 2m (m even)")
        else:
            if self.size < 1:
                raise ClassicalError("matrix size must be positive")
            if self.family in ("sl", "o1") and self.size < 2:
                raise ClassicalError(f"{self.family} needs matrix size >= 2")
            if self.family == "psl" and (self.size % 2 or self.size < 2):
                raise ClassicalError("psl needs an even matrix size")

    @property
    def field(self) -> FieldSpec:
        return field_make(self.k)

    @property
    def name(self) -> str:
        key = "m" if self.family in SP_FAMILIES else "n"
        return f"{self.family}({key}={self.size})"


@dataclass
class MatrixAlgebra:
    """A Lie algebra realised by explicit matrices, with the squaring 2-map."""

    algebra: LieAlgebra
    matrices: np.ndarray
    two_map: TwoMap | None

    def coordinates(self, mats) -> np.ndarray:
        F = self.algebra.field
        mats = np.asarray(mats, dtype=F.dtype)
        N = self.matrices.shape[1]
        flat = mats.reshape(-1, N * N)
        return coordinates_in(F, self.matrices.reshape(-1, N * N), flat)

    def matrix_of(self, v) -> np.ndarray:
        return lincomb_matrix(self.algebra.field, v, self.matrices)


def lincomb_matrix(F: FieldSpec, v, mats: np.ndarray) -> np.ndarray:
    N = mats.shape[1]
    return matmul(F, np.asarray(v, dtype=F.dtype), mats.reshape(mats.shape[0], N * N)).reshape(N, N)


@dataclass
class ClassicalResult:
    algebra: LieAlgebra
    two_map: TwoMap | NotRestricted
    cartan: Subspace
    spec: ClassicalSpec | None = None
    matrix: MatrixAlgebra | None = None
    projection: Projection | None = None

    def __iter__(self):
        return iter((self.algebra, self.two_map, self.cartan))


def _lab(i: int, j: int) -> str:
    return f"{i}{j}" if max(i, j) < 10 else f"{i},{j}"


def _unit(F: FieldSpec, N: int, *pairs) -> np.ndarray:
    M = F.zeros((N, N))
    for i, j in pairs:
        M[i, j] ^= 1
    return M


def matrix_algebra(F: FieldSpec, mats, labels, squaring: bool = True) -> MatrixAlgebra:
    """Structure constants of span(mats) under the commutator."""
    mats = np.asarray(mats, dtype=F.dtype)
    d, N, _ = mats.shape
    flat = mats.reshape(d, N * N)
    if Subspace.span(F, flat, N * N).dim != d:
        raise ClassicalError("basis matrices are linearly dependent")
    prods = _pair_products(F, mats)  # prods[i, j] = M_i M_j
    comm = prods ^ prods.transpose(1, 0, 2, 3)
    coords = coordinates_in(F, flat, comm.reshape(d * d, N * N)).reshape(d, d, d)
    L = LieAlgebra(F, coords, labels)
    tm = None
    if squaring:
        sq = prods[np.arange(d), np.arange(d)].reshape(d, N * N)
        if not Subspace.span(F, flat, N * N).reduce(sq).any():
            tm = TwoMap(coordinates_in(F, flat, sq))
    return MatrixAlgebra(L, mats, tm)


def _pair_products(F: FieldSpec, mats: np.ndarray) -> np.ndarray:
    d, N, _ = mats.shape
    if F.k == 1:
        a = mats.astype(np.float64)
        out = np.einsum("iab,jbc->ijac", a, a)
        return (out.astype(np.int64) & 1).astype(F.dtype)
    out = F.zeros((d, d, N, N))
    for i in range(d):
        for j in range(d):
            out[i, j] = matmul(F, mats[i], mats[j])
    return out


# ---------------------------------------------------------------------------
# basis builders
# ---------------------------------------------------------------------------
def _gl_basis(F, N):
    mats, labels = [], []
    for i in range(N):
        for j in range(N):
            mats.append(_unit(F, N, (i, j)))
            labels.append("e" + _lab(i + 1, j + 1))
    return mats, labels, [i * N + i for i in range(N)]


def _sl_basis(F, N):
    mats, labels = [], []
    for k in range(N - 1):
        mats.append(_unit(F, N, (k, k), (k + 1, k + 1)))
        labels.append(f"h{k + 1}")
    for i in range(N):
        for j in range(N):
            if i != j:
                mats.append(_unit(F, N, (i, j)))
                labels.append("e" + _lab(i + 1, j + 1))
    return mats, labels, list(range(N - 1))


def _sp_basis(F, m, variant):
    N = 2 * m
    mats, labels, diag = [], [], []
    if variant == "sp2":
        for i in range(m - 1):
            mats.append(_unit(F, N, (i, i), (m + i, m + i), (i + 1, i + 1), (m + i + 1, m + i + 1)))
            labels.append(f"d{i + 1}+d{i + 2}")
            diag.append(len(mats) - 1)
    else:
        for i in range(m):
            mats.append(_unit(F, N, (i, i), (m + i, m + i)))
            labels.append(f"d{i + 1}")
            diag.append(len(mats) - 1)
    for i in range(m):
        for j in range(m):
            if i != j:
                mats.append(_unit(F, N, (i, j), (m + j, m + i)))
                labels.append("a" + _lab(i + 1, j + 1))
    for i in range(m):
        for j in range(i + 1, m):
            mats.append(_unit(F, N, (i, j + m), (j, i + m)))
            labels.append("b" + _lab(i + 1, j + 1))
    if variant == "sp":
        for i in range(m):
            mats.append(_unit(F, N, (i, i + m)))
            labels.append(f"b{i + 1}")
    for i in range(m):
        for j in range(i + 1, m):
            mats.append(_unit(F, N, (i + m, j), (j + m, i)))
            labels.append("c" + _lab(i + 1, j + 1))
    if variant == "sp":
        for i in range(m):
            mats.append(_unit(F, N, (i + m, i)))
            labels.append(f"c{i + 1}")
    return mats, labels, diag


def _o_basis(F, N, with_diag):
    mats, labels, diag = [], [], []
    if with_diag:
        for i in range(N):
            mats.append(_unit(F, N, (i, i)))
            labels.append("e" + _lab(i + 1, i + 1))
            diag.append(i)
    for i in range(N):
        for j in range(i + 1, N):
            mats.append(_unit(F, N, (i, j), (j, i)))
            labels.append("ebar" + _lab(i + 1, j + 1))
    return mats, labels, diag


def symplectic_gram(F: FieldSpec, m: int) -> np.ndarray:
    """J_{2m} = [[0, I], [I, 0]] (signs vanish in characteristic 2)."""
    J = F.zeros((2 * m, 2 * m))
    J[:m, m:] = np.eye(m, dtype=F.dtype)
    J[m:, :m] = np.eye(m, dtype=F.dtype)
    return J


# ---------------------------------------------------------------------------
# public constructors
# ---------------------------------------------------------------------------
def build_classical(spec: ClassicalSpec | str, size: int | None = None, k: int = 1) -> ClassicalResult:
    """Build a family member with its 2-map and distinguished Cartan subalgebra.

    The Cartan subalgebra is the centralizer of the span of the diagonal
    basis elements. For gl, sl, o, sp1 and sp2 with m >= 3 this is the
    diagonal span itself; for sp it also contains every b_i and c_i.
    """
    if not isinstance(spec, ClassicalSpec):
        spec = ClassicalSpec(spec, int(size), k)
    F = spec.field
    fam, s = spec.family, spec.size
    if fam == "gl":
        mats, labels, diag = _gl_basis(F, s)
    elif fam in ("sl", "psl"):
        mats, labels, diag = _sl_basis(F, s)
    elif fam in SP_FAMILIES:
        mats, labels, diag = _sp_basis(F, s, {"psp2": "sp2"}.get(fam, fam))
    else:
        mats, labels, diag = _o_basis(F, s, fam == "o")

    MA = matrix_algebra(F, mats, labels)
    L = MA.algebra
    if fam == "o1":
        tm = two_map_derive(L)
        cartan = cartan_subalgebra(L, seed=0)
        return ClassicalResult(L, tm, cartan, spec, MA)
    if MA.two_map is None:
        raise ClassicalError(f"{spec.name} is not closed under squaring")
    tm = MA.two_map
    toral = Subspace.span(F, np.eye(L.dim, dtype=F.dtype)[diag], L.dim)
    cartan = centralizer(L, toral) if diag else cartan_subalgebra(L, seed=0)
    if fam not in ("psl", "psp2"):
        return ClassicalResult(L, tm, cartan, spec, MA)
    N = MA.matrices.shape[1]
    ident = MA.coordinates(np.eye(N, dtype=F.dtype))
    Q, proj = quotient_by_ideal(L, Subspace.span(F, ident, L.dim))
    qcartan = Subspace.span(F, proj(cartan.basis), Q.dim)
    return ClassicalResult(Q, induced_two_map(tm, proj), qcartan, spec, None, proj)


def form_algebra(gram, k: int | FieldSpec = 1) -> MatrixAlgebra:
    """g(A) = {X : X^T A = A X}, basis from the canonical nullspace."""
    F = k if isinstance(k, FieldSpec) else field_make(k)
    A = np.asarray(gram, dtype=F.dtype)
    N = A.shape[0]
    if A.shape != (N, N):
        raise ClassicalError("Gram matrix must be square")
    cols = []
    for i in range(N):
        for j in range(N):
            E = _unit(F, N, (i, j))
            cols.append((matmul(F, E.T, A) ^ matmul(F, A, E)).reshape(-1))
    ns = nullspace(F, np.array(cols).T)
    mats = ns.basis.reshape(-1, N, N)
    labels = [f"x{t}" for t in range(mats.shape[0])]
    return matrix_algebra(F, mats, labels)


@dataclass
class Congruence:
    source: MatrixAlgebra
    target: MatrixAlgebra
    matrix: np.ndarray  # column i = coordinates of the image of source basis i


def congruence_iso(gramA, gramB, S, k: int | FieldSpec = 1) -> Congruence:
    """X -> S^-1 X S from g(A) to g(B), given S^T A S = B; checked on all basis pairs."""
    F = k if isinstance(k, FieldSpec) else field_make(k)
    A, B, S = (np.asarray(x, dtype=F.dtype) for x in (gramA, gramB, S))
    if not np.array_equal(matmul(F, matmul(F, S.T, A), S), B):
        raise ClassicalError("S^T A S != B")
    Si = inverse(F, S)
    GA, GB = form_algebra(A, F), form_algebra(B, F)
    if GA.matrices.shape[0] != GB.matrices.shape[0]:
        raise ClassicalError("form algebras have different dimensions")
    imgs = np.stack([matmul(F, matmul(F, Si, X), S) for X in GA.matrices])
    Phi = GB.coordinates(imgs)  # rows = images
    LA, LB = GA.algebra, GB.algebra
    d = LA.dim
    lhs = matmul(F, LA.table.reshape(d * d, d), Phi).reshape(d, d, d)
    rhs = LB.brackets(Phi, Phi)
    if not np.array_equal(lhs, rhs):
        raise ClassicalError("map does not intertwine brackets")
    if GA.two_map is not None and GB.two_map is not None:
        from .restricted import two_map_eval

        if not np.array_equal(matmul(F, GA.two_map.images, Phi), two_map_eval(LB, GB.two_map, Phi)):
            raise ClassicalError("map does not intertwine 2-maps")
    return Congruence(GA, GB, np.ascontiguousarray(Phi.T))

"""Contragredient algebras G(A) built degree by degree.

Degree k >= 2 is spanned by words [e_i, x] with x a basis word of degree
k-1. A word combination lies in the maximal homogeneous ideal exactly when
every ad f_j sends it to zero, so G_k is the formal span modulo the joint
kernel of the ad f_j. The negative side is built by the mirrored recursion
with the roles of e and f exchanged.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .core import LieAlgebra, verify_axioms
from .exactla import Subspace, common_kernel, identity, matmul, rref_pivots
from .field import FieldSpec, field_make
from .restricted import (
    Torus,
    TwoMap,
    make_torus,
    two_map_derive,
    two_map_eval,
    toral_span,
)

DEGREE_BOUND = 64


class ContragredientError(ValueError):
    pass


@dataclass
class GradedBuilder:
    field: FieldSpec
    cartan: np.ndarray
    # words[d][t] = (i, parent): the t-th basis word of degree d is [e_i, parent]
    # (or [f_i, parent] for d < 0); parent is None in degree +-1
    words: dict = dc_field(default_factory=dict)
    weights: dict = dc_field(default_factory=dict)
    up: dict = dc_field(default_factory=dict)  # up[d][i]: ad e_i, G_d -> G_{d+1}
    down: dict = dc_field(default_factory=dict)  # down[d][j]: ad f_j, G_d -> G_{d-1}
    top: int = 1
    bottom: int = -1
    finished: bool = False

    @property
    def rank(self) -> int:
        return self.cartan.shape[0]

    def dim(self, d: int) -> int:
        return len(self.words.get(d, ()))

    def positive_dims(self) -> list[int]:
        return [self.dim(d) for d in range(1, self.top + 1)]

    def negative_dims(self) -> list[int]:
        return [self.dim(-d) for d in range(1, -self.bottom + 1)]

    def word_text(self, d: int, t: int) -> str:
        letter = "e" if d > 0 else "f"
        i, parent = self.words[d][t]
        if parent is None:
            return f"{letter}{i + 1}"
        step = -1 if d > 0 else 1
        return f"[{letter}{i + 1},{self.word_text(d + step, parent)}]"


def build_local(A, k: int | FieldSpec = 2) -> GradedBuilder:
    """Install h_i, e_i, f_i with [e_i,f_j] = d_ij h_j, [h_i,e_j] = a_ij e_j, [h_i,f_j] = a_ij f_j."""
    F = k if isinstance(k, FieldSpec) else field_make(k)
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ContragredientError("Cartan matrix must be square")
    A = np.array([[F.check(int(x) % F.q if x < 0 else int(x)) for x in row] for row in A], dtype=F.dtype)
    B = GradedBuilder(F, A)
    B.words[0] = [(i, None) for i in range(n)]
    B.words[1] = [(i, None) for i in range(n)]
    B.words[-1] = [(i, None) for i in range(n)]
    B.weights[0] = F.zeros((n, n))
    # weight of e_i (and f_i): value on h_j is a_ji
    B.weights[1] = np.ascontiguousarray(A.T)
    B.weights[-1] = np.ascontiguousarray(A.T)
    up0, down0, upm, down1 = [], [], [], []
    for i in range(n):
        M = F.zeros((n, n))
        M[i, :] = A[:, i]  # [e_i, h_j] = a_ji e_i
        up0.append(M)
        down0.append(M.copy())  # [f_i, h_j] = a_ji f_i
        E = F.zeros((n, n))
        E[i, i] = 1
        upm.append(E)  # [e_i, f_l] = d_il h_i
        down1.append(E.copy())  # [f_j, e_l] = d_jl h_j
    B.up[0], B.down[0], B.up[-1], B.down[1] = up0, down0, upm, down1
    return B


def _extend(B: GradedBuilder, k: int) -> int:
    """Build degree k (sign chooses the side) from degree k -/+ 1."""
    F, n = B.field, B.rank
    s = 1 if k > 0 else -1
    prev = k - s
    dprev = B.dim(prev)
    # on the positive side words are [e_i, x] and we test with ad f_j;
    # on the negative side the roles swap
    make, test = (B.up, B.down) if s > 0 else (B.down, B.up)
    words = [(i, t) for i in range(n) for t in range(dprev)]
    wt_prev = B.weights[prev]
    wt_gen = B.weights[s]
    # [g_j, [m_i, x]] = d_ij wt(x)(h_i) x + [m_i, [g_j, x]]
    blocks = []
    for j in range(n):
        if dprev == 0:
            blocks.append(F.zeros((0, 0)))
            continue
        inner = test[prev][j]  # G_prev -> G_{prev - s}
        Phi = F.zeros((dprev, n * dprev))
        for i in range(n):
            back = matmul(F, make[prev - s][i], inner)  # G_prev -> G_prev
            if i == j:
                back = back ^ np.diag(wt_prev[:, i]).astype(F.dtype)
            Phi[:, i * dprev : (i + 1) * dprev] = back
        blocks.append(Phi)
    if dprev == 0:
        B.words[k] = []
        B.weights[k] = F.zeros((0, n))
        make[prev] = [F.zeros((0, 0)) for _ in range(n)]
        test[k] = [F.zeros((0, 0)) for _ in range(n)]
        return 0
    joint = np.vstack(blocks)
    R, piv = rref_pivots(F, joint)
    Q = R[: len(piv)]
    B.words[k] = [words[c] for c in piv]
    B.weights[k] = np.array(
        [wt_gen[i] ^ wt_prev[t] for i, t in B.words[k]], dtype=F.dtype
    ).reshape(-1, n)
    make[prev] = [np.ascontiguousarray(Q[:, i * dprev : (i + 1) * dprev]) for i in range(n)]
    test[k] = [np.ascontiguousarray(blk[:, piv]) for blk in blocks]
    return len(piv)


def extend_degree(B: GradedBuilder, k: int) -> int:
    if abs(k) < 2:
        raise ContragredientError("degrees -1, 0, 1 come from build_local")
    side = B.top if k > 0 else -B.bottom
    if abs(k) != side + 1:
        raise ContragredientError(f"degree {k} requires degree {k - (1 if k > 0 else -1)} first")
    d = _extend(B, k)
    if k > 0:
        B.top = k
    else:
        B.bottom = k
    return d


def _run(B: GradedBuilder, bound: int):
    for sign in (1, -1):
        k = 2 * sign
        while True:
            if abs(k) > bound:
                raise ContragredientError(f"degree bound {bound} exceeded: algebra is not finite-dimensional here")
            if extend_degree(B, k) == 0:
                break
            k += sign
    B.finished = True


def _degree_order(B: GradedBuilder) -> list[int]:
    pos = [d for d in range(1, B.top + 1) if B.dim(d)]
    neg = [-d for d in range(1, -B.bottom + 1) if B.dim(-d)]
    return [0] + pos + neg


def assemble(A, k: int | FieldSpec = 2, bound: int = DEGREE_BOUND) -> tuple[LieAlgebra, GradedBuilder]:
    """Full structure constants; basis h's, then positive degrees, then negative."""
    B = build_local(A, k)
    _run(B, bound)
    if B.positive_dims() != B.negative_dims():
        raise ContragredientError(f"mirror mismatch: {B.positive_dims()} vs {B.negative_dims()}")
    F, n = B.field, B.rank
    order = _degree_order(B)
    offset, N = {}, 0
    for d in order:
        offset[d] = N
        N += B.dim(d)

    def block_op(maps: dict, i: int, shift: int) -> np.ndarray:
        M = F.zeros((N, N))
        for d in order:
            tgt = d + shift
            if tgt not in offset or d not in maps or not B.dim(tgt):
                continue
            blk = maps[d][i]
            M[offset[tgt] : offset[tgt] + B.dim(tgt), offset[d] : offset[d] + B.dim(d)] = blk
        return M

    ad = F.zeros((N, N, N))
    for i in range(n):
        diag = F.zeros(N)
        for d in order:
            if d:
                diag[offset[d] : offset[d] + B.dim(d)] = B.weights[d][:, i]
        ad[offset[0] + i] = np.diag(diag)
    gens_e = [block_op(B.up, i, 1) for i in range(n)]
    gens_f = [block_op(B.down, i, -1) for i in range(n)]
    for d in order[1:]:
        s = 1 if d > 0 else -1
        gen = gens_e if s > 0 else gens_f
        for t, (i, parent) in enumerate(B.words[d]):
            if parent is None:
                op = gen[i]
            else:
                x = ad[offset[d - s] + parent]
                op = matmul(F, gen[i], x) ^ matmul(F, x, gen[i])
            ad[offset[d] + t] = op
    table = np.ascontiguousarray(ad.transpose(0, 2, 1))
    labels = [f"h{i + 1}" for i in range(n)]
    for d in order[1:]:
        labels += [B.word_text(d, t) for t in range(B.dim(d))]
    try:
        L = LieAlgebra(F, table, labels)
    except ValueError as exc:
        raise ContragredientError(f"assembled table is inconsistent: {exc}") from None
    L.grading = [d for d in order for _ in range(B.dim(d))]
    B.offset = offset
    return L, B


def f4a_matrix(a: int) -> list[list[int]]:
    return [[0, 1, 0, 0], [a, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0]]


@dataclass
class KacVeisfeiler:
    algebra: LieAlgebra
    two_map: TwoMap
    cartan: Subspace
    builder: GradedBuilder
    a: int

    def __iter__(self):
        return iter((self.algebra, self.two_map, self.cartan))

    def standard_torus_basis(self) -> np.ndarray:
        """(h_1, a^-1 (h_2 + h_4), h_3, h_4)."""
        F, N = self.algebra.field, self.algebra.dim
        inv = F.inv(self.a)
        T = F.zeros((4, N))
        T[0, 0] = 1
        T[1, 1] = inv
        T[1, 3] = inv
        T[2, 2] = 1
        T[3, 3] = 1
        return T


def kac_veisfeiler(a, k: int = 2, check: bool = True) -> KacVeisfeiler:
    """G(F_{4,a}) with its derived 2-map and the Cartan subalgebra span{h_i}."""
    F = field_make(k)
    a = F.parse(a) if isinstance(a, str) else F.check(int(a))
    if a in (0, 1):
        raise ContragredientError("the parameter a must avoid 0 and 1")
    L, B = assemble(f4a_matrix(a), F)
    tm = two_map_derive(L)
    if not isinstance(tm, TwoMap):
        raise ContragredientError(f"G(F_4,a) came out non-restricted at basis {tm.witness}")
    cartan = Subspace.span(F, identity(F, L.dim)[:4], L.dim)
    kv = KacVeisfeiler(L, tm, cartan, B, a)
    if check:
        from .simplicity import is_simple_fast

        problems = []
        if L.dim != 34:
            problems.append(f"dim {L.dim}")
        if not verify_axioms(L).ok:
            problems.append("Jacobi")
        if not is_simple_fast(L, seed=0).simple:
            problems.append("not simple")
        if toral_span(L, tm, cartan).dim != 4:
            problems.append("toral rank")
        if problems:
            raise ContragredientError("G(F_4,a) postconditions failed: " + ", ".join(problems))
    return kv


# ---------------------------------------------------------------------------
# root decomposition
# ---------------------------------------------------------------------------
@dataclass
class RootDecomposition:
    torus_basis: np.ndarray
    spaces: dict  # weight tuple -> Subspace, nonzero weights only
    zero: Subspace

    @property
    def roots(self) -> list[tuple[int, ...]]:
        return sorted(self.spaces)

    def total_dim(self) -> int:
        return self.zero.dim + sum(S.dim for S in self.spaces.values())


def root_decomposition(L: LieAlgebra, tm: TwoMap, torus: Torus | np.ndarray) -> RootDecomposition:
    F, N = L.field, L.dim
    if not isinstance(torus, Torus):
        torus = make_torus(L, tm, torus)
    T = np.asarray(torus.toral_basis, dtype=F.dtype)
    if (two_map_eval(L, tm, T) != T).any():
        raise ContragredientError("torus basis is not toral")
    ops = [L.ad(t) for t in T]
    for i, A in enumerate(ops):
        if not np.array_equal(matmul(F, A, A), A):
            raise ContragredientError(f"ad of torus basis vector {i} is not idempotent")
    I = identity(F, N)
    spaces = {}
    zero = None
    for xi in itertools.product((0, 1), repeat=len(ops)):
        S = common_kernel(F, [A ^ (I if x else 0) for A, x in zip(ops, xi)], N)
        if not any(xi):
            zero = S
        elif S.dim:
            spaces[xi] = S
    dec = RootDecomposition(T, spaces, zero)
    if dec.total_dim() != N:
        raise ContragredientError(f"root spaces sum to {dec.total_dim()}, not {N}")
    return dec


def word_weight(B: GradedBuilder, d: int, t: int, torus_basis: np.ndarray) -> tuple[int, ...]:
    """Weight of a basis word against torus elements written in the h-coordinates."""
    F = B.field
    wt = B.weights[d][t]
    out = []
    for row in torus_basis:
        coeffs = row[: B.rank]
        out.append(int(np.bitwise_xor.reduce(F.mul_arr(coeffs, wt))))
    return tuple(out)

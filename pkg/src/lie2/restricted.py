"""Restricted (2-map) structure on Lie algebras in characteristic 2."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field as dc_field

import numpy as np

from .core import (
    LieAlgebra,
    bracket_space,
    center,
    centralizer,
    is_nilpotent_subalgebra,
    normalizer,
)
from .exactla import Subspace, matmul, nullspace, solve

DEFAULT_BUDGET = 1 << 16


class BudgetExceeded(RuntimeError):
    """An enumeration would visit more points than the allowed budget."""

    def __init__(self, what: str, needed: int, budget: int, flag: str = "LIE2_BUDGET"):
        super().__init__(f"{what}: needs {needed} points, budget is {budget} (raise {flag})")
        self.what = what
        self.needed = needed
        self.budget = budget
        self.flag = flag


def default_budget() -> int:
    env = os.environ.get("LIE2_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class TwoMap:
    """Images ``images[i] = b_i^[2]`` in basis coordinates."""

    images: np.ndarray
    unique: bool = True

    def __post_init__(self):
        self.images = np.asarray(self.images)

    def __eq__(self, other):
        return isinstance(other, TwoMap) and np.array_equal(self.images, other.images)


@dataclass
class NotRestricted:
    """No 2-map exists: ad(b_witness)^2 is not an inner derivation."""

    witness: int
    reason: str = "square escapes span"

    def __bool__(self):
        return False

    def __str__(self):
        return f"NotRestricted (witness: basis {self.witness}, {self.reason})"


@dataclass
class TwoMapReport:
    ok: bool
    axiom: int | None = None
    witness: object = None
    detail: str = "ok"

    def __bool__(self):
        return self.ok


@dataclass
class Torus:
    subspace: Subspace
    toral_basis: np.ndarray
    toral_elements: np.ndarray = dc_field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.subspace.dim


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------
def two_map_eval(L: LieAlgebra, tm: TwoMap, x) -> np.ndarray:
    """x^[2] via sum(l_i^2 b_i^[2]) + sum_{i<j} l_i l_j [b_i, b_j]; accepts batches."""
    F, n = L.field, L.dim
    X = np.asarray(x, dtype=F.dtype)
    single = X.ndim == 1
    X = X.reshape(-1, n)
    out = matmul(F, F.sq_arr(X), tm.images)
    iu, ju = np.triu_indices(n, 1)
    pair_rows = L.table[iu, ju]  # (P, n)
    live = pair_rows.any(axis=1)
    iu, ju, pair_rows = iu[live], ju[live], pair_rows[live]
    if iu.size:
        step = max(1, (1 << 22) // max(1, iu.size))
        for lo in range(0, X.shape[0], step):
            blk = X[lo : lo + step]
            w = F.mul_arr(blk[:, iu], blk[:, ju])
            out[lo : lo + step] ^= matmul(F, w, pair_rows)
    return out[0] if single else out


def induced_two_map(tm: TwoMap, proj) -> TwoMap:
    """2-map on L/I from one on L, for a restricted ideal I."""
    comp = proj.complement
    return TwoMap(proj(tm.images[comp]), tm.unique)


# ---------------------------------------------------------------------------
# derivation and verification
# ---------------------------------------------------------------------------
def _ad_squares(L: LieAlgebra) -> np.ndarray:
    F = L.field
    ad = L.ad_matrices
    if F.k == 1:
        a = ad.astype(np.float64)
        return ((a @ a).astype(np.int64) & 1).astype(F.dtype)
    return np.stack([matmul(F, ad[i], ad[i]) for i in range(L.dim)])


def two_map_derive(L: LieAlgebra):
    """Solve ad(y_i) = ad(b_i)^2 for every i; NotRestricted on the first failure.

    Free variables (the center) are set to zero, which fixes a canonical
    solution when the center is nonzero.
    """
    F, n = L.field, L.dim
    ad = L.ad_matrices
    M = ad.reshape(n, n * n).T  # column j = vec(ad_j)
    rhs = _ad_squares(L).reshape(n, n * n).T
    X, bad = solve(F, M, rhs)
    if bad:
        return NotRestricted(bad[0])
    unique = center(L).dim == 0
    return TwoMap(np.ascontiguousarray(X.T), unique)


def _ad_rows(L: LieAlgebra, X: np.ndarray) -> np.ndarray:
    """ad(x) for each row x of X: shape (N, n, n)."""
    n = L.dim
    return matmul(L.field, X, L.ad_matrices.reshape(n, n * n)).reshape(-1, n, n)


def _op_square(F, A: np.ndarray) -> np.ndarray:
    if F.k == 1:
        a = A.astype(np.float64)
        return ((a @ a).astype(np.int64) & 1).astype(F.dtype)
    return np.stack([matmul(F, m, m) for m in A])


def two_map_verify(L: LieAlgebra, tm: TwoMap, rng=None, trials: int = 64) -> TwoMapReport:
    """Check ad(x^[2]) = ad(x)^2, additivity up to [x,y] and scaling by squares."""
    F, n = L.field, L.dim
    rng = np.random.default_rng(0) if rng is None else rng
    images = np.asarray(tm.images, dtype=F.dtype)
    if images.shape != (n, n):
        return TwoMapReport(False, None, None, f"images must be {n} x {n}")
    lhs = _ad_rows(L, images)
    rhs = _ad_squares(L)
    for i in range(n):
        if not np.array_equal(lhs[i], rhs[i]):
            return TwoMapReport(False, 3, i, f"ad(b_{i}^[2]) != ad(b_{i})^2")
    exhaustive = F.k == 1 and n <= 10
    if exhaustive:
        X = np.array(list(itertools.product((0, 1), repeat=n)), dtype=F.dtype)
    else:
        X = rng.integers(0, F.q, size=(trials, n)).astype(F.dtype)
    sq = two_map_eval(L, tm, X)
    bad = np.flatnonzero((_ad_rows(L, sq) != _op_square(F, _ad_rows(L, X))).any(axis=(1, 2)))
    if bad.size:
        return TwoMapReport(False, 3, X[bad[0]].tolist(), "ad(x^[2]) != ad(x)^2")
    # additivity: (x+y)^[2] = x^[2] + y^[2] + [x, y]
    if exhaustive:
        for a in range(X.shape[0]):
            S = X[a] ^ X
            br = matmul(F, X, L.ad(X[a]).T)
            if (two_map_eval(L, tm, S) ^ sq[a] ^ sq ^ br).any():
                return TwoMapReport(False, 1, X[a].tolist(), "additivity fails")
    else:
        Y = rng.integers(0, F.q, size=(trials, n)).astype(F.dtype)
        br = np.stack([L.bracket(x, y) for x, y in zip(X, Y)])
        diff = two_map_eval(L, tm, X ^ Y) ^ sq ^ two_map_eval(L, tm, Y) ^ br
        if diff.any():
            a = int(np.flatnonzero(diff.any(axis=1))[0])
            return TwoMapReport(False, 1, (X[a].tolist(), Y[a].tolist()), "additivity fails")
    # scaling: (c x)^[2] = c^2 x^[2]
    cs = F.elements() if F.q <= 16 else list(rng.integers(0, F.q, size=8))
    for c in cs:
        c = int(c)
        if (two_map_eval(L, tm, F.mul_arr(X, c)) != F.mul_arr(sq, F.mul(c, c))).any():
            return TwoMapReport(False, 2, c, f"scaling by {c} fails")
    return TwoMapReport(True)


# ---------------------------------------------------------------------------
# toral elements and tori
# ---------------------------------------------------------------------------
def is_abelian_subspace(L: LieAlgebra, S: Subspace) -> bool:
    return bracket_space(L, S, S).dim == 0


def toral_elements(L: LieAlgebra, tm: TwoMap, h: Subspace, budget: int | None = None) -> np.ndarray:
    """All t in h with t^[2] = t, by enumeration of coordinates in h's basis."""
    F = L.field
    budget = default_budget() if budget is None else budget
    needed = F.q ** h.dim
    if needed > budget:
        raise BudgetExceeded("toral element enumeration", needed, budget)
    if h.dim == 0:
        return F.zeros((1, L.dim))
    coeffs = np.array(list(itertools.product(range(F.q), repeat=h.dim)), dtype=F.dtype)
    pts = matmul(F, coeffs, h.basis)
    sq = two_map_eval(L, tm, pts)
    return pts[(sq == pts).all(axis=1)]


def toral_span(L: LieAlgebra, tm: TwoMap, h: Subspace, budget: int | None = None) -> Torus:
    """The torus T(h) spanned by the toral elements of h.

    h must be abelian or nilpotent; in the nilpotent case toral elements are
    central, so only the center of h is enumerated.
    """
    if not is_abelian_subspace(L, h):
        if not is_nilpotent_subalgebra(L, h):
            raise ValueError("toral_span needs an abelian or nilpotent subalgebra")
        h = h.intersect(centralizer(L, h))
    F = L.field
    pts = toral_elements(L, tm, h, budget)
    keys = {p.tobytes() for p in pts}
    for p in pts[: min(len(pts), 64)]:
        for s in p ^ pts:
            if s.tobytes() not in keys:
                raise AssertionError("toral elements are not closed under addition")
    basis: list[np.ndarray] = []
    cur = Subspace.zero(F, L.dim)
    for p in pts:
        if p.any() and not cur.contains(p):
            basis.append(p)
            cur = Subspace.span(F, np.array(basis), L.dim)
    tb = np.array(basis, dtype=F.dtype).reshape(-1, L.dim)
    return Torus(cur, tb, pts)


def make_torus(L: LieAlgebra, tm: TwoMap, toral_basis) -> Torus:
    """Wrap an explicit toral basis after checking t^[2] = t and commutativity."""
    F = L.field
    tb = np.asarray(toral_basis, dtype=F.dtype).reshape(-1, L.dim)
    if (two_map_eval(L, tm, tb) != tb).any():
        raise ValueError("basis vector is not toral")
    S = Subspace.span(F, tb, L.dim)
    if S.dim != tb.shape[0]:
        raise ValueError("toral basis is linearly dependent")
    if not is_abelian_subspace(L, S):
        raise ValueError("toral basis does not commute")
    return Torus(S, tb)


def toral_rank_of_cartan(L: LieAlgebra, tm: TwoMap, h: Subspace, budget: int | None = None) -> int:
    return toral_span(L, tm, h, budget).dim


# ---------------------------------------------------------------------------
# Cartan subalgebras
# ---------------------------------------------------------------------------
def fitting_null(L: LieAlgebra, x) -> Subspace:
    """Generalised 0-eigenspace of ad(x)."""
    F, n = L.field, L.dim
    A = L.ad(x)
    P = A
    e = 1
    while e < n:
        P = matmul(F, P, P)
        e *= 2
    return nullspace(F, P)


def is_cartan(L: LieAlgebra, h: Subspace) -> bool:
    if h.dim == 0:
        return L.dim == 0
    return is_nilpotent_subalgebra(L, h) and normalizer(L, h) == h


class CartanSearchFailed(RuntimeError):
    pass


def cartan_subalgebra(L: LieAlgebra, seed=0, max_tries: int = 64) -> Subspace:
    """Las Vegas search: L_0(ad x) for random x until nilpotent and self-normalizing."""
    F, n = L.field, L.dim
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if L.is_abelian():
        return Subspace.full(F, n)
    for _ in range(max_tries):
        x = rng.integers(0, F.q, size=n).astype(F.dtype)
        h = fitting_null(L, x)
        if is_cartan(L, h):
            return h
    raise CartanSearchFailed(f"no Cartan subalgebra found in {max_tries} tries")

"""Simplicity of a Lie algebra as irreducibility of its adjoint module.

Two routes share no code beyond spinning:

* the oracle spins every nonzero vector (projective point) and looks for a
  proper closure;
* the fast path is a randomized MeatAxe run with Norton's certificate:
  an element ``theta`` of the algebra generated by the ad-operators and an
  irreducible polynomial ``p`` with ``nullity p(theta) = deg p`` decide
  irreducibility by two spins, one on the module and one on its dual.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import kernels
from .core import LieAlgebra, bracket_space, is_ideal
from .exactla import (
    Subspace,
    common_kernel,
    identity,
    inverse,
    matmul,
    nullspace,
    rank,
    rref_pivots,
    spin,
)
from .field import FieldSpec
from .restricted import BudgetExceeded, default_budget


class CertificationFailed(RuntimeError):
    """The randomized test ran out of attempts without a certified verdict."""


@dataclass
class SimplicityVerdict:
    simple: bool
    method: str
    witness: Subspace | None = None
    reason: str = ""
    transcript: dict = dc_field(default_factory=dict, repr=False)

    def __bool__(self):
        return self.simple


# ---------------------------------------------------------------------------
# shared pre-checks
# ---------------------------------------------------------------------------
def _structural(L: LieAlgebra, method: str) -> SimplicityVerdict | None:
    F, n = L.field, L.dim
    if n == 0:
        return SimplicityVerdict(False, method, None, "zero algebra")
    if L.is_abelian():
        W = Subspace.span(F, identity(F, n)[:1], n) if n > 1 else None
        return SimplicityVerdict(False, method, W, "abelian")
    D = bracket_space(L, Subspace.full(F, n), Subspace.full(F, n))
    if D.dim < n:
        return SimplicityVerdict(False, method, D, "[L,L] is a proper ideal")
    return None


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------
def _projective_points(F: FieldSpec, n: int):
    """Nonzero vectors with first nonzero coordinate 1, lexicographic in blocks."""
    for lead in range(n):
        tail = n - lead - 1
        for rest in itertools.product(range(F.q), repeat=tail):
            v = F.zeros(n)
            v[lead] = 1
            v[lead + 1 :] = rest
            yield v


def is_simple_oracle(L: LieAlgebra, budget: int | None = None, backend: str | None = None) -> SimplicityVerdict:
    F, n = L.field, L.dim
    budget = default_budget() if budget is None else budget
    needed = (F.q**n - 1) // (F.q - 1) if n else 0
    if needed > budget:
        raise BudgetExceeded("simplicity oracle", needed, budget)
    pre = _structural(L, "oracle")
    if pre is not None and pre.reason != "[L,L] is a proper ideal":
        return pre
    ops = L.ad_matrices
    if F.k == 1 and n <= 63:
        cols = kernels.pack(np.ascontiguousarray(np.swapaxes(ops, 1, 2)))[..., 0]
        best, vec = kernels.closure_scan_gf2(np.ascontiguousarray(cols), n, backend=backend)
        if best < n:
            seed = np.array([(vec >> j) & 1 for j in range(n)], dtype=F.dtype)
            W = spin(F, ops, seed, n)
        else:
            W = None
    else:
        W = None
        for v in _projective_points(F, n):
            S = spin(F, ops, v, n)
            if S.dim < n and (W is None or S.dim < W.dim):
                W = S
                if W.dim == 1:
                    break
    if W is not None:
        return SimplicityVerdict(False, "oracle", W, "closure of a vector is a proper ideal", {"points": needed})
    if pre is not None:
        return pre
    return SimplicityVerdict(True, "oracle", None, "every closure is the whole algebra", {"points": needed})


# ---------------------------------------------------------------------------
# fast path
# ---------------------------------------------------------------------------
def _irreducible_polys(F: FieldSpec) -> list[tuple[int, ...]]:
    """Monic irreducible polynomials of degree 1 and (for small fields) 2, low coefficient first."""
    polys = [(lam, 1) for lam in range(F.q)]
    if F.q <= 16:
        for b in range(F.q):
            for c in range(F.q):
                if all(F.mul(x, x) ^ F.mul(b, x) ^ c for x in range(F.q)):
                    polys.append((c, b, 1))
    return polys


def _poly_eval(F: FieldSpec, coeffs, theta: np.ndarray) -> np.ndarray:
    n = theta.shape[0]
    out = F.zeros((n, n))
    for c in reversed(coeffs):
        out = matmul(F, out, theta)
        out[np.arange(n), np.arange(n)] ^= np.asarray(c, dtype=F.dtype)
    return out


def _build_pool(F: FieldSpec, ops: np.ndarray, steps) -> list[np.ndarray]:
    """Replay a recipe of ("gen", coeffs) / ("mul", a, b) / ("add", a, b) steps."""
    pool: list[np.ndarray] = []
    for step in steps:
        _apply(F, ops, pool, step)
    return pool


def _apply(F: FieldSpec, ops: np.ndarray, pool: list, step) -> None:
    n = ops.shape[1]
    if step[0] == "gen":
        g = np.asarray(step[1], dtype=F.dtype)
        pool.append(matmul(F, g, ops.reshape(ops.shape[0], n * n)).reshape(n, n))
    elif step[0] == "mul":
        pool.append(matmul(F, pool[step[1]], pool[step[2]]))
    else:
        pool.append(pool[step[1]] ^ pool[step[2]])


def _combine(F: FieldSpec, pool, combination) -> np.ndarray:
    n = pool[0].shape[0]
    theta = F.zeros((n, n))
    for idx, c in combination:
        theta ^= F.mul_arr(pool[idx], c)
    return theta


def _annihilator(F: FieldSpec, S: Subspace) -> Subspace:
    return nullspace(F, S.basis)


def is_simple_fast(L: LieAlgebra, seed=0, max_attempts: int = 64) -> SimplicityVerdict:
    pre = _structural(L, "adjoint-irreducibility")
    if pre is not None:
        return pre
    F, n = L.field, L.dim
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    ops = np.asarray(L.ad_matrices)
    opsT = np.ascontiguousarray(ops.transpose(0, 2, 1))
    pool: list[np.ndarray] = []
    steps: list[tuple] = []
    polys = _irreducible_polys(F)

    def add(step):
        steps.append(step)
        _apply(F, ops, pool, step)

    def found(W: Subspace, how: str) -> SimplicityVerdict:
        return SimplicityVerdict(False, "adjoint-irreducibility", W, how, {"steps": list(steps)})

    add(("gen", rng.integers(0, F.q, size=n).tolist()))
    for _ in range(max_attempts):
        # a fresh Lie element each round keeps the generated algebra growing
        add(("gen", rng.integers(0, F.q, size=n).tolist()))
        for op in ("mul", "mul", "add"):
            a, b = (int(x) for x in rng.integers(0, len(pool), size=2))
            add((op, a, b))
        recent = np.arange(max(0, len(pool) - 8), len(pool))
        picks = rng.choice(recent, size=min(len(recent), 4), replace=False)
        combination = [(int(p), int(rng.integers(1, F.q)) if F.q > 2 else 1) for p in picks]
        theta = _combine(F, pool, combination)
        for coeffs in polys:
            deg = len(coeffs) - 1
            N = _poly_eval(F, coeffs, theta)
            K = nullspace(F, N)
            if K.dim == 0:
                continue
            if K.dim != deg:
                for v in K.basis[:4]:
                    W = spin(F, ops, v, n)
                    if W.dim < n:
                        return found(W, "spin of a kernel vector is a proper ideal")
                continue
            v = K.basis[0]
            W = spin(F, ops, v, n)
            if W.dim < n:
                return found(W, "spin of a kernel vector is a proper ideal")
            Kt = nullspace(F, N.T)
            w = Kt.basis[0]
            Wt = spin(F, opsT, w, n)
            if Wt.dim < n:
                return found(_annihilator(F, Wt), "annihilator of a dual spin is a proper ideal")
            transcript = {
                "steps": list(steps),
                "combination": combination,
                "poly": list(coeffs),
                "v": v.tolist(),
                "w": w.tolist(),
            }
            return SimplicityVerdict(True, "adjoint-irreducibility", None, "Norton certificate", transcript)
    raise CertificationFailed(f"no certified verdict after {max_attempts} attempts")


def is_simple(L: LieAlgebra, method: str = "auto", seed=0, budget: int | None = None) -> SimplicityVerdict:
    if method == "oracle":
        return is_simple_oracle(L, budget)
    if method == "fast":
        return is_simple_fast(L, seed)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    budget = default_budget() if budget is None else budget
    F = L.field
    if L.dim and (F.q**L.dim - 1) // (F.q - 1) <= min(budget, 4096):
        return is_simple_oracle(L, budget)
    return is_simple_fast(L, seed)


# ---------------------------------------------------------------------------
# independent re-check
# ---------------------------------------------------------------------------
def verify_verdict(L: LieAlgebra, verdict: SimplicityVerdict) -> bool:
    """Re-check a verdict without trusting the code path that produced it."""
    F, n = L.field, L.dim
    if not verdict.simple:
        W = verdict.witness
        if W is None:
            return n == 0 or (n == 1 and L.is_abelian())
        return 0 < W.dim < n and is_ideal(L, W)
    if L.is_abelian() or bracket_space(L, Subspace.full(F, n), Subspace.full(F, n)).dim != n:
        return False
    if verdict.method == "oracle":
        again = is_simple_oracle(L)
        return again.simple
    t = verdict.transcript
    ops = np.asarray(L.ad_matrices)
    pool = _build_pool(F, ops, t["steps"])
    theta = _combine(F, pool, t["combination"])
    coeffs = tuple(int(c) for c in t["poly"])
    if coeffs not in _irreducible_polys(F):
        return False
    N = _poly_eval(F, coeffs, theta)
    if n - rank(F, N) != len(coeffs) - 1:
        return False
    v = np.asarray(t["v"], dtype=F.dtype)
    w = np.asarray(t["w"], dtype=F.dtype)
    if not v.any() or not w.any():
        return False
    if matmul(F, N, v).any() or matmul(F, N.T, w).any():
        return False
    if spin(F, ops, v, n).dim != n:
        return False
    return spin(F, np.ascontiguousarray(ops.transpose(0, 2, 1)), w, n).dim == n


# ---------------------------------------------------------------------------
# centroid
# ---------------------------------------------------------------------------
def _tracked_spin(F: FieldSpec, ops: np.ndarray, v: np.ndarray):
    """Spin keeping, for each new vector, the (generator, parent) that produced it."""
    n = ops.shape[1]
    vecs = [np.asarray(v, dtype=F.dtype)]
    tree: list[tuple[int, int] | None] = [None]
    S = Subspace.span(F, vecs[0][None, :], n)
    frontier = [0]
    G = ops.shape[0]
    while frontier and S.dim < n:
        cands, meta = [], []
        for p in frontier:
            imgs = matmul(F, ops.reshape(G * n, n), vecs[p]).reshape(G, n)
            cands.append(imgs)
            meta.extend((g, p) for g in range(G))
        C = np.vstack(cands)
        rem = S.reduce(C)
        _, piv = rref_pivots(F, rem.T)
        if not piv:
            break
        frontier = []
        for c in piv:
            vecs.append(C[c])
            tree.append(meta[c])
            frontier.append(len(vecs) - 1)
        S = Subspace.span(F, np.array(vecs), n)
    return np.array(vecs), tree, S.dim == n


def centroid(L: LieAlgebra, seed=0, tries: int = 8) -> Subspace:
    """Operators commuting with every ad(b_i), as flattened n x n matrices."""
    F, n = L.field, L.dim
    ops = np.asarray(L.ad_matrices)
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        v = rng.integers(0, F.q, size=n).astype(F.dtype)
        if not v.any():
            continue
        U, tree, full = _tracked_spin(F, ops, v)
        if full:
            return _centroid_cyclic(F, ops, U, tree)
    if n > 24:
        raise CertificationFailed("no cyclic vector found and the algebra is too large for the direct system")
    return _centroid_kron(F, ops)


def _centroid_cyclic(F: FieldSpec, ops: np.ndarray, U: np.ndarray, tree) -> Subspace:
    # phi is fixed by w = phi(u_0): phi(u_k) = a_k w with a_k the word along the tree
    n = U.shape[0]
    A = [identity(F, n)]
    for g, p in tree[1:]:
        A.append(matmul(F, ops[g], A[p]))
    A = np.stack(A)  # (n, n, n)
    Uinv = inverse(F, U)
    blocks = []
    for i in range(ops.shape[0]):
        C = matmul(F, matmul(F, U, ops[i].T), Uinv)  # row k: coords of ad_i u_k
        lhs = matmul(F, C, A.reshape(n, n * n)).reshape(n, n, n)
        # rhs[k] = ad_i a_k, all k in one product
        rhs = matmul(F, ops[i], A.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n, n).transpose(1, 0, 2)
        blocks.append((lhs ^ rhs).reshape(n * n, n))
    W = common_kernel(F, blocks, n)
    out = []
    UTinv = inverse(F, U.T)
    for w in W.basis:
        cols = matmul(F, A.reshape(n * n, n), w).reshape(n, n)  # row k = phi(u_k)
        out.append(matmul(F, cols.T, UTinv).reshape(-1))
    return Subspace.span(F, np.array(out, dtype=F.dtype).reshape(-1, n * n), n * n)


def _centroid_kron(F: FieldSpec, ops: np.ndarray) -> Subspace:
    n = ops.shape[1]
    I = identity(F, n)
    blocks = [(np.kron(I, op.T) ^ np.kron(op, I)).astype(F.dtype) for op in ops]
    return common_kernel(F, blocks, n * n)


def absolutely_simple(L: LieAlgebra, verdict: SimplicityVerdict | None = None, seed=0) -> bool:
    verdict = is_simple(L, seed=seed) if verdict is None else verdict
    return verdict.simple and centroid(L, seed).dim == 1

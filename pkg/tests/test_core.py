import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lie2.classical import build_classical
from lie2.core import (
    LieAlgebra,
    LieError,
    bracket_space,
    center,
    centralizer,
    derived_dims,
    derived_series,
    ideal_closure,
    is_ideal,
    lower_central_series,
    normalizer,
    quotient_by_ideal,
    verify_axioms,
)
from lie2.exactla import Subspace, inverse, matmul
from lie2.field import field_make


def heisenberg(F):
    return LieAlgebra.from_constants(F, 3, [(0, 1, 2, 1)], labels=["x", "y", "z"])


def change_basis(L, P):
    """The same algebra written in the basis given by the rows of P."""
    F = L.field
    Pinv = inverse(F, P)
    images = L.brackets(P, P)  # (n, n, n) in old coordinates
    n = L.dim
    table = matmul(F, images.reshape(n * n, n), Pinv).reshape(n, n, n)
    return LieAlgebra(F, table)


def test_table_must_be_alternating():
    F = field_make(1)
    t = np.zeros((2, 2, 2), dtype=np.uint8)
    t[0, 1, 0] = 1
    with pytest.raises(LieError):
        LieAlgebra(F, t)
    t[1, 1, 1] = 1
    with pytest.raises(LieError):
        LieAlgebra(F, t)


def test_from_constants_roundtrip():
    F = field_make(2)
    L = build_classical("sl", 3, 2).algebra
    M = LieAlgebra.from_constants(F, L.dim, L.constants(), L.labels)
    assert np.array_equal(M.table, L.table)


def test_ad_matrices_act_by_bracket():
    L = build_classical("sl", 3, 2).algebra
    rng = np.random.default_rng(1)
    x, y = rng.integers(0, 4, (2, L.dim)).astype(np.uint8)
    assert np.array_equal(matmul(L.field, L.ad(x), y[:, None])[:, 0], L.bracket(x, y))
    assert np.array_equal(L.bracket(x, y), L.bracket(y, x))
    assert not L.bracket(x, x).any()


def test_jacobi_violation_is_reported():
    F = field_make(1)
    bad = LieAlgebra.from_constants(F, 3, [(0, 1, 1, 1), (1, 2, 0, 1)])
    rep = verify_axioms(bad)
    assert not rep.ok and rep.violation == (0, 1, 2)
    assert verify_axioms(heisenberg(F)).ok


def test_heisenberg_invariants():
    F = field_make(1)
    H = heisenberg(F)
    z = Subspace.span(F, [[0, 0, 1]], 3)
    assert center(H) == z
    assert derived_dims(H) == [3, 1, 0]
    assert [S.dim for S in lower_central_series(H, Subspace.full(F, 3))] == [3, 1, 0]
    assert is_ideal(H, z)
    assert ideal_closure(H, np.array([[1, 0, 0]], dtype=np.uint8)).dim == 2
    x = Subspace.span(F, [[1, 0, 0]], 3)
    assert centralizer(H, x).dim == 2
    assert normalizer(H, x).dim == 2
    Q, proj = quotient_by_ideal(H, z)
    assert Q.dim == 2 and Q.is_abelian()


def test_quotient_rejects_non_ideal():
    F = field_make(1)
    with pytest.raises(LieError):
        quotient_by_ideal(heisenberg(F), Subspace.span(F, [[1, 0, 0]], 3))


def test_derived_series_includes_stable_term():
    assert [S.dim for S in derived_series(build_classical("sl", 2).algebra)] == [3, 1, 0]
    perfect = derived_series(build_classical("sl", 3).algebra)
    assert len(perfect) == 2 and perfect[0] == perfect[1]


def test_projection_is_a_homomorphism():
    L = build_classical("gl", 4).algebra
    Z = center(L)
    Q, proj = quotient_by_ideal(L, Z)
    rng = np.random.default_rng(0)
    for _ in range(10):
        x, y = rng.integers(0, 2, (2, L.dim)).astype(np.uint8)
        assert np.array_equal(proj(L.bracket(x, y)), Q.bracket(proj(x), proj(y)))
        assert np.array_equal(proj(proj.lift(proj(x))), proj(x))


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), family=st.sampled_from(["sl", "sp", "o"]), k=st.sampled_from([1, 2]))
def test_invariants_survive_change_of_basis(seed, family, k):
    F = field_make(k)
    L = build_classical(family, 2 if family == "sp" else 3, k).algebra
    rng = np.random.default_rng(seed)
    while True:
        P = rng.integers(0, F.q, (L.dim, L.dim)).astype(F.dtype)
        try:
            inverse(F, P)
            break
        except ValueError:
            continue
    M = change_basis(L, P)
    assert verify_axioms(M).ok
    assert derived_dims(M) == derived_dims(L)
    assert center(M).dim == center(L).dim


def test_bracket_space_of_full_is_derived():
    L = build_classical("sp", 2).algebra
    full = Subspace.full(L.field, L.dim)
    assert bracket_space(L, full, full) == derived_series(L)[1]

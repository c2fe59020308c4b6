import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lie2.classical import build_classical
from lie2.core import LieAlgebra
from lie2.exactla import Subspace, matmul
from lie2.field import field_make
from lie2.restricted import (
    BudgetExceeded,
    NotRestricted,
    TwoMap,
    cartan_subalgebra,
    fitting_null,
    is_cartan,
    make_torus,
    toral_elements,
    toral_rank_of_cartan,
    toral_span,
    two_map_derive,
    two_map_eval,
    two_map_verify,
)
from lie2.restricted import default_budget


@pytest.mark.parametrize("family,size,k", [("sl", 3, 1), ("sl", 3, 2), ("gl", 2, 3), ("sp", 2, 1), ("psl", 4, 1)])
def test_derived_two_map_is_verified(family, size, k):
    L = build_classical(family, size, k).algebra
    tm = two_map_derive(L)
    assert isinstance(tm, TwoMap)
    assert two_map_verify(L, tm, np.random.default_rng(0)).ok


def test_matrix_squaring_agrees_with_derived_map_on_ad():
    res = build_classical("sl", 3, 2)
    L, given_map = res.algebra, res.two_map
    derived = two_map_derive(L)
    rng = np.random.default_rng(3)
    X = rng.integers(0, 4, (20, L.dim)).astype(np.uint8)
    # centerless: ad is injective, so ad(x^[2]) = ad(x)^2 pins the map down
    for x, a, b in zip(X, two_map_eval(L, given_map, X), two_map_eval(L, derived, X)):
        assert np.array_equal(a, b)


def test_not_restricted_witness():
    L = build_classical("o1", 3).algebra
    tm = two_map_derive(L)
    assert isinstance(tm, NotRestricted)
    assert str(tm).startswith("NotRestricted (witness: basis ")
    assert 0 <= tm.witness < L.dim


def test_broken_two_map_is_caught():
    L = build_classical("sl", 3).algebra
    tm = two_map_derive(L)
    bad = TwoMap(tm.images.copy())
    bad.images[0] ^= L.basis_vector(3)
    rep = two_map_verify(L, bad, np.random.default_rng(0))
    assert not rep.ok and rep.axiom == 3


def test_two_map_scaling_by_squares():
    L = build_classical("sl", 2, 3).algebra
    F = L.field
    tm = two_map_derive(L)
    rng = np.random.default_rng(2)
    for _ in range(10):
        x = rng.integers(0, F.q, L.dim).astype(F.dtype)
        c = int(rng.integers(1, F.q))
        lhs = two_map_eval(L, tm, F.mul_arr(c, x))
        rhs = F.mul_arr(F.mul(c, c), two_map_eval(L, tm, x))
        assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("family,size,rank", [("sl", 3, 2), ("gl", 3, 3), ("sl", 4, 3), ("sp", 2, 2), ("sp", 3, 3)])
def test_toral_rank_of_constructor_cartan(family, size, rank):
    res = build_classical(family, size)
    assert is_cartan(res.algebra, res.cartan)
    assert toral_rank_of_cartan(res.algebra, res.two_map, res.cartan) == rank


def test_torus_elements_are_toral_and_commute():
    res = build_classical("sl", 4)
    L, tm = res.algebra, res.two_map
    T = toral_span(L, tm, res.cartan)
    assert np.array_equal(two_map_eval(L, tm, T.toral_basis), T.toral_basis)
    assert len(T.toral_elements) == 2**T.dim
    make_torus(L, tm, T.toral_basis)
    with pytest.raises(ValueError):
        make_torus(L, tm, L.basis_vector(res.algebra.labels.index("e12")))


def test_budget_is_enforced():
    res = build_classical("sl", 5)
    with pytest.raises(BudgetExceeded) as exc:
        toral_elements(res.algebra, res.two_map, res.cartan, budget=4)
    assert "LIE2_BUDGET" in str(exc.value)
    assert default_budget() >= 4


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("LIE2_BUDGET", "7")
    assert default_budget() == 7


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_random_cartan_search(seed):
    L = build_classical("sl", 3).algebra
    h = cartan_subalgebra(L, seed=seed)
    assert is_cartan(L, h)


def test_fitting_null_of_regular_element():
    res = build_classical("sl", 3, 2)
    L = res.algebra
    F = L.field
    x = F.zeros(L.dim)
    x[0], x[1] = 1, F.gen  # a regular diagonal element
    assert fitting_null(L, x) == res.cartan


def test_abelian_algebra_with_zero_map():
    F = field_make(1)
    L = LieAlgebra(F, np.zeros((2, 2, 2), dtype=np.uint8))
    tm = two_map_derive(L)
    assert isinstance(tm, TwoMap) and not tm.unique

import numpy as np
import pytest

from lie2.classical import (
    ClassicalError,
    ClassicalSpec,
    build_classical,
    congruence_iso,
    form_algebra,
    matrix_algebra,
    symplectic_gram,
)
from lie2.core import center, derived_dims, verify_axioms
from lie2.field import field_make
from lie2.restricted import NotRestricted, TwoMap, is_cartan, two_map_verify

DIMS = [
    ("gl", 3, 9), ("sl", 3, 8), ("sl", 4, 15), ("psl", 4, 14), ("psl", 6, 34),
    ("sp", 2, 10), ("sp1", 2, 6), ("sp2", 2, 5), ("sp", 3, 21), ("sp2", 3, 14), ("psp2", 4, 26),
    ("o", 4, 10), ("o1", 4, 6),
]


@pytest.mark.parametrize("family,size,dim", DIMS)
def test_dimension_and_axioms(family, size, dim):
    res = build_classical(family, size)
    L = res.algebra
    assert L.dim == dim
    assert verify_axioms(L).ok
    assert is_cartan(L, res.cartan)
    if isinstance(res.two_map, TwoMap):
        assert two_map_verify(L, res.two_map, np.random.default_rng(0)).ok


@pytest.mark.parametrize("bad", [("psl", 5), ("psp2", 3), ("sp2", 1), ("sl", 1), ("o1", 1), ("xx", 3)])
def test_spec_validation(bad):
    with pytest.raises(ClassicalError):
        ClassicalSpec(*bad)


def test_spec_name_and_iteration():
    spec = ClassicalSpec("sp2", 3, 2)
    assert spec.field.q == 4
    L, tm, h = build_classical(spec)
    assert L.dim == 14


def test_sp_label_scheme():
    L = build_classical("sp", 2).algebra
    assert set(L.labels) == {"d1", "d2", "a12", "a21", "b12", "b1", "b2", "c12", "c1", "c2"}


def test_psl_has_trivial_center():
    assert center(build_classical("psl", 4).algebra).dim == 0
    assert center(build_classical("sl", 4).algebra).dim == 1


def test_matrix_algebra_rejects_dependent_input():
    F = field_make(1)
    E = np.zeros((2, 2, 2), dtype=np.uint8)
    E[0, 0, 1] = E[1, 0, 1] = 1
    with pytest.raises(ClassicalError):
        matrix_algebra(F, E, ["x", "y"])


def test_non_closed_squares_fall_back():
    res = build_classical("o1", 4)
    assert isinstance(res.two_map, NotRestricted)


def test_form_algebra_and_congruence():
    F = field_make(1)
    J = symplectic_gram(F, 2)
    A = form_algebra(J)
    assert A.algebra.dim == 10
    # swapping the two hyperbolic pairs preserves J
    S = np.zeros((4, 4), dtype=np.uint8)
    for i, j in [(0, 1), (1, 0), (2, 3), (3, 2)]:
        S[i, j] = 1
    iso = congruence_iso(J, J, S)
    assert iso.matrix.shape == (10, 10)


def test_sp_derived_series_over_gf4():
    assert derived_dims(build_classical("sp", 2, 2).algebra) == [10, 6, 5, 1, 0]

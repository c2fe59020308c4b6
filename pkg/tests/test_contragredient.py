import numpy as np
import pytest

from lie2.contragredient import (
    ContragredientError,
    assemble,
    build_local,
    f4a_matrix,
    kac_veisfeiler,
    root_decomposition,
    word_weight,
)
from lie2.chevalley import cartan_matrix
from lie2.core import verify_axioms
from lie2.field import field_make
from lie2.restricted import two_map_derive, TwoMap

# Degreewise dimensions of the positive part, frozen from an independent
# elimination of the f-kernel by hand.
KV_POSITIVE_DIMS = [4, 3, 2, 2, 1, 1, 1, 1]


def test_generators_and_degree_one():
    B = build_local(f4a_matrix(2), 2)
    assert B.dim(1) == B.dim(-1) == 4
    assert B.word_text(1, 0) == "e1"


@pytest.mark.parametrize("label", ["A2", "A3", "G2"])
def test_finite_type_matches_chevalley_dimension(label):
    """For a finite Cartan matrix the construction yields an algebra of the right size."""
    C = cartan_matrix(label) % 2
    L, B = assemble(C.tolist(), 1)
    assert verify_axioms(L).ok
    assert B.positive_dims() == B.negative_dims()


def test_kv34_structure(kv34):
    L, B = kv34.algebra, kv34.builder
    assert L.dim == 34
    assert B.positive_dims() == KV_POSITIVE_DIMS + [0]
    assert B.negative_dims() == KV_POSITIVE_DIMS + [0]
    assert len(L.grading) == 34


def test_kv34_root_decomposition(kv34):
    dec = root_decomposition(kv34.algebra, kv34.two_map, kv34.standard_torus_basis())
    assert dec.zero.dim == 4
    assert len(dec.roots) == 15
    assert all(S.dim == 2 for S in dec.spaces.values())
    assert dec.total_dim() == 34


def test_generator_weights(kv34):
    T = kv34.standard_torus_basis()
    weights = [word_weight(kv34.builder, 1, t, T) for t in range(4)]
    assert len(set(weights)) == 4
    assert all(any(w) for w in weights)


def test_kv_parameter_must_avoid_prime_field():
    with pytest.raises(ContragredientError):
        kac_veisfeiler("1", 2, check=False)


def test_kv_over_larger_field():
    kv = kac_veisfeiler("w", 4, check=False)
    assert kv.algebra.dim == 34
    assert isinstance(two_map_derive(kv.algebra), TwoMap)


def test_degree_bound():
    with pytest.raises(ContragredientError):
        assemble(f4a_matrix(2), 2, bound=4)

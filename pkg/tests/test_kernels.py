"""Compiled kernels against their pure-Python twins."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lie2 import kernels
from lie2.classical import build_classical
from lie2.core import LieAlgebra, verify_axioms
from lie2.field import field_make

compiled = pytest.mark.skipif(kernels.BACKEND != "compiled", reason="extension not built")


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.integers(1, 140), st.integers(0, 2**32 - 1))
def test_pack_unpack_roundtrip(rows, n, seed):
    bits = np.random.default_rng(seed).integers(0, 2, (rows, n)).astype(np.uint8)
    assert np.array_equal(kernels.unpack(kernels.pack(bits), n), bits)


@compiled
@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.integers(1, 130), st.integers(0, 2**32 - 1))
def test_rref_packed_backends_agree(rows, n, seed):
    bits = np.random.default_rng(seed).integers(0, 2, (rows, n)).astype(np.uint8)
    A, B = kernels.pack(bits), kernels.pack(bits)
    pa = kernels.rref_packed(A, n, backend="compiled")
    pb = kernels.rref_packed(B, n, backend="python")
    assert pa == pb
    assert np.array_equal(A, B)


@compiled
@settings(max_examples=40, deadline=None)
@given(st.integers(1, 70), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_spin_packed_backends_agree(n, nops, seed):
    rng = np.random.default_rng(seed)
    ops = rng.integers(0, 2, (nops, n, n)).astype(np.uint8) & (rng.random((nops, n, n)) < 0.1)
    cols = kernels.pack(ops.transpose(0, 2, 1))
    seeds = kernels.pack(rng.integers(0, 2, (1, n)).astype(np.uint8))
    a = kernels.spin_packed(cols, seeds, n, backend="compiled")
    b = kernels.spin_packed(cols, seeds, n, backend="python")
    assert np.array_equal(a, b)


@compiled
@pytest.mark.parametrize("family,size", [("sl", 2), ("sl", 3), ("sp", 2), ("o1", 4)])
def test_closure_scan_backends_agree(family, size):
    L = build_classical(family, size).algebra
    cols = kernels.pack(L.ad_matrices.transpose(0, 2, 1))
    assert kernels.closure_scan_gf2(cols, L.dim, backend="compiled") == kernels.closure_scan_gf2(
        cols, L.dim, backend="python"
    )


@compiled
@pytest.mark.parametrize("k", [1, 2])
def test_jacobi_scan_backends_agree(k):
    good = build_classical("sl", 3, k).algebra
    F = field_make(k)
    bad = LieAlgebra.from_constants(F, 3, [(0, 1, 1, 1), (1, 2, 0, 1)])
    for L in (good, bad):
        assert verify_axioms(L, backend="compiled") == verify_axioms(L, backend="python")


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get_impl("fortran")

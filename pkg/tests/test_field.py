import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lie2.field import MODULI, FieldError, Scalar, arith, field_make, frobenius_sqrt, is_irreducible


def clmul_mod(a, b, modulus, k):
    """Schoolbook carry-less product reduced modulo the field polynomial."""
    prod = 0
    for i in range(k):
        if (b >> i) & 1:
            prod ^= a << i
    for d in range(2 * k - 2, k - 1, -1):
        if (prod >> d) & 1:
            prod ^= modulus << (d - k)
    return prod


@pytest.mark.parametrize("k", sorted(MODULI))
def test_moduli_irreducible(k):
    F = field_make(k)
    assert is_irreducible(F.modulus)
    assert F.q == 2**k


@pytest.mark.parametrize("k", [1, 2, 3, 4, 8])
def test_multiplication_table_matches_carryless_product(k):
    F = field_make(k)
    els = np.arange(F.q)
    table = F.mul_arr(els[:, None], els[None, :])
    for a in range(F.q):
        for b in range(F.q):
            assert table[a, b] == clmul_mod(a, b, F.modulus, k)


@settings(max_examples=200, deadline=None)
@given(k=st.integers(1, 16), data=st.data())
def test_field_axioms(k, data):
    F = field_make(k)
    el = st.integers(0, F.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
    assert F.mul(a, b) == clmul_mod(a, b, F.modulus, k)
    if a:
        assert F.mul(a, F.inv(a)) == 1
    s = F.sqrt(a)
    assert F.mul(s, s) == a
    assert F.pow(a, F.q) == a


def test_zero_has_no_inverse():
    with pytest.raises(FieldError):
        field_make(2).inv(0)


@pytest.mark.parametrize("k", [0, 17, "2"])
def test_bad_degree(k):
    with pytest.raises(FieldError):
        field_make(k)


def test_parse_and_format_roundtrip():
    F = field_make(4)
    for a in range(F.q):
        assert F.parse(F.format(a)) == a
    G = field_make(2)
    assert G.parse("w") == 2
    assert G.parse("w^2") == G.parse("w+1") == 3
    with pytest.raises(FieldError):
        G.parse("z")
    with pytest.raises(FieldError):
        G.parse("5")


def test_scalar_wrapper():
    F = field_make(2)
    w = Scalar(F, F.gen)
    assert int(w * w) == F.parse("w+1")
    assert int(w + 1) == 3
    assert int(arith("inv", w) * w) == 1
    assert int(arith("pow", w, 3)) == 1
    assert int(frobenius_sqrt(w * w)) == int(w)
    with pytest.raises(FieldError):
        w + Scalar(field_make(3), 1)

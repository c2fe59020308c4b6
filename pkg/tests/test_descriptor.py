import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lie2.classical import build_classical
from lie2.descriptor import AlgebraDescriptor, DescriptorError, load, provenance, save


@settings(max_examples=15, deadline=None)
@given(family=st.sampled_from(["sl", "gl", "sp", "o", "psl"]), k=st.sampled_from([1, 2, 3]))
def test_roundtrip(family, k):
    size = {"sp": 2, "psl": 4}.get(family, 3)
    res = build_classical(family, size, k)
    d = AlgebraDescriptor(res.algebra, res.two_map, res.cartan, None, None, provenance(family, n=size))
    text = d.dumps()
    again = AlgebraDescriptor.loads(text)
    assert np.array_equal(again.algebra.table, res.algebra.table)
    assert again.algebra.labels == res.algebra.labels
    assert np.array_equal(again.two_map.images, res.two_map.images)
    assert again.cartan == res.cartan
    assert again.dumps() == text


def test_kv_descriptor_keeps_grading_and_torus(kv34, tmp_path):
    d = AlgebraDescriptor(kv34.algebra, kv34.two_map, kv34.cartan, list(kv34.algebra.grading),
                          kv34.standard_torus_basis(), provenance("kv34", a="w"))
    path = tmp_path / "kv.json"
    save(d, path)
    again = load(path)
    assert again.grading == list(kv34.algebra.grading)
    assert np.array_equal(again.torus, kv34.standard_torus_basis())
    assert again.provenance["params"] == {"a": "w"}


def test_output_is_canonical_json():
    res = build_classical("sl", 2)
    text = AlgebraDescriptor(res.algebra).dumps()
    assert text.endswith("\n") and ": " not in text
    assert list(json.loads(text)) == sorted(json.loads(text))


@pytest.mark.parametrize("text", ["{", "[]", '{"field": {"k": 1}}', '{"field": {"k": 1}, "dim": 2, "constants": [[0, 0, 1, 1]]}'])
def test_malformed_input(text):
    with pytest.raises(ValueError):
        AlgebraDescriptor.loads(text)


def test_descriptor_error_is_value_error():
    assert issubclass(DescriptorError, ValueError)

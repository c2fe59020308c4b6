"""Canonical JSON descriptors for constructed algebras."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import __version__
from .core import LieAlgebra
from .exactla import Subspace
from .field import field_make
from .restricted import TwoMap


class DescriptorError(ValueError):
    pass


@dataclass
class AlgebraDescriptor:
    algebra: LieAlgebra
    two_map: TwoMap | None = None
    cartan: Subspace | None = None
    grading: list[int] | None = None
    torus: np.ndarray | None = None
    provenance: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        L = self.algebra
        doc = {
            "field": {"k": L.field.k},
            "dim": L.dim,
            "labels": list(L.labels),
            "constants": [list(c) for c in L.constants()],
            "provenance": self.provenance,
        }
        if self.two_map is not None:
            doc["two_map"] = {"images": np.asarray(self.two_map.images).astype(int).tolist()}
        if self.cartan is not None:
            doc["cartan"] = self.cartan.basis.astype(int).tolist()
        if self.grading is not None:
            doc["grading"] = [int(g) for g in self.grading]
        if self.torus is not None:
            doc["torus"] = np.asarray(self.torus).astype(int).tolist()
        return doc

    def dumps(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> "AlgebraDescriptor":
        try:
            F = field_make(int(doc["field"]["k"]))
            n = int(doc["dim"])
            L = LieAlgebra.from_constants(F, n, doc["constants"], doc.get("labels"))
        except (KeyError, TypeError) as exc:
            raise DescriptorError(f"malformed descriptor: {exc}") from None
        tm = cartan = torus = None
        if "two_map" in doc:
            tm = TwoMap(np.asarray(doc["two_map"]["images"], dtype=F.dtype).reshape(n, n))
        if "cartan" in doc:
            cartan = Subspace.span(F, np.asarray(doc["cartan"], dtype=F.dtype).reshape(-1, n), n)
        if "torus" in doc:
            torus = np.asarray(doc["torus"], dtype=F.dtype).reshape(-1, n)
        grading = doc.get("grading")
        if grading is not None:
            L.grading = list(grading)
        return cls(L, tm, cartan, grading, torus, doc.get("provenance", {}))

    @classmethod
    def loads(cls, text: str) -> "AlgebraDescriptor":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"not valid JSON: {exc}") from None
        return cls.from_dict(doc)


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def provenance(constructor: str, **params) -> dict:
    return {"constructor": constructor, "params": params, "version": __version__}


def save(desc: AlgebraDescriptor, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(desc.dumps())


def load(path) -> AlgebraDescriptor:
    with open(path, encoding="utf-8") as fh:
        return AlgebraDescriptor.loads(fh.read())

"""Backend selection for the hot GF(2) kernels.

The compiled extension is used when importable; set ``LIE2_PURE_PYTHON=1``
to force the pure-Python twins. ``BACKEND`` names the active choice.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

if os.environ.get("LIE2_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on build
        _impl = _kernels_py
        BACKEND = "python"


def words(n: int) -> int:
    return max(1, (n + 63) // 64)


def pack(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 array along its last axis into uint64 words."""
    bits = np.ascontiguousarray(bits, dtype=np.uint8)
    n = bits.shape[-1]
    w = words(n)
    pad = np.zeros(bits.shape[:-1] + (64 * w,), dtype=np.uint8)
    pad[..., :n] = bits
    packed = np.packbits(pad, axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def unpack(packed: np.ndarray, n: int) -> np.ndarray:
    packed = np.ascontiguousarray(packed, dtype=np.uint64)
    bits = np.unpackbits(packed.view(np.uint8), axis=-1, bitorder="little")
    return bits[..., :n]


def get_impl(backend: str | None = None):
    if backend is None:
        return _impl
    if backend == "python":
        return _kernels_py
    if backend == "compiled":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {backend!r}")


def rref_packed(M: np.ndarray, ncols: int, backend: str | None = None) -> list[int]:
    return list(get_impl(backend).rref_packed(M, ncols))


def spin_packed(cols: np.ndarray, seeds: np.ndarray, n: int, backend: str | None = None) -> np.ndarray:
    cols = np.ascontiguousarray(cols, dtype=np.uint64)
    seeds = np.ascontiguousarray(seeds, dtype=np.uint64).reshape(-1, cols.shape[2])
    return get_impl(backend).spin_packed(cols, seeds, n)


def closure_scan_gf2(cols: np.ndarray, n: int, backend: str | None = None) -> tuple[int, int]:
    cols = np.ascontiguousarray(cols, dtype=np.uint64).reshape(cols.shape[0], cols.shape[1])
    best, vec = get_impl(backend).closure_scan_gf2(cols, n)
    return int(best), int(vec)


def jacobi_scan(indptr, idx, val, n, mul, backend: str | None = None):
    return get_impl(backend).jacobi_scan(
        np.ascontiguousarray(indptr, dtype=np.int64),
        np.ascontiguousarray(idx, dtype=np.int64),
        np.ascontiguousarray(val, dtype=np.int64),
        n,
        np.ascontiguousarray(mul, dtype=np.uint16),
    )

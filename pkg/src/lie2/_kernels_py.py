"""Pure-Python twins of the compiled kernels (same signatures and results).

Packed uint64 arrays are converted to Python ints, which serve as
arbitrary-length bit rows.
"""

from __future__ import annotations

import numpy as np


def _to_ints(rows: np.ndarray) -> list[int]:
    return [int.from_bytes(r.tobytes(), "little") for r in rows]


def _from_ints(values: list[int], w: int) -> np.ndarray:
    out = np.zeros((len(values), w), dtype=np.uint64)
    for i, v in enumerate(values):
        out[i] = np.frombuffer(v.to_bytes(8 * w, "little"), dtype="<u8")
    return out


def rref_packed(M: np.ndarray, ncols: int) -> list[int]:
    w = M.shape[1]
    rows = _to_ints(M)
    pivots = []
    row = 0
    for c in range(ncols):
        if row == len(rows):
            break
        bit = 1 << c
        p = next((i for i in range(row, len(rows)) if rows[i] & bit), None)
        if p is None:
            continue
        rows[row], rows[p] = rows[p], rows[row]
        pr = rows[row]
        for i in range(len(rows)):
            if i != row and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(c)
        row += 1
    if len(rows):
        M[:] = _from_ints(rows, w)
    return pivots


def _spin_ints(cols: list[list[int]], seeds: list[int], n: int) -> list[int]:
    basis: list[int] = []
    pivrow: dict[int, int] = {}

    def reduce(y: int) -> int:
        while y:
            b = (y & -y).bit_length() - 1
            r = pivrow.get(b)
            if r is None:
                return y
            y ^= basis[r]
        return 0

    def add(y: int) -> None:
        pivrow[(y & -y).bit_length() - 1] = len(basis)
        basis.append(y)

    for s in seeds:
        y = reduce(s)
        if y:
            add(y)
    idx = 0
    while idx < len(basis) and len(basis) < n:
        x = basis[idx]
        for op in cols:
            y = 0
            word = x
            while word:
                low = word & -word
                y ^= op[low.bit_length() - 1]
                word ^= low
            y = reduce(y)
            if y:
                add(y)
                if len(basis) == n:
                    break
        idx += 1
    return basis


def spin_packed(cols: np.ndarray, seeds: np.ndarray, n: int) -> np.ndarray:
    w = cols.shape[2]
    ops = [_to_ints(c) for c in cols]
    basis = _spin_ints(ops, _to_ints(seeds), n)
    return _from_ints(basis, w)


def closure_scan_gf2(cols: np.ndarray, n: int) -> tuple[int, int]:
    if n > 63:
        raise ValueError("closure_scan_gf2 supports n <= 63")
    ops = [[int(x) for x in c] for c in cols]
    best, best_vec = n + 1, 0
    for v in range(1, 1 << n):
        d = len(_spin_ints(ops, [v], n))
        if d < best:
            best, best_vec = d, v
    return best, best_vec


def jacobi_scan(indptr, idx, val, n, mul):
    rows = []
    for p in range(n * n):
        lo, hi = int(indptr[p]), int(indptr[p + 1])
        rows.append([(int(idx[t]), int(val[t])) for t in range(lo, hi)])
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc: dict[int, int] = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, cv in rows[b * n + c]:
                        for r, dv in rows[a * n + m]:
                            acc[r] = acc.get(r, 0) ^ int(mul[cv, dv])
                if any(acc.values()):
                    return (i, j, k)
    return None

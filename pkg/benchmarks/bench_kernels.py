"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from lie2 import kernels
from lie2.chevalley import classical_quotient
from lie2.classical import build_classical
from lie2.field import field_make


def cases():
    rng = np.random.default_rng(0)
    bits = rng.integers(0, 2, (200, 200)).astype(np.uint8)
    packed = kernels.pack(bits)
    yield "rref_packed 200x200", lambda b: kernels.rref_packed(packed.copy(), 200, backend=b)

    L = classical_quotient("D5").algebra
    cols = kernels.pack(L.ad_matrices.transpose(0, 2, 1))
    seed = kernels.pack(np.eye(L.dim, dtype=np.uint8)[:1])
    yield f"spin_packed dim {L.dim}", lambda b: kernels.spin_packed(cols, seed, L.dim, backend=b)

    S = build_classical("sl", 3).algebra
    scols = kernels.pack(S.ad_matrices.transpose(0, 2, 1))
    yield f"closure_scan_gf2 dim {S.dim}", lambda b: kernels.closure_scan_gf2(scols, S.dim, backend=b)

    P = build_classical("psl", 4, 2).algebra
    F = field_make(2)
    els = np.arange(F.q)
    mul = F.mul_arr(els[:, None], els[None, :]).astype(np.uint16)
    indptr, idx, val = P.sparse_rows()
    yield f"jacobi_scan dim {P.dim} over GF(4)", lambda b: kernels.jacobi_scan(indptr, idx, val, P.dim, mul, backend=b)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    try:
        kernels.get_impl("compiled")
    except ImportError:
        raise SystemExit("compiled extension not built; run pip install -e . --no-build-isolation")
    print(f"{'kernel':36} {'compiled (ms)':>14} {'python (ms)':>12} {'speedup':>8}")
    for name, fn in cases():
        t = {}
        for backend in ("compiled", "python"):
            t[backend] = min(timeit.repeat(lambda: fn(backend), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:36} {t['compiled']:14.2f} {t['python']:12.2f} {t['python'] / t['compiled']:7.1f}x")


if __name__ == "__main__":
    main()

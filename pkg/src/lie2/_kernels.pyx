# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) kernels on bit-packed uint64 rows, plus a sparse Jacobi scan.

Bit j of a packed vector lives in word j // 64 at position j % 64.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, uint16_t

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil


def rref_packed(uint64_t[:, ::1] M, Py_ssize_t ncols):
    """Reduce M in place to reduced row-echelon form; return pivot columns."""
    cdef Py_ssize_t r = M.shape[0], w = M.shape[1]
    cdef Py_ssize_t row = 0, c, i, j, k, p
    cdef uint64_t bit, tmp
    pivots = []
    for c in range(ncols):
        if row == r:
            break
        k = c >> 6
        bit = (<uint64_t>1) << (c & 63)
        p = -1
        for i in range(row, r):
            if M[i, k] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != row:
            for j in range(w):
                tmp = M[p, j]
                M[p, j] = M[row, j]
                M[row, j] = tmp
        for i in range(r):
            if i != row and (M[i, k] & bit):
                for j in range(k, w):
                    M[i, j] ^= M[row, j]
        pivots.append(c)
        row += 1
    return pivots


cdef inline Py_ssize_t _reduce(uint64_t* y, uint64_t[:, ::1] basis,
                               Py_ssize_t* pivrow, Py_ssize_t w) nogil:
    """Reduce y against the semi-echelon basis; return new pivot or -1."""
    cdef Py_ssize_t k, j, b, pr
    for k in range(w):
        while y[k]:
            b = (k << 6) + __builtin_ctzll(y[k])
            pr = pivrow[b]
            if pr < 0:
                return b
            for j in range(k, w):
                y[j] ^= basis[pr, j]
    return -1


cdef inline void _apply(const uint64_t[:, :, ::1] cols, Py_ssize_t g,
                        uint64_t[:, ::1] basis, Py_ssize_t idx,
                        uint64_t* y, Py_ssize_t w) nogil:
    cdef Py_ssize_t k, j, col
    cdef uint64_t word
    for j in range(w):
        y[j] = 0
    for k in range(w):
        word = basis[idx, k]
        while word:
            col = (k << 6) + __builtin_ctzll(word)
            word &= word - 1
            for j in range(w):
                y[j] ^= cols[g, col, j]


def spin_packed(const uint64_t[:, :, ::1] cols, const uint64_t[:, ::1] seeds,
                Py_ssize_t n):
    """Smallest subspace containing the seeds and invariant under every operator.

    ``cols[g, j]`` is the packed image of the j-th unit vector under operator g.
    Returns a semi-echelon basis as a (d, w) array.
    """
    cdef Py_ssize_t G = cols.shape[0], w = cols.shape[2]
    cdef Py_ssize_t count = 0, idx, g, s, j, b
    out = np.zeros((n + 1, w), dtype=np.uint64)
    cdef uint64_t[:, ::1] basis = out
    piv = np.full(n, -1, dtype=np.intp)
    cdef Py_ssize_t[::1] pivrow = piv
    ybuf = np.zeros(w, dtype=np.uint64)
    cdef uint64_t[::1] y = ybuf
    for s in range(seeds.shape[0]):
        for j in range(w):
            y[j] = seeds[s, j]
        b = _reduce(&y[0], basis, &pivrow[0], w)
        if b >= 0:
            for j in range(w):
                basis[count, j] = y[j]
            pivrow[b] = count
            count += 1
    idx = 0
    while idx < count and count < n:
        for g in range(G):
            _apply(cols, g, basis, idx, &y[0], w)
            b = _reduce(&y[0], basis, &pivrow[0], w)
            if b >= 0:
                for j in range(w):
                    basis[count, j] = y[j]
                pivrow[b] = count
                count += 1
                if count == n:
                    break
        idx += 1
    return out[:count]


def closure_scan_gf2(const uint64_t[:, ::1] cols, Py_ssize_t n):
    """Spin every nonzero vector of GF(2)^n (n <= 63) under the operators.

    ``cols[g, j]`` is the single-word image of unit vector j under operator g.
    Returns (smallest closure dimension, a vector attaining it).
    """
    cdef Py_ssize_t G = cols.shape[0]
    cdef uint64_t v, y, word, total, best_vec = 0
    cdef Py_ssize_t best = n + 1, count, idx, g, b, col
    cdef uint64_t basis[64]
    cdef Py_ssize_t pivrow[64]
    if n > 63:
        raise ValueError("closure_scan_gf2 supports n <= 63")
    total = (<uint64_t>1) << n
    with nogil:
        for v in range(1, total):
            for b in range(n):
                pivrow[b] = -1
            basis[0] = v
            pivrow[__builtin_ctzll(v)] = 0
            count = 1
            idx = 0
            while idx < count and count < n:
                for g in range(G):
                    y = 0
                    word = basis[idx]
                    while word:
                        col = __builtin_ctzll(word)
                        word &= word - 1
                        y ^= cols[g, col]
                    while y:
                        b = __builtin_ctzll(y)
                        if pivrow[b] < 0:
                            break
                        y ^= basis[pivrow[b]]
                    if y:
                        basis[count] = y
                        pivrow[__builtin_ctzll(y)] = count
                        count += 1
                        if count == n:
                            break
                idx += 1
            if count < best:
                best = count
                best_vec = v
    return best, best_vec


def jacobi_scan(const int64_t[::1] indptr, const int64_t[::1] idx,
                const int64_t[::1] val, Py_ssize_t n,
                const uint16_t[:, ::1] mul):
    """First basis triple i<j<k violating Jacobi, or None.

    Row ``a * n + b`` of the CSR arrays holds the sparse bracket [b_a, b_b].
    ``mul`` is the field multiplication table.
    """
    cdef Py_ssize_t i, j, k, t, u, m, r, nt, a, b, c, term
    cdef int64_t cv
    acc_arr = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] acc = acc_arr
    touched_arr = np.zeros(64 * n + 16, dtype=np.intp)
    cdef Py_ssize_t[::1] touched = touched_arr
    cdef Py_ssize_t cap = touched.shape[0]
    cdef bint bad
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                nt = 0
                for term in range(3):
                    if term == 0:
                        a = i; b = j; c = k
                    elif term == 1:
                        a = j; b = k; c = i
                    else:
                        a = k; b = i; c = j
                    for t in range(indptr[b * n + c], indptr[b * n + c + 1]):
                        m = idx[t]
                        cv = val[t]
                        for u in range(indptr[a * n + m], indptr[a * n + m + 1]):
                            r = idx[u]
                            acc[r] ^= mul[cv, val[u]]
                            if nt < cap:
                                touched[nt] = r
                                nt += 1
                bad = False
                if nt >= cap:
                    for r in range(n):
                        if acc[r]:
                            bad = True
                        acc[r] = 0
                else:
                    for t in range(nt):
                        if acc[touched[t]]:
                            bad = True
                        acc[touched[t]] = 0
                if bad:
                    return (i, j, k)
    return None

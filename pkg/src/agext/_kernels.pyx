# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled enumeration kernels.

Syndromes are integers whose base-p digits add without carries.  They are
split into K chunks of ``c`` base-p digits each and added chunk-wise through
a (P*P)-entry table, P = p^c.
"""

import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange, parallel
from libc.stdlib cimport malloc, free
from libc.string cimport memset
from libc.stdint cimport uint64_t, uint32_t, int32_t, int64_t

cdef extern from *:
    """
    static inline void agext_atomic_or(unsigned long long *p, unsigned long long v) {
        __atomic_fetch_or(p, v, __ATOMIC_RELAXED);
    }
    static inline int agext_ctz(unsigned long long v) { return __builtin_ctzll(v); }
    static inline int agext_popcount(unsigned long long v) { return __builtin_popcountll(v); }
    """
    void agext_atomic_or(unsigned long long *p, unsigned long long v) nogil
    int agext_ctz(unsigned long long v) nogil
    int agext_popcount(unsigned long long v) nogil

DEF MAXK = 16
DEF MAXW = 64


# -- weight distribution ----------------------------------------------------

cdef void _wd_rec(int row, int k, int n, int q, const int32_t* G, const int32_t* add,
                  const int32_t* mul, int32_t* cw, int64_t* counts) noexcept nogil:
    cdef int a, j, wt
    cdef int32_t* cur = cw + row * n
    cdef int32_t* nxt = cw + (row + 1) * n
    cdef const int32_t* g = G + row * n
    cdef const int32_t* mrow
    for a in range(q):
        mrow = mul + a * q
        if row + 1 == k:
            wt = 0
            for j in range(n):
                if add[cur[j] * q + mrow[g[j]]] != 0:
                    wt += 1
            counts[wt] += 1
        else:
            for j in range(n):
                nxt[j] = add[cur[j] * q + mrow[g[j]]]
            _wd_rec(row + 1, k, n, q, G, add, mul, cw, counts)


def weight_distribution(G_in, add_in, mul_in, int q, int workers=1):
    """Weight counts of the row space of G (all q^k messages)."""
    cdef cnp.ndarray[int32_t, ndim=2, mode="c"] G = np.ascontiguousarray(G_in, dtype=np.int32)
    cdef cnp.ndarray[int32_t, ndim=2, mode="c"] addt = np.ascontiguousarray(add_in, dtype=np.int32)
    cdef cnp.ndarray[int32_t, ndim=2, mode="c"] mult = np.ascontiguousarray(mul_in, dtype=np.int32)
    cdef int k = G.shape[0]
    cdef int n = G.shape[1]
    cdef cnp.ndarray[int64_t, ndim=2, mode="c"] per = np.zeros((q, n + 1), dtype=np.int64)
    cdef int a0, j, wt
    cdef int32_t* cw
    cdef const int32_t* Gp = &G[0, 0] if k > 0 else NULL
    cdef const int32_t* ap = &addt[0, 0]
    cdef const int32_t* mp = &mult[0, 0]
    cdef int64_t* pp = &per[0, 0]
    if k == 0:
        out = np.zeros(n + 1, dtype=np.int64)
        out[0] = 1
        return out
    with nogil, parallel(num_threads=workers):
        cw = <int32_t*> malloc((k + 1) * n * sizeof(int32_t))
        for a0 in prange(q, schedule="dynamic"):
            for j in range(n):
                cw[n + j] = mp[a0 * q + Gp[j]]
            if k == 1:
                wt = 0
                for j in range(n):
                    if cw[n + j] != 0:
                        wt = wt + 1
                pp[a0 * (n + 1) + wt] += 1
            else:
                _wd_rec(1, k, n, q, Gp, ap, mp, cw, pp + a0 * (n + 1))
        free(cw)
    return per.sum(axis=0)


# -- covering radius --------------------------------------------------------

cdef inline uint64_t _combine(const uint32_t* acc, const uint64_t* PK, int K) noexcept nogil:
    cdef uint64_t s = 0
    cdef int k
    for k in range(K):
        s += acc[k] * PK[k]
    return s


cdef void _direct_rec(int d, int start, int w, int n, int qm1, int K,
                      const uint32_t* cols, const uint32_t* T, uint64_t P,
                      const uint64_t* PK, uint64_t* bitmap, bint atomic,
                      uint32_t* acc) noexcept nogil:
    cdef int j, v, kk
    cdef const uint32_t* c
    cdef uint32_t* cur = acc + d * K
    cdef uint32_t* nxt = acc + (d + 1) * K
    cdef uint64_t s
    for j in range(start, n - (w - d) + 1):
        for v in range(qm1):
            c = cols + (j * qm1 + v) * K
            if d + 1 == w:
                s = 0
                for kk in range(K):
                    s += T[cur[kk] * P + c[kk]] * PK[kk]
                if atomic:
                    agext_atomic_or(<unsigned long long*> &bitmap[s >> 6], (<uint64_t> 1) << (s & 63))
                else:
                    bitmap[s >> 6] |= (<uint64_t> 1) << (s & 63)
            else:
                for kk in range(K):
                    nxt[kk] = T[cur[kk] * P + c[kk]]
                _direct_rec(d + 1, j + 1, w, n, qm1, K, cols, T, P, PK, bitmap, atomic, acc)


def direct_level(uint64_t[::1] bitmap, uint32_t[:, :, ::1] cols, uint32_t[::1] T,
                 uint64_t P, uint64_t[::1] PK, int w, int workers=1):
    """Mark the syndrome of every weight-w error vector in ``bitmap``.

    cols[j, v] holds the chunked syndrome of (v+1)-th nonzero value at
    position j.
    """
    cdef int n = cols.shape[0]
    cdef int qm1 = cols.shape[1]
    cdef int K = cols.shape[2]
    cdef int j1, v, kk
    cdef uint32_t* acc
    cdef bint atomic = workers > 1
    cdef const uint32_t* cp = &cols[0, 0, 0]
    cdef const uint32_t* Tp = &T[0]
    cdef const uint64_t* PKp = &PK[0]
    cdef uint64_t* bp = &bitmap[0]
    cdef uint64_t s
    cdef const uint32_t* c
    if w < 1 or w > n or w > MAXW or K > MAXK:
        raise ValueError("bad level")
    with nogil, parallel(num_threads=workers):
        acc = <uint32_t*> malloc((w + 1) * K * sizeof(uint32_t))
        for j1 in prange(n - w + 1, schedule="dynamic"):
            for v in range(qm1):
                c = cp + (j1 * qm1 + v) * K
                if w == 1:
                    s = 0
                    for kk in range(K):
                        s = s + c[kk] * PKp[kk]
                    if atomic:
                        agext_atomic_or(<unsigned long long*> &bp[s >> 6], (<uint64_t> 1) << (s & 63))
                    else:
                        bp[s >> 6] |= (<uint64_t> 1) << (s & 63)
                else:
                    for kk in range(K):
                        acc[K + kk] = c[kk]
                    _direct_rec(1, j1 + 1, w, n, qm1, K, cp, Tp, P, PKp, bp, atomic, acc)
        free(acc)


cdef uint64_t _pull_word(uint64_t word, uint64_t inv, const uint64_t* covered,
                         const uint32_t* cols, int ncols, int K, const uint32_t* T,
                         uint64_t P, const uint64_t* PK) noexcept nogil:
    cdef uint64_t out = 0
    cdef uint64_t s, t, rest
    cdef uint32_t sc[MAXK]
    cdef int b, ci, kk
    cdef const uint32_t* c
    while inv:
        b = agext_ctz(inv)
        inv &= inv - 1
        rest = word * 64 + b
        for kk in range(K):
            sc[kk] = <uint32_t> (rest % P)
            rest = rest // P
        for ci in range(ncols):
            c = cols + ci * K
            t = 0
            for kk in range(K):
                t += T[sc[kk] * P + c[kk]] * PK[kk]
            if (covered[t >> 6] >> (t & 63)) & 1:
                out |= (<uint64_t> 1) << b
                break
    return out


def pull_level(const uint64_t[::1] covered, uint64_t[::1] new, uint32_t[:, ::1] cols,
               uint32_t[::1] T, uint64_t P, uint64_t[::1] PK, uint64_t nsyn, int workers=1):
    """new := uncovered syndromes with some neighbour s + col already covered."""
    cdef Py_ssize_t nwords = covered.shape[0]
    cdef Py_ssize_t wi
    cdef int ncols = cols.shape[0]
    cdef int K = cols.shape[1]
    cdef uint64_t inv
    cdef uint64_t tailmask
    cdef const uint64_t* cov = &covered[0]
    cdef uint64_t* nw = &new[0]
    cdef const uint32_t* cp = &cols[0, 0]
    cdef const uint32_t* Tp = &T[0]
    cdef const uint64_t* PKp = &PK[0]
    if K > MAXK:
        raise ValueError("too many chunks")
    if nsyn % 64:
        tailmask = ((<uint64_t> 1) << (nsyn % 64)) - 1
    else:
        tailmask = ~(<uint64_t> 0)
    with nogil:
        for wi in prange(nwords, schedule="dynamic", chunksize=256, num_threads=workers):
            inv = ~cov[wi]
            if wi == nwords - 1:
                inv = inv & tailmask
            if inv:
                nw[wi] = _pull_word(<uint64_t> wi, inv, cov, cp, ncols, K, Tp, P, PKp)
            else:
                nw[wi] = 0


def popcount(const uint64_t[::1] bits):
    cdef Py_ssize_t i
    cdef uint64_t total = 0
    with nogil:
        for i in range(bits.shape[0]):
            total += agext_popcount(bits[i])
    return total

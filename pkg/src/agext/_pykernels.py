"""Numpy implementations of the enumeration kernels.

Same signatures and results as the compiled ``_kernels`` module; used when
the extension is not built or ``AGEXT_PURE_PYTHON=1`` is set.  The
``workers`` arguments are accepted and ignored.
"""

from __future__ import annotations

import itertools

import numpy as np

_BLOCK = 1 << 16


def weight_distribution(G, add, mul, q, workers=1):
    G = np.asarray(G, dtype=np.int64)
    add = np.asarray(add, dtype=np.int64)
    mul = np.asarray(mul, dtype=np.int64)
    k, n = G.shape
    counts = np.zeros(n + 1, dtype=np.int64)
    if k == 0:
        counts[0] = 1
        return counts
    # expand the first rows into a table of codewords, stream over the rest
    split = 0
    size = 1
    while split < k and size * q * n <= 1 << 22:
        split += 1
        size *= q
    base = np.zeros((1, n), dtype=np.int64)
    for i in range(split):
        scaled = mul[:, G[i]]                       # (q, n)
        base = add[base[None, :, :], scaled[:, None, :]].reshape(-1, n)
    rest = G[split:]
    for coeffs in itertools.product(range(q), repeat=k - split):
        offset = np.zeros(n, dtype=np.int64)
        for c, row in zip(coeffs, rest):
            if c:
                offset = add[offset, mul[c, row]]
        words = add[base, offset[None, :]]
        counts += np.bincount(np.count_nonzero(words, axis=1), minlength=n + 1)
    return counts


def _set_bits(bitmap, idx):
    idx = np.asarray(idx, dtype=np.uint64)
    if idx.size == 0:
        return
    np.bitwise_or.at(bitmap, (idx >> np.uint64(6)).astype(np.int64),
                     np.left_shift(np.uint64(1), idx & np.uint64(63)))


def _get_bits(bitmap, idx):
    idx = np.asarray(idx, dtype=np.uint64)
    words = bitmap[(idx >> np.uint64(6)).astype(np.int64)]
    return ((words >> (idx & np.uint64(63))) & np.uint64(1)).astype(bool)


def _chunk_add(T, P, a, b):
    return T[a.astype(np.int64) * P + b.astype(np.int64)]


def _combine(chunks, PK):
    s = np.zeros(chunks.shape[:-1], dtype=np.uint64)
    for k in range(chunks.shape[-1]):
        s += chunks[..., k].astype(np.uint64) * np.uint64(PK[k])
    return s


def direct_level(bitmap, cols, T, P, PK, w, workers=1):
    cols = np.asarray(cols, dtype=np.int64)
    T = np.asarray(T, dtype=np.int64)
    n, qm1, K = cols.shape
    P = int(P)
    for support in itertools.combinations(range(n), w):
        acc = np.zeros((1, K), dtype=np.int64)
        for j in support:
            acc = _chunk_add(T, P, acc[:, None, :], cols[j][None, :, :]).reshape(-1, K)
        _set_bits(bitmap, _combine(acc, PK))


def _unset_indices(covered, nsyn, start, stop):
    words = covered[start:stop]
    bits = np.unpackbits((~words).view(np.uint8), bitorder="little")
    idx = np.nonzero(bits)[0].astype(np.uint64) + np.uint64(start * 64)
    return idx[idx < np.uint64(nsyn)]


def pull_level(covered, new, cols, T, P, PK, nsyn, workers=1):
    cols = np.asarray(cols, dtype=np.int64)
    T = np.asarray(T, dtype=np.int64)
    P = int(P)
    K = cols.shape[1]
    new[:] = 0
    nwords = covered.shape[0]
    step = max(1, _BLOCK // 64)
    for start in range(0, nwords, step):
        idx = _unset_indices(covered, nsyn, start, min(nwords, start + step))
        if idx.size == 0:
            continue
        rest = idx.copy()
        sc = np.empty((idx.size, K), dtype=np.int64)
        for k in range(K):
            sc[:, k] = (rest % np.uint64(P)).astype(np.int64)
            rest //= np.uint64(P)
        hit = np.zeros(idx.size, dtype=bool)
        for c in cols:
            todo = ~hit
            if not todo.any():
                break
            t = _combine(_chunk_add(T, P, sc[todo], c[None, :]), PK)
            found = _get_bits(covered, t)
            hit[np.nonzero(todo)[0][found]] = True
        _set_bits(new, idx[hit])


def popcount(bits):
    return int(np.unpackbits(np.asarray(bits).view(np.uint8)).sum())

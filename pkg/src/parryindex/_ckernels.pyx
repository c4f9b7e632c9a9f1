# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled suffix-structure kernels; contracts match ``_pykernels``."""

import numpy as np

ctypedef long long idx_t


def suffix_array(text):
    """Suffix array and its inverse by prefix doubling with counting sort."""
    cdef const unsigned char[::1] t = np.ascontiguousarray(text, dtype=np.uint8)
    cdef Py_ssize_t n = t.shape[0]
    sa_arr = np.zeros(n, dtype=np.int64)
    rank_arr = np.zeros(n, dtype=np.int64)
    if n == 0:
        return sa_arr, rank_arr
    tmp_arr = np.zeros(n, dtype=np.int64)
    sa2_arr = np.zeros(n, dtype=np.int64)
    cnt_arr = np.zeros(max(n, 256) + 1, dtype=np.int64)
    cdef idx_t[::1] sa = sa_arr
    cdef idx_t[::1] rank = rank_arr
    cdef idx_t[::1] tmp = tmp_arr
    cdef idx_t[::1] sa2 = sa2_arr
    cdef idx_t[::1] cnt = cnt_arr
    cdef Py_ssize_t i, j, pos, k
    cdef idx_t classes, r1c, r1p, r2c, r2p, cur, prev

    # first round: counting sort on the symbols themselves
    for i in range(n):
        cnt[t[i]] += 1
    for i in range(1, 256):
        cnt[i] += cnt[i - 1]
    for i in range(n - 1, -1, -1):
        cnt[t[i]] -= 1
        sa[cnt[t[i]]] = i
    classes = 1
    rank[sa[0]] = 0
    for j in range(1, n):
        if t[sa[j]] != t[sa[j - 1]]:
            classes += 1
        rank[sa[j]] = classes - 1

    k = 1
    while classes < n:
        # order by second key: suffixes with nothing at offset k come first
        pos = 0
        for i in range(n - k, n):
            sa2[pos] = i
            pos += 1
        for j in range(n):
            if sa[j] >= k:
                sa2[pos] = sa[j] - k
                pos += 1
        # stable counting sort by first key
        for i in range(classes + 1):
            cnt[i] = 0
        for i in range(n):
            cnt[rank[i]] += 1
        for i in range(1, classes):
            cnt[i] += cnt[i - 1]
        for j in range(n - 1, -1, -1):
            cur = sa2[j]
            cnt[rank[cur]] -= 1
            sa[cnt[rank[cur]]] = cur
        tmp[sa[0]] = 0
        classes = 1
        for j in range(1, n):
            cur = sa[j]
            prev = sa[j - 1]
            r1c = rank[cur]
            r1p = rank[prev]
            r2c = rank[cur + k] if cur + k < n else -1
            r2p = rank[prev + k] if prev + k < n else -1
            if r1c != r1p or r2c != r2p:
                classes += 1
            tmp[cur] = classes - 1
        for i in range(n):
            rank[i] = tmp[i]
        k <<= 1
    return sa_arr, rank_arr


def lcp_array(text, sa_in, rank_in):
    """Kasai: ``lcp[r]`` is the common prefix of suffixes ``sa[r-1]`` and ``sa[r]``."""
    cdef const unsigned char[::1] t = np.ascontiguousarray(text, dtype=np.uint8)
    cdef const idx_t[::1] sa = np.ascontiguousarray(sa_in, dtype=np.int64)
    cdef const idx_t[::1] rank = np.ascontiguousarray(rank_in, dtype=np.int64)
    cdef Py_ssize_t n = t.shape[0]
    out = np.zeros(n, dtype=np.int64)
    cdef idx_t[::1] lcp = out
    cdef Py_ssize_t i, j, h = 0
    cdef idx_t r
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and t[i + h] == t[j + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1
    return out


def lyndon_array(rank_in):
    """Longest Lyndon word at each position via next-smaller-suffix."""
    cdef const idx_t[::1] rank = np.ascontiguousarray(rank_in, dtype=np.int64)
    cdef Py_ssize_t n = rank.shape[0]
    out = np.zeros(n, dtype=np.int64)
    stack_arr = np.zeros(n + 1, dtype=np.int64)
    cdef idx_t[::1] lyn = out
    cdef idx_t[::1] stack = stack_arr
    cdef Py_ssize_t i, top = 0
    cdef idx_t ri
    for i in range(n - 1, -1, -1):
        ri = rank[i]
        while top > 0 and rank[stack[top - 1]] > ri:
            top -= 1
        lyn[i] = (stack[top - 1] if top > 0 else n) - i
        stack[top] = i
        top += 1
    return out

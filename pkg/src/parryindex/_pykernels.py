"""Pure Python / numpy versions of the suffix-structure kernels.

Same contracts as the compiled ``_ckernels`` module; used when the extension
is not built or when ``PARRYINDEX_PURE_PYTHON`` is set.
"""

import numpy as np


def suffix_array(text):
    """Suffix array and inverse suffix array of a uint8 array.

    A proper prefix sorts before its extensions.  Prefix doubling, each round
    a stable argsort on combined (rank, next rank) keys.
    """
    text = np.asarray(text, dtype=np.uint8)
    n = text.shape[0]
    if n == 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    sa = np.argsort(text, kind="stable").astype(np.int64)
    key = text[sa].astype(np.int64)
    rank = np.empty(n, np.int64)
    rank[sa] = np.concatenate(([0], np.cumsum(key[1:] != key[:-1])))
    k = 1
    while rank[sa[-1]] < n - 1:
        second = np.zeros(n, np.int64)
        second[: n - k] = rank[k:] + 1 if k < n else 0
        key = rank * (n + 1) + second
        sa = np.argsort(key, kind="stable").astype(np.int64)
        sorted_key = key[sa]
        rank = np.empty(n, np.int64)
        rank[sa] = np.concatenate(([0], np.cumsum(sorted_key[1:] != sorted_key[:-1])))
        k *= 2
    return sa, rank


def lcp_array(text, sa, rank):
    """Kasai: ``lcp[r]`` is the common prefix of suffixes ``sa[r-1]`` and ``sa[r]``."""
    data = bytes(np.asarray(text, dtype=np.uint8))
    sa = sa.tolist()
    rank = rank.tolist()
    n = len(data)
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and data[i + h] == data[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return np.asarray(lcp, dtype=np.int64)


def lyndon_array(rank):
    """Length of the longest Lyndon word starting at each position.

    That word ends where the next lexicographically smaller suffix starts.
    """
    rank = rank.tolist()
    n = len(rank)
    out = [0] * n
    stack = []
    for i in range(n - 1, -1, -1):
        ri = rank[i]
        while stack and rank[stack[-1]] > ri:
            stack.pop()
        out[i] = (stack[-1] if stack else n) - i
        stack.append(i)
    return np.asarray(out, dtype=np.int64)

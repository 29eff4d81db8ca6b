"""Suffix-array internals shared by the repeat index.

Generalized over integer sequences: hosts are concatenated with unique
negative sentinels, so no repeat ever spans a host boundary and every suffix
is distinct. The kernels are numba-compiled; they are the hot path of every
construction iteration (the index is rebuilt from scratch each round).

lcp[p] = longest common prefix of suffixes sa[p-1] and sa[p]; lcp[0] = 0.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _suffix_array(a):
    n = a.shape[0]
    order = np.argsort(a)
    rank = np.empty(n, np.int64)
    r = 0
    rank[order[0]] = 0
    for i in range(1, n):
        if a[order[i]] != a[order[i - 1]]:
            r += 1
        rank[order[i]] = r
    sa = order
    tmp = np.empty(n, np.int64)
    cnt = np.empty(n + 2, np.int64)
    k = 1
    while r < n - 1:
        # sort by (rank[i], rank[i+k]) with two stable counting passes
        p = 0
        for i in range(n - k, n):
            tmp[p] = i  # empty second key sorts first
            p += 1
        for j in range(n):
            i = sa[j]
            if i >= k:
                tmp[p] = i - k
                p += 1
        for i in range(r + 2):
            cnt[i] = 0
        for i in range(n):
            cnt[rank[i] + 1] += 1
        for i in range(1, r + 2):
            cnt[i] += cnt[i - 1]
        for j in range(n):
            i = tmp[j]
            sa[cnt[rank[i]]] = i
            cnt[rank[i]] += 1
        newrank = np.empty(n, np.int64)
        r = 0
        newrank[sa[0]] = 0
        for j in range(1, n):
            cur = sa[j]
            prev = sa[j - 1]
            same = rank[cur] == rank[prev]
            if same:
                c2 = rank[cur + k] if cur + k < n else -1
                p2 = rank[prev + k] if prev + k < n else -1
                same = c2 == p2
            if not same:
                r += 1
            newrank[cur] = r
        rank = newrank
        k <<= 1
    return sa, rank


@njit(cache=True)
def _kasai(a, sa, rank):
    n = a.shape[0]
    lcp = np.zeros(n, np.int64)
    h = 0
    for i in range(n):
        ri = rank[i]
        if ri > 0:
            j = sa[ri - 1]
            lim = n - (i if i > j else j)
            while h < lim and a[i + h] == a[j + h]:
                h += 1
            lcp[ri] = h
            if h > 0:
                h -= 1
        else:
            h = 0
    return lcp


@njit(cache=True)
def _lcp_intervals(lcp):
    """Enumerate lcp intervals with value >= 2: each is a maximal run of
    suffixes sharing a prefix of exactly that (right-maximal) length.
    Returns (values, left bounds, right bounds) over suffix-array positions.
    """
    n = lcp.shape[0]
    vals = np.empty(n, np.int64)
    lbs = np.empty(n, np.int64)
    rbs = np.empty(n, np.int64)
    m = 0
    stk_v = np.empty(n + 2, np.int64)
    stk_l = np.empty(n + 2, np.int64)
    top = 0
    stk_v[0] = 0
    stk_l[0] = 0
    for i in range(1, n + 1):
        v = lcp[i] if i < n else 0
        lb = i - 1
        while v < stk_v[top]:
            tv = stk_v[top]
            tlb = stk_l[top]
            top -= 1
            if tv >= 2:
                vals[m] = tv
                lbs[m] = tlb
                rbs[m] = i - 1
                m += 1
            lb = tlb
        if v > stk_v[top]:
            top += 1
            stk_v[top] = v
            stk_l[top] = lb
    return vals[:m], lbs[:m], rbs[:m]


def suffix_array_lcp(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Suffix array and adjacent-LCP array of an int64 sequence."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.shape[0] == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    sa, rank = _suffix_array(a)
    lcp = _kasai(a, sa, rank)
    return sa, lcp


def lcp_intervals(lcp: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if lcp.shape[0] == 0:
        z = np.empty(0, np.int64)
        return z, z.copy(), z.copy()
    return _lcp_intervals(np.ascontiguousarray(lcp, dtype=np.int64))

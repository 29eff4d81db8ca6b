"""Independent brute-force references.

Deliberately naive: quadratic scans, exhaustive path walks, subset
enumeration. Tests compare the package's implementations against these on
inputs small enough for the naive versions to finish.
"""
from __future__ import annotations

from itertools import combinations


def suffix_array_naive(seq):
    return sorted(range(len(seq)), key=lambda i: tuple(seq[i:]))


def lcp_array_naive(seq, sa):
    if not sa:
        return []

    def common(i, j):
        k = 0
        while i + k < len(seq) and j + k < len(seq) and seq[i + k] == seq[j + k]:
            k += 1
        return k

    return [0] + [common(sa[i - 1], sa[i]) for i in range(1, len(sa))]


def overlapping_count(hosts, seq):
    """Occurrences of seq across hosts, overlaps included."""
    seq = tuple(seq)
    m = len(seq)
    count = 0
    for h in hosts:
        for i in range(len(h) - m + 1):
            if tuple(h[i : i + m]) == seq:
                count += 1
    return count


def ltr_occurrences(host, seq):
    """1-based starts of left-to-right non-overlapping occurrences."""
    seq = tuple(seq)
    m = len(seq)
    out = []
    i = 0
    while i + m <= len(host):
        if tuple(host[i : i + m]) == seq:
            out.append(i + 1)
            i += m
        else:
            i += 1
    return out


def best_saving_naive(hosts):
    """Max (count-1)*(length-1) over sequences of length >= 2 that occur
    at least twice (overlaps included); returns (saving, argmax set)."""
    best = 0
    arg = set()
    seen = set()
    for h in hosts:
        n = len(h)
        for i in range(n):
            for m in range(2, n - i + 1):
                s = tuple(h[i : i + m])
                if s in seen:
                    continue
                seen.add(s)
                c = overlapping_count(hosts, s)
                if c < 2:
                    continue
                v = (c - 1) * (m - 1)
                if v > best:
                    best, arg = v, {s}
                elif v == best:
                    arg.add(s)
    return best, arg


def enumerate_paths(dag):
    """Every source-to-target derivation path as a node tuple, one per
    distinct edge choice (multi-edges give multiple paths)."""
    paths = []

    def expand(v, acc):
        n = dag.nodes[v]
        if not n.in_ids:
            paths.append(acc + (v,))
            return
        for u in n.in_ids:
            expand(u, acc + (v,))

    for t in dag.target_ids:
        expand(t, ())
    return paths


def min_parse_length(w, pieces):
    """Fewest tokens spelling w from single symbols plus the given pieces."""
    w = tuple(w)
    n = len(w)
    dp = [0] + [n + 1] * n
    for i in range(1, n + 1):
        dp[i] = dp[i - 1] + 1
        for p in pieces:
            m = len(p)
            if m <= i and w[i - m : i] == p:
                dp[i] = min(dp[i], dp[i - m] + 1)
    return dp[n]


def repeated_substrings(targets):
    """Substrings of length >= 2 with >= 2 non-overlapping occurrences
    across the targets: every string an optimal DAG could use."""
    cands = set()
    for t in targets:
        n = len(t)
        for i in range(n):
            for m in range(2, n - i + 1):
                cands.add(tuple(t[i : i + m]))
    return sorted(
        s for s in cands if sum(len(ltr_occurrences(t, s)) for t in targets) >= 2
    )


def optimal_edge_cost(targets, max_candidates=18):
    """Exhaustive minimum edge cost over all subsets of usable strings,
    scoring a subset by optimally parsing the targets and each chosen
    string from the others. A DAG's edge cost is such a parse cost, and a
    parse solution becomes a valid DAG after inlining under-used pieces at
    no extra cost, so the minimum over subsets is the optimal edge cost."""
    cands = repeated_substrings(targets)
    if len(cands) > max_candidates:
        raise ValueError(f"{len(cands)} candidates, too many to enumerate")
    best = sum(len(t) for t in targets)
    for k in range(1, len(cands) + 1):
        for chosen in combinations(cands, k):
            cost = 0
            for w in targets:
                cost += min_parse_length(w, chosen)
            for w in chosen:
                others = tuple(p for p in chosen if p != w)
                cost += min_parse_length(w, others)
            if cost < best:
                best = cost
    return best


def expand_tokens(seq, dictionary, ref_base):
    """Recursive dictionary expansion, the reference for decode()."""
    out = []
    for tok in seq:
        if tok >= ref_base:
            out.extend(expand_tokens(dictionary[tok - ref_base], dictionary, ref_base))
        else:
            out.append(tok)
    return tuple(out)

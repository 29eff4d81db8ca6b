"""Repeat index over the in-sequences of a DAG.

Built fresh each construction iteration; substitutions invalidate enough
of the structure that incremental maintenance is not worth its
complexity here. The index answers two questions:

* which right-maximal repeated sequences exist, with *overlapping*
  occurrence counts (that is what the saving estimate uses), and
* where a given sequence occurs, filtered to left-to-right non-overlapping
  positions per host.

Candidates are ranked by saved cost (count-1)*(length-1), ties broken by
longer sequence, then lexicographically smaller node-id sequence. The
longest-repeat ranking (for the baseline builder) orders by length, then
lexicographically.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import chain
from typing import Iterator, Sequence

import numpy as np

from ._suffix import lcp_intervals, suffix_array_lcp
from .dag import SOURCE, LexisDag, NodeId


@dataclass(frozen=True)
class RepeatCandidate:
    seq: tuple[NodeId, ...]
    count: int  # overlapping occurrences across all hosts
    saved_cost: int

    def __len__(self) -> int:
        return len(self.seq)


@dataclass(frozen=True)
class OccurrenceList:
    host: NodeId
    positions: tuple[int, ...]  # 1-based starts in I(host), ascending, non-overlapping


class RepeatIndex:
    """Snapshot suffix structure over host sequences (id order)."""

    def __init__(self, pairs: Sequence[tuple[NodeId, Sequence[NodeId]]]):
        self.host_ids: list[NodeId] = [h for h, _ in pairs]
        starts = []
        lens = []
        parts = []
        pos = 0
        for k, (_, seq) in enumerate(pairs):
            starts.append(pos)
            lens.append(len(seq))
            parts.append(seq)
            parts.append((-(k + 1),))  # unique sentinel per host
            pos += len(seq) + 1
        total = pos
        self.cat = np.fromiter(chain.from_iterable(parts), dtype=np.int64, count=total)
        self.starts = np.asarray(starts, dtype=np.int64)
        self.lens = np.asarray(lens, dtype=np.int64)
        self.sa, self.lcp = suffix_array_lcp(self.cat)
        self.vals, self.lbs, self.rbs = lcp_intervals(self.lcp)
        self.counts = self.rbs - self.lbs + 1
        self.saved = (self.counts - 1) * (self.vals - 1)

    def __len__(self) -> int:
        return int(self.vals.shape[0])

    def seq_at(self, interval: int) -> tuple[NodeId, ...]:
        p = int(self.sa[self.lbs[interval]])
        v = int(self.vals[interval])
        return tuple(int(x) for x in self.cat[p : p + v])

    def candidate(self, interval: int) -> RepeatCandidate:
        return RepeatCandidate(
            self.seq_at(interval),
            int(self.counts[interval]),
            int(self.saved[interval]),
        )


def build_index(dag: LexisDag) -> RepeatIndex:
    """Index the in-sequences of every alive non-source node."""
    pairs = [(n.id, n.in_ids) for n in dag.alive_nodes() if n.kind != SOURCE]
    return RepeatIndex(pairs)


def _ranked(index: RepeatIndex, primary: np.ndarray, secondary: np.ndarray) -> Iterator[int]:
    """Interval ids ordered by (primary desc, secondary desc, sequence asc)."""
    if len(index) == 0:
        return
    order = np.lexsort((-secondary, -primary))
    i = 0
    n = order.shape[0]
    while i < n:
        j = i
        p, s = primary[order[i]], secondary[order[i]]
        while j < n and primary[order[j]] == p and secondary[order[j]] == s:
            j += 1
        group = sorted((index.seq_at(int(t)), int(t)) for t in order[i:j])
        for _, t in group:
            yield t
        i = j


def ranked_by_saving(index: RepeatIndex) -> Iterator[RepeatCandidate]:
    """All candidates with saved cost >= 1, best saving first."""
    for t in _ranked(index, index.saved, index.vals):
        if index.saved[t] >= 1:
            yield index.candidate(t)


def ranked_by_length(index: RepeatIndex) -> Iterator[RepeatCandidate]:
    """All candidates, longest first (the longest-repeat baseline order)."""
    dummy = np.zeros(len(index), dtype=np.int64)
    yield from (index.candidate(t) for t in _ranked(index, index.vals, dummy))


def best_candidate(index: RepeatIndex) -> RepeatCandidate | None:
    """Highest-saving candidate, or None when nothing saves anything
    (no repeat of length >= 2 occurring >= 2 times)."""
    if len(index) == 0:
        return None
    # combined argmax avoids sorting the whole interval set in the common case
    span = int(index.vals.max()) + 1
    key = index.saved * span + index.vals
    top = int(key.max())
    if index.saved[int(np.argmax(key))] < 1:
        return None
    tied = np.flatnonzero(key == top)
    t = min(int(i) for i in tied) if tied.shape[0] == 1 else None
    if t is None:
        t = min((index.seq_at(int(i)), int(i)) for i in tied)[1]
    return index.candidate(t)


def _compare(index: RepeatIndex, p: int, arr: np.ndarray) -> int:
    """Lexicographic compare of cat[p:p+len(arr)] against arr (-1/0/1).
    Sentinels are negative and arr entries are node ids >= 0, so a window
    that runs into a host boundary compares smaller."""
    w = index.cat[p : p + arr.shape[0]]
    if w.shape[0] < arr.shape[0]:
        ww = np.full(arr.shape[0], -(2**62), dtype=np.int64)
        ww[: w.shape[0]] = w
        w = ww
    diff = np.flatnonzero(w != arr)
    if diff.shape[0] == 0:
        return 0
    d = diff[0]
    return -1 if w[d] < arr[d] else 1


def nonoverlapping_occurrences(
    index: RepeatIndex, seq: Sequence[NodeId]
) -> list[OccurrenceList]:
    """Left-to-right greedy non-overlapping occurrences of seq, per host,
    hosts in id order. Positions are 1-based."""
    m = len(seq)
    if m == 0:
        return []
    arr = np.asarray(seq, dtype=np.int64)
    n = index.sa.shape[0]

    lo, hi = 0, n
    while lo < hi:  # first suffix >= seq
        mid = (lo + hi) // 2
        if _compare(index, int(index.sa[mid]), arr) < 0:
            lo = mid + 1
        else:
            hi = mid
    first = lo
    hi = n
    while lo < hi:  # first suffix > seq-prefixed
        mid = (lo + hi) // 2
        if _compare(index, int(index.sa[mid]), arr) <= 0:
            lo = mid + 1
        else:
            hi = mid
    if first == lo:
        return []

    positions = np.sort(index.sa[first:lo])
    hidx = np.searchsorted(index.starts, positions, side="right") - 1
    per_host: dict[int, list[int]] = {}
    for p, h in zip(positions.tolist(), hidx.tolist()):
        per_host.setdefault(h, []).append(p - int(index.starts[h]))
    out = []
    for h in sorted(per_host):
        picked = []
        nxt = 0
        for p in per_host[h]:
            if p >= nxt:
                picked.append(p + 1)
                nxt = p + m
        out.append(OccurrenceList(index.host_ids[h], tuple(picked)))
    return out

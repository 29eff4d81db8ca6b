"""Dictionary compression on top of a Lexis-DAG.

Two routes to a dictionary:

* the DAG itself: intermediates are the dictionary, targets become streams
  of references, and the compressed size is exactly the DAG's edge cost;
* greedy left-to-right substitution ("LR"): given a candidate pool, keep
  substituting the candidate with the best immediate gain until nothing
  gains. Candidate pools come from a built DAG's node strings or from raw
  n-grams, which makes the two pools comparable under the same encoder.

Token values below REF_BASE are alphabet symbols; values at or above it
are dictionary references (REF_BASE + entry index). Dictionary entries are
always flat symbol strings, so decoding is a single expansion pass.

Counting and substitution run on one-codepoint-per-token strings, so the
left-to-right non-overlapping semantics are exactly those of str.count and
str.replace.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import Corpus, SymbolId
from .dag import LexisDag
from .errors import InvalidArgument

REF_BASE = 0x100000  # first codepoint after the symbol range

_MAX_REFS = 0x10FFFF - REF_BASE


def _ref(k: int) -> str:
    if k >= _MAX_REFS:
        raise InvalidArgument(f"dictionary overflow: more than {_MAX_REFS} entries")
    return chr(REF_BASE + k)


def _encode(seq: Iterable[int]) -> str:
    return "".join(chr(s) for s in seq)


def _decode(text: str) -> tuple[int, ...]:
    return tuple(ord(c) for c in text)


@dataclass(frozen=True)
class CompressionResult:
    method: str
    original_size: int  # symbols in the corpus
    dictionary_size: int  # tokens across dictionary entries
    encoded_size: int  # tokens across encoded targets
    dictionary: tuple[tuple[int, ...], ...]
    encoded: tuple[tuple[int, ...], ...]

    @property
    def compressed_size(self) -> int:
        return self.dictionary_size + self.encoded_size

    @property
    def ratio(self) -> float:
        """Compressed size as a percentage of the original."""
        return 100.0 * self.compressed_size / self.original_size


def decode(result: CompressionResult) -> tuple[tuple[SymbolId, ...], ...]:
    """Expand encoded targets back to symbol strings. The inverse of both
    compressors; round-tripping is the correctness test."""

    def expand(seq: Sequence[int]) -> tuple[SymbolId, ...]:
        out: list[SymbolId] = []
        for tok in seq:
            if tok >= REF_BASE:
                out.extend(expand(result.dictionary[tok - REF_BASE]))
            else:
                out.append(tok)
        return tuple(out)

    return tuple(expand(seq) for seq in result.encoded)


def compress_via_dag(dag: LexisDag) -> CompressionResult:
    """Read the DAG as a dictionary: one entry per intermediate, targets
    as reference streams. Compressed size equals the edge cost."""
    inter = dag.intermediates()
    ref_of = {v: REF_BASE + k for k, v in enumerate(inter)}
    if len(inter) > _MAX_REFS:
        raise InvalidArgument(f"dictionary overflow: more than {_MAX_REFS} entries")

    def tokens(v: int) -> tuple[int, ...]:
        return tuple(ref_of.get(u, u) for u in dag.in_seq(v))

    dictionary = tuple(tokens(v) for v in inter)
    encoded = tuple(tokens(t) for t in dag.target_ids)
    return CompressionResult(
        method="dag",
        original_size=sum(len(dag.string_of(t)) for t in dag.target_ids),
        dictionary_size=sum(len(e) for e in dictionary),
        encoded_size=sum(len(e) for e in encoded),
        dictionary=dictionary,
        encoded=encoded,
    )


def lexis_node_candidates(dag: LexisDag) -> list[tuple[SymbolId, ...]]:
    """Distinct intermediate strings of a built DAG, the natural candidate
    pool for the LR encoder."""
    return sorted({dag.string_of(v) for v in dag.intermediates()})


def ngram_candidates(corpus: Corpus, orders: Sequence[int] = (2, 3)) -> list[tuple[SymbolId, ...]]:
    """Distinct n-grams of the given orders appearing anywhere in the corpus."""
    if any(k < 2 for k in orders):
        raise InvalidArgument(f"n-gram orders must be >= 2, got {tuple(orders)}")
    grams: set[tuple[SymbolId, ...]] = set()
    for t in corpus.targets:
        for k in orders:
            for i in range(len(t) - k + 1):
                grams.add(t[i : i + k])
    return sorted(grams)


def compress_lr(
    corpus: Corpus,
    candidates: Iterable[Sequence[SymbolId]],
    method: str = "lr",
) -> CompressionResult:
    """Greedy dictionary build: repeatedly pick the candidate whose
    substitution gains the most and rewrite all its left-to-right
    non-overlapping occurrences with a fresh reference.

    Substituting R occurrences of a length-l candidate trades R*l stream
    tokens for R references plus an l-token dictionary entry, a gain of
    (R-1)*(l-1)-1; the loop stops when no candidate gains at least 1.
    Ties go to the longer candidate, then the smaller symbol string.
    """
    streams = [_encode(t) for t in corpus.targets]
    pool = sorted({tuple(c) for c in candidates if len(c) >= 2})
    dictionary: list[tuple[int, ...]] = []
    while pool:
        best_gain = 0
        best = None
        for cand in pool:
            text = _encode(cand)
            r = sum(s.count(text) for s in streams)
            gain = (r - 1) * (len(cand) - 1) - 1
            if gain < 1:
                continue
            key = (gain, len(cand), [-s for s in cand])
            if best is None or key > best[0]:
                best = (key, cand, text)
                best_gain = gain
        if best is None:
            break
        _, cand, text = best
        ref = _ref(len(dictionary))
        streams = [s.replace(text, ref) for s in streams]
        dictionary.append(cand)
        pool.remove(cand)
    encoded = tuple(_decode(s) for s in streams)
    return CompressionResult(
        method=method,
        original_size=corpus.total_length,
        dictionary_size=sum(len(e) for e in dictionary),
        encoded_size=sum(len(e) for e in encoded),
        dictionary=tuple(dictionary),
        encoded=encoded,
    )

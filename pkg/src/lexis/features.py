"""Feature extraction for downstream classification.

Features are strings: either the core intermediates of per-class DAGs or
plain n-grams (the comparison baseline). Classes have separate corpora and
therefore separate alphabets, so a feature is identified by its rendered
label and translated back into each corpus's symbol ids when counting.

The count matrix holds left-to-right non-overlapping occurrence counts of
each feature in each target string, written sparsely as 1-based
"row col value" triplets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, TextIO

import numpy as np

from .analysis import g_core
from .corpus import Corpus
from .errors import InvalidArgument, ParseError
from .glexis import build


@dataclass(frozen=True)
class Feature:
    label: str
    length: int  # symbols
    classes: tuple[str, ...]  # class names whose core contributed it


@dataclass(frozen=True)
class FeatureSet:
    mode: str
    features: tuple[Feature, ...]

    def labels(self) -> list[str]:
        return [f.label for f in self.features]


def _dedup(mode: str, contributions: list[tuple[str, str, int]]) -> FeatureSet:
    """(label, class, length) triples -> features, deduplicated by label."""
    by_label: dict[str, tuple[int, set[str]]] = {}
    for label, cls, length in contributions:
        if label in by_label:
            by_label[label][1].add(cls)
        else:
            by_label[label] = (length, {cls})
    feats = [
        Feature(label, length, tuple(sorted(classes)))
        for label, (length, classes) in by_label.items()
    ]
    feats.sort(key=lambda f: (-f.length, f.label))
    return FeatureSet(mode, tuple(feats))


def extract_core_features(classes: Mapping[str, Corpus], tau: float) -> FeatureSet:
    """Build one DAG per class, take each core's intermediates, and pool
    them. A label appearing in several cores becomes a single feature
    tagged with all of its classes."""
    if not classes:
        raise InvalidArgument("need at least one class")
    modes = {c.mode for c in classes.values()}
    if len(modes) != 1:
        raise InvalidArgument(f"classes mix corpus modes {sorted(modes)}")
    contributions = []
    for cls in sorted(classes):
        corpus = classes[cls]
        dag = build(corpus).dag
        core = g_core(dag, tau)
        for v in core.core:
            contributions.append((dag.label(v), cls, len(dag.string_of(v))))
    return _dedup(modes.pop(), contributions)


def ngram_features(corpus: Corpus, orders: Sequence[int], cls: str = "") -> FeatureSet:
    """Distinct n-grams of the given orders; order 1 is the bag of symbols."""
    if not orders or any(k < 1 for k in orders):
        raise InvalidArgument(f"n-gram orders must be >= 1, got {tuple(orders)}")
    grams: set[tuple[int, ...]] = set()
    for t in corpus.targets:
        for k in orders:
            for i in range(len(t) - k + 1):
                grams.add(t[i : i + k])
    contributions = [(corpus.render(g), cls, len(g)) for g in grams]
    return _dedup(corpus.mode, contributions)


def merge_feature_sets(sets: Sequence[FeatureSet]) -> FeatureSet:
    """Pool several sets (e.g. per-class n-grams) into one, deduplicating
    by label and unioning class tags."""
    if not sets:
        raise InvalidArgument("need at least one feature set")
    modes = {s.mode for s in sets}
    if len(modes) != 1:
        raise InvalidArgument(f"feature sets mix modes {sorted(modes)}")
    contributions = [
        (f.label, cls, f.length) for s in sets for f in s.features for cls in (f.classes or ("",))
    ]
    return _dedup(modes.pop(), contributions)


def _parse_label(label: str, corpus: Corpus) -> tuple[int, ...] | None:
    parts = list(label) if corpus.mode == "char" else label.split()
    try:
        return tuple(corpus.alphabet.id_of(p) for p in parts)
    except ParseError:
        return None  # feature uses symbols this corpus never saw


def count_matrix(features: FeatureSet, corpus: Corpus) -> np.ndarray:
    """Targets x features matrix of left-to-right non-overlapping
    occurrence counts. A feature whose symbols are absent from this
    corpus's alphabet counts 0 everywhere."""
    if features.mode != corpus.mode:
        raise InvalidArgument(
            f"feature mode {features.mode!r} does not match corpus mode {corpus.mode!r}"
        )
    streams = ["".join(chr(s) for s in t) for t in corpus.targets]
    out = np.zeros((len(streams), len(features.features)), dtype=np.int64)
    for j, feat in enumerate(features.features):
        seq = _parse_label(feat.label, corpus)
        if seq is None:
            continue
        text = "".join(chr(s) for s in seq)
        for i, stream in enumerate(streams):
            out[i, j] = stream.count(text)
    return out


def class_count_matrix(
    features: FeatureSet, classes: Mapping[str, Corpus]
) -> tuple[np.ndarray, list[tuple[str, int]]]:
    """Stacked per-class count matrices. Row order is class name order,
    then target order; the returned row index lists (class, target)."""
    blocks = []
    rows: list[tuple[str, int]] = []
    for cls in sorted(classes):
        corpus = classes[cls]
        blocks.append(count_matrix(features, corpus))
        rows.extend((cls, i) for i in range(len(corpus.targets)))
    return np.vstack(blocks), rows


def write_sparse_matrix(matrix: np.ndarray, out: TextIO) -> None:
    """Triplet form: a "rows cols nnz" header, then 1-based
    "row col value" lines in row-major order."""
    rows, cols = matrix.shape
    rr, cc = np.nonzero(matrix)
    out.write(f"{rows} {cols} {len(rr)}\n")
    for r, c in zip(rr, cc):
        out.write(f"{r + 1} {c + 1} {matrix[r, c]}\n")


def write_labels(features: FeatureSet, out: TextIO) -> None:
    for label in features.labels():
        out.write(label + "\n")

"""Null-model significance for DAG nodes.

The null model shuffles each target and rebuilds; a node of the original
DAG is scored by how often shuffled rebuilds produce a node at least as
long and at least as reused. Small p means the node's (length, reuse)
combination is unlikely under shuffling, i.e. the structure is real.

Each trial is reduced to a suffix-maximum array over node lengths so a
dominance query costs O(1) per trial.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .analysis import CentralityReport
from .corpus import Corpus
from .dag import LexisDag, NodeId
from .errors import InvalidArgument
from .glexis import TrialResult, run_randomized_trials


@dataclass(frozen=True)
class NullModel:
    trials: int
    # per trial: maxima[l - 2] = max reuse among nodes with length >= l
    maxima: tuple[tuple[int, ...], ...]
    pairs: tuple[frozenset[tuple[int, int]], ...]


def null_model_from_trials(results: Sequence[TrialResult]) -> NullModel:
    if not results:
        raise InvalidArgument("need at least one trial")
    maxima = []
    pairs = []
    for res in results:
        top = max((l for l, _ in res.pairs), default=1)
        arr = [0] * max(top - 1, 0)
        for l, r in res.pairs:
            if r > arr[l - 2]:
                arr[l - 2] = r
        for i in range(len(arr) - 2, -1, -1):
            if arr[i + 1] > arr[i]:
                arr[i] = arr[i + 1]
        maxima.append(tuple(arr))
        pairs.append(frozenset(res.pairs))
    return NullModel(len(results), tuple(maxima), tuple(pairs))


def build_null(corpus: Corpus, trials: int, seed: int | str, jobs: int = 1) -> NullModel:
    return null_model_from_trials(run_randomized_trials(corpus, trials, seed, jobs))


def p_value(model: NullModel, length: int, reuse: int, exact: bool = False) -> float:
    """Fraction of trials containing a node that dominates (length, reuse):
    at least as long and at least as reused. With exact=True, the fraction
    of trials containing precisely that pair."""
    if length < 2:
        raise InvalidArgument(f"length must be >= 2, got {length}")
    if reuse < 2:
        raise InvalidArgument(f"reuse must be >= 2, got {reuse}")
    if exact:
        hits = sum(1 for p in model.pairs if (length, reuse) in p)
    else:
        idx = length - 2
        hits = sum(1 for arr in model.maxima if idx < len(arr) and arr[idx] >= reuse)
    return hits / model.trials


@dataclass(frozen=True)
class SignificanceRow:
    node: NodeId
    label: str
    length: int
    reuse: int
    p: float


def significance_table(
    model: NullModel,
    dag: LexisDag,
    report: CentralityReport,
    exact: bool = False,
) -> tuple[SignificanceRow, ...]:
    """One row per intermediate: its length, its reuse in targets, and its
    p-value under the null model. Rows sorted by ascending p, then longer
    first, then id."""
    rows = []
    for v in dag.intermediates():
        length = len(dag.string_of(v))
        reuse = report.to_target_paths[v]
        rows.append(
            SignificanceRow(v, dag.label(v), length, reuse, p_value(model, length, reuse, exact))
        )
    rows.sort(key=lambda r: (r.p, -r.length, r.node))
    return tuple(rows)


def filter_significant(
    rows: Sequence[SignificanceRow], alpha: float
) -> tuple[SignificanceRow, ...]:
    """Rows with p below the significance level."""
    if not 0.0 <= alpha <= 1.0:
        raise InvalidArgument(f"alpha must be in [0, 1], got {alpha}")
    return tuple(r for r in rows if r.p < alpha)

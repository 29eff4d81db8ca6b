"""Path counts over a Lexis-DAG and the greedy core extractor.

A node's centrality is the number of source-to-target paths through it:
the product of paths arriving from sources and paths reaching targets.
Counts are exact Python integers; they grow multiplicatively with depth
and overflow fixed-width arithmetic on deep DAGs.

Two invariants pin the forward pass down: the paths from sources into v
equal |string(v)| (every path picks one symbol occurrence), and the total
over all targets equals the corpus length.
"""
from __future__ import annotations

from dataclasses import dataclass

from .dag import INTERMEDIATE, SOURCE, TARGET, LexisDag, NodeId, Violation
from .errors import InvalidArgument, ValidationError


def _path_counts(
    dag: LexisDag, removed: frozenset[NodeId] | set[NodeId] = frozenset()
) -> tuple[dict[NodeId, int], dict[NodeId, int], int]:
    """Forward and backward path counts with ``removed`` nodes cut out.
    Returns (from_sources, to_targets, paths_remaining)."""
    order = dag.topological_order()
    if order is None:
        raise ValidationError([Violation("acyclicity", None, "cycle present")])
    fwd: dict[NodeId, int] = {}
    for v in order:
        if v in removed:
            fwd[v] = 0
            continue
        n = dag.nodes[v]
        if n.kind == SOURCE:
            fwd[v] = 1
        else:
            fwd[v] = sum(fwd[u] for u in n.in_ids)
    bwd: dict[NodeId, int] = {v: 0 for v in order}
    for v in reversed(order):
        if v in removed:
            continue
        n = dag.nodes[v]
        if n.kind == TARGET:
            bwd[v] = 1
        here = bwd[v]
        if here:
            for u in n.in_ids:
                bwd[u] += here
    remaining = sum(fwd[t] for t in dag.target_ids)
    return fwd, bwd, remaining


@dataclass(frozen=True)
class CentralityReport:
    from_source_paths: dict[NodeId, int]
    to_target_paths: dict[NodeId, int]
    centrality: dict[NodeId, int]
    paths_total: int

    def ranked(self) -> list[NodeId]:
        """Intermediates by descending centrality; ties broken by longer
        string, then smaller id. Encoded as a sort key so callers see one
        canonical order."""
        items = [(v, c) for v, c in self.centrality.items() if c > 0]
        items.sort(key=lambda vc: (-vc[1], -self.from_source_paths[vc[0]], vc[0]))
        return [v for v, _ in items]


def path_centrality(dag: LexisDag) -> CentralityReport:
    """Exact path counts for every node. Sources and targets get
    centrality 0: removing them is not on the table."""
    fwd, bwd, total = _path_counts(dag)
    cent = {
        n.id: (fwd[n.id] * bwd[n.id] if n.kind == INTERMEDIATE else 0)
        for n in dag.alive_nodes()
    }
    return CentralityReport(fwd, bwd, cent, total)


@dataclass(frozen=True)
class CoreStep:
    node: NodeId
    centrality: int  # at selection time, on the already-reduced DAG
    paths_remaining: int  # after this removal


@dataclass(frozen=True)
class CoreResult:
    core: tuple[NodeId, ...]
    tau: float
    paths_total: int
    paths_remaining: int
    feasible: bool
    steps: tuple[CoreStep, ...]


def g_core(dag: LexisDag, tau: float) -> CoreResult:
    """Greedily remove the highest-centrality intermediate until at most
    ``tau`` of the original source-to-target paths survive.

    Centralities are recomputed on the reduced DAG after every removal.
    Ties pick the longer string, then the smaller id. When no intermediate
    with positive centrality is left but the threshold is still unmet, the
    result carries feasible=False rather than raising: the caller decides
    whether a partial core is usable.
    """
    if not 0.0 <= tau <= 1.0:
        raise InvalidArgument(f"tau must be in [0, 1], got {tau}")
    fwd, bwd, total = _path_counts(dag)
    removed: set[NodeId] = set()
    core: list[NodeId] = []
    steps: list[CoreStep] = []
    remaining = total
    budget = tau * total
    while remaining > budget:
        best: tuple[int, int, int] | None = None
        pick = None
        for v in dag.intermediates():
            if v in removed:
                continue
            c = fwd[v] * bwd[v]
            if c <= 0:
                continue
            key = (c, len(dag.string_of(v)), -v)
            if best is None or key > best:
                best = key
                pick = v
        if pick is None:
            break
        removed.add(pick)
        core.append(pick)
        fwd, bwd, remaining = _path_counts(dag, removed)
        steps.append(CoreStep(pick, best[0], remaining))
    return CoreResult(
        core=tuple(core),
        tau=tau,
        paths_total=total,
        paths_remaining=remaining,
        feasible=remaining <= budget,
        steps=tuple(steps),
    )

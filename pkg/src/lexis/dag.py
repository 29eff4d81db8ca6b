"""Layered DAG representation of a corpus.

Sources are the alphabet symbols (in-degree 0), targets are the corpus
strings (out-degree 0), and intermediate nodes are reused substrings. An
edge (u, v, i) says string(u) occurs in string(v) starting at 1-based
character index i; the in-neighbor sequence I(v), ordered by index, must
concatenate exactly to string(v). Every intermediate must be used at least
twice (out-degree >= 2), otherwise it pays for itself nothing.

Edge indices are stored explicitly next to I(v) even though they are
derivable from member string lengths; validate() cross-checks the two.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .corpus import Alphabet, Corpus, SymbolId
from .errors import (
    InvalidCandidate,
    OccurrenceMismatch,
    OverlappingOccurrences,
    ParseError,
    TooFewOccurrences,
    ValidationError,
)

NodeId = int

SOURCE = "source"
INTERMEDIATE = "intermediate"
TARGET = "target"

_KINDS = (SOURCE, INTERMEDIATE, TARGET)


@dataclass
class Node:
    id: NodeId
    kind: str
    string: tuple[SymbolId, ...]
    in_ids: list[NodeId]
    in_idx: list[int]
    alive: bool = True


@dataclass(frozen=True)
class Violation:
    kind: str
    node: NodeId | None
    message: str

    def __str__(self) -> str:
        where = f"node {self.node}" if self.node is not None else "dag"
        return f"[{self.kind}] {where}: {self.message}"


def _derived_indices(members: Sequence[NodeId], nodes: dict[NodeId, Node]) -> list[int]:
    idx = []
    pos = 1
    for u in members:
        idx.append(pos)
        pos += len(nodes[u].string)
    return idx


class LexisDag:
    """Mutable Lexis-DAG. Construct via trivial_dag() and grow with
    add_intermediate(); direct add_node() is the low-level escape hatch used
    by deserialization and by tests that need invalid structures."""

    def __init__(self, alphabet: Alphabet, mode: str = "char"):
        self.alphabet = alphabet
        self.mode = mode
        self.nodes: dict[NodeId, Node] = {}
        self.target_ids: list[NodeId] = []
        self._next_id = 0
        self._outdeg: Counter[NodeId] = Counter()
        self._edge_count = 0
        self._nonsource_count = 0
        for sym in range(len(alphabet)):
            self.nodes[sym] = Node(sym, SOURCE, (sym,), [], [])
            self._next_id = sym + 1

    # -- basic accessors -------------------------------------------------

    def __contains__(self, v: NodeId) -> bool:
        n = self.nodes.get(v)
        return n is not None and n.alive

    def alive_nodes(self) -> Iterator[Node]:
        for v in sorted(self.nodes):
            n = self.nodes[v]
            if n.alive:
                yield n

    def in_seq(self, v: NodeId) -> list[NodeId]:
        """I(v): the ordered in-neighbor sequence."""
        return self.nodes[v].in_ids

    def string_of(self, v: NodeId) -> tuple[SymbolId, ...]:
        return self.nodes[v].string

    def label(self, v: NodeId) -> str:
        sep = "" if self.mode == "char" else " "
        return sep.join(self.alphabet.label_of(s) for s in self.nodes[v].string)

    def kind_of(self, v: NodeId) -> str:
        return self.nodes[v].kind

    def intermediates(self) -> list[NodeId]:
        return [n.id for n in self.alive_nodes() if n.kind == INTERMEDIATE]

    def edges(self) -> Iterator[tuple[NodeId, NodeId, int]]:
        """All edges (u, v, index), grouped by v in id order, index ascending."""
        for n in self.alive_nodes():
            for u, i in zip(n.in_ids, n.in_idx):
                yield (u, n.id, i)

    def edge_cost(self) -> int:
        return self._edge_count

    def concat_cost(self) -> int:
        return self._edge_count - self._nonsource_count

    def out_degrees(self) -> Counter[NodeId]:
        deg: Counter[NodeId] = Counter()
        for n in self.alive_nodes():
            deg.update(n.in_ids)
        return deg

    def to_corpus(self) -> Corpus:
        targets = tuple(self.nodes[t].string for t in self.target_ids)
        return Corpus(self.alphabet, targets, self.mode)

    # -- construction ----------------------------------------------------

    def add_node(
        self,
        kind: str,
        string: Sequence[SymbolId] | None = None,
        members: Sequence[NodeId] | None = None,
        indices: Sequence[int] | None = None,
        id: NodeId | None = None,
    ) -> NodeId:
        """Low-level node insertion with minimal checking; validate() is the
        gate for structural invariants. Sources are fixed by the alphabet and
        cannot be added."""
        if kind == SOURCE:
            raise InvalidCandidate("sources are created from the alphabet")
        if kind not in _KINDS:
            raise InvalidCandidate(f"unknown node kind {kind!r}")
        members = list(members) if members is not None else []
        if string is None:
            parts: list[SymbolId] = []
            for u in members:
                parts.extend(self.nodes[u].string)
            string = parts
        if indices is None:
            known = all(u in self.nodes for u in members)
            indices = _derived_indices(members, self.nodes) if known else [0] * len(members)
        if id is None:
            id = self._next_id
        if id in self.nodes:
            raise InvalidCandidate(f"node id {id} already exists")
        self._next_id = max(self._next_id, id + 1)
        self.nodes[id] = Node(id, kind, tuple(string), members, list(indices))
        self._outdeg.update(members)
        self._edge_count += len(members)
        self._nonsource_count += 1
        if kind == TARGET:
            self.target_ids.append(id)
        return id

    def add_intermediate(
        self,
        seq: Sequence[NodeId],
        occurrences: Iterable[tuple[NodeId, int]],
    ) -> NodeId:
        """Introduce a new intermediate for ``seq`` (a run of existing node
        ids) and substitute it at every given occurrence.

        Occurrences are (host, start) pairs, start being the 1-based position
        in I(host). They must be non-overlapping within each host and must
        actually spell out ``seq``. At least two occurrences overall are
        required, otherwise the new node could not satisfy min-reuse.

        If the substitution leaves some member intermediate with a single
        remaining use (all its other uses were swallowed by the new windows),
        that member is inlined into the new node and tombstoned, keeping the
        min-reuse invariant intact. Ids of tombstoned nodes are never reused.
        """
        seq = list(seq)
        m = len(seq)
        if m < 2:
            raise InvalidCandidate("candidate must have length >= 2")
        for u in seq:
            n = self.nodes.get(u)
            if n is None or not n.alive:
                raise InvalidCandidate(f"member {u} does not exist")
            if n.kind == TARGET:
                raise InvalidCandidate(f"member {u} is a target (targets keep out-degree 0)")

        by_host: dict[NodeId, list[int]] = {}
        total = 0
        for host, pos in occurrences:
            by_host.setdefault(host, []).append(pos)
            total += 1
        if total < 2:
            raise TooFewOccurrences(f"need >= 2 occurrences, got {total}")

        for host, ps in by_host.items():
            hn = self.nodes.get(host)
            if hn is None or not hn.alive or hn.kind == SOURCE:
                raise InvalidCandidate(f"host {host} is not a non-source node")
            ps.sort()
            last_end = 1
            for p in ps:
                if p < 1 or p + m - 1 > len(hn.in_ids):
                    raise OccurrenceMismatch(
                        f"host {host}: window at {p} (length {m}) out of range"
                    )
                if p < last_end:
                    raise OverlappingOccurrences(
                        f"host {host}: window at {p} overlaps previous window"
                    )
                if hn.in_ids[p - 1 : p - 1 + m] != seq:
                    raise OccurrenceMismatch(
                        f"host {host}: window at {p} does not match candidate"
                    )
                last_end = p + m

        string: list[SymbolId] = []
        for u in seq:
            string.extend(self.nodes[u].string)
        nid = self.add_node(INTERMEDIATE, string=string, members=seq)

        for host, ps in by_host.items():
            hn = self.nodes[host]
            out: list[NodeId] = []
            prev = 0
            for p in ps:
                out.extend(hn.in_ids[prev : p - 1])
                out.append(nid)
                prev = p - 1 + m
            out.extend(hn.in_ids[prev:])
            # each window removed one copy of every seq member, gained one nid
            for u in seq:
                self._outdeg[u] -= len(ps)
            self._outdeg[nid] += len(ps)
            self._edge_count += len(out) - len(hn.in_ids)
            hn.in_ids = out
            hn.in_idx = _derived_indices(out, self.nodes)

        # min-reuse repair: a member whose uses were all swallowed is inlined
        for u in dict.fromkeys(seq):
            n = self.nodes[u]
            if n.kind == INTERMEDIATE and self._outdeg[u] == 1 and seq.count(u) == 1:
                self._inline_member(u, nid)
        return nid

    def _inline_member(self, u: NodeId, parent: NodeId) -> None:
        """Splice I(u) into I(parent) at u's single slot and tombstone u."""
        pn = self.nodes[parent]
        un = self.nodes[u]
        slot = pn.in_ids.index(u)
        pn.in_ids[slot : slot + 1] = un.in_ids
        pn.in_idx = _derived_indices(pn.in_ids, self.nodes)
        self._outdeg[u] -= 1
        # parent gains len(I(u))-1 edges, u's own in-list goes away: net -1
        self._edge_count -= 1
        self._nonsource_count -= 1
        un.alive = False
        un.in_ids = []
        un.in_idx = []

    # -- analysis helpers ------------------------------------------------

    def topological_order(self) -> list[NodeId] | None:
        """Alive node ids, members-before-hosts; None if a cycle exists."""
        alive = {n.id: n for n in self.alive_nodes()}
        remaining = {v: len(set(n.in_ids)) for v, n in alive.items()}
        users: dict[NodeId, list[NodeId]] = {v: [] for v in alive}
        for v, n in alive.items():
            for u in set(n.in_ids):
                if u in users:
                    users[u].append(v)
        ready = sorted(v for v, c in remaining.items() if c == 0)
        order = []
        while ready:
            v = ready.pop()
            order.append(v)
            for w in sorted(users[v], reverse=True):
                remaining[w] -= 1
                if remaining[w] == 0:
                    ready.append(w)
        if len(order) != len(alive):
            return None
        return order

    def depth(self) -> int:
        """Maximum number of edges on any source-to-target path."""
        order = self.topological_order()
        if order is None:
            raise ValidationError([Violation("acyclicity", None, "cycle present")])
        dist = {v: 0 for v in order}
        for v in order:
            n = self.nodes[v]
            for u in n.in_ids:
                if dist[u] + 1 > dist[v]:
                    dist[v] = dist[u] + 1
        return max((dist[t] for t in self.target_ids if t in dist), default=0)

    def validate(self) -> list[Violation]:
        """Check every structural invariant; return all violations found."""
        out: list[Violation] = []
        alive = {n.id: n for n in self.alive_nodes()}
        for v in sorted(alive):
            n = alive[v]
            if n.kind == SOURCE:
                if n.in_ids:
                    out.append(Violation("source-in-degree", v, "source has in-edges"))
                if n.string != (v,):
                    out.append(Violation("source-string", v, "source string is not its symbol"))
                continue
            if len(n.in_ids) != len(n.in_idx):
                out.append(Violation("structure", v, "in_ids and in_idx lengths differ"))
                continue
            missing = [u for u in n.in_ids if u not in alive]
            if missing:
                out.append(Violation("structure", v, f"edges from missing nodes {sorted(set(missing))}"))
                continue
            pos = 1
            concat: list[SymbolId] = []
            contiguous = True
            for u, i in zip(n.in_ids, n.in_idx):
                if i != pos:
                    contiguous = False
                pos += len(alive[u].string)
                concat.extend(alive[u].string)
            if not contiguous:
                out.append(Violation("index-contiguity", v, "edge indices are not contiguous"))
            if tuple(concat) != n.string:
                out.append(
                    Violation(
                        "concat-mismatch",
                        v,
                        "in-neighbor concatenation does not spell the node string",
                    )
                )
        deg: Counter[NodeId] = Counter()
        for n in alive.values():
            deg.update(u for u in n.in_ids if u in alive)
        for v in sorted(alive):
            n = alive[v]
            if n.kind == TARGET and deg[v] > 0:
                out.append(Violation("target-out-degree", v, f"target is referenced {deg[v]} times"))
            if n.kind == INTERMEDIATE and deg[v] < 2:
                out.append(Violation("min-reuse", v, f"intermediate used {deg[v]} time(s), needs >= 2"))
        if self.topological_order() is None:
            out.append(Violation("acyclicity", None, "derivation contains a cycle"))
        return out

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        nodes = [
            {"id": n.id, "kind": n.kind, "string": self.label(n.id)}
            for n in self.alive_nodes()
        ]
        edges = sorted(self.edges(), key=lambda e: (e[1], e[2], e[0]))
        return {
            "mode": self.mode,
            "alphabet": list(self.alphabet.labels),
            "nodes": nodes,
            "edges": [list(e) for e in edges],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    def to_dot(self) -> str:
        """Graphviz rendering: nodes labeled with their strings, edges with
        their character indices."""

        def esc(s: str) -> str:
            return s.replace("\\", "\\\\").replace('"', '\\"')

        shapes = {SOURCE: "circle", INTERMEDIATE: "box", TARGET: "doubleoctagon"}
        lines = ["digraph lexis {", "  rankdir=BT;"]
        for n in self.alive_nodes():
            lines.append(f'  n{n.id} [label="{esc(self.label(n.id))}", shape={shapes[n.kind]}];')
        for u, v, i in sorted(self.edges(), key=lambda e: (e[1], e[2], e[0])):
            lines.append(f'  n{u} -> n{v} [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def trivial_dag(corpus: Corpus) -> LexisDag:
    """One edge per symbol occurrence: every target spelled directly from
    sources. Edge cost equals the corpus length."""
    dag = LexisDag(corpus.alphabet, corpus.mode)
    for t in corpus.targets:
        dag.add_node(TARGET, string=t, members=list(t))
    return dag


def from_json(data: dict | str) -> LexisDag:
    """Rebuild a DAG from its JSON form. Raises ParseError on malformed input
    and ValidationError (with the violation list) if the structure breaks DAG
    invariants."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    for key in ("alphabet", "nodes", "edges"):
        if key not in data:
            raise ParseError(f"missing key {key!r}")
    mode = data.get("mode", "char")
    if mode not in ("char", "token"):
        raise ParseError(f"unknown mode {mode!r}")
    labels = data["alphabet"]
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise ParseError("alphabet must be a list of strings")
    alphabet = Alphabet(tuple(labels))
    dag = LexisDag(alphabet, mode)

    def parse_string(text: str) -> list[SymbolId]:
        parts = list(text) if mode == "char" else text.split()
        return [alphabet.id_of(p) for p in parts]

    in_lists: dict[int, list[tuple[int, int]]] = {}
    for e in data["edges"]:
        if not (isinstance(e, (list, tuple)) and len(e) == 3 and all(isinstance(x, int) for x in e)):
            raise ParseError(f"bad edge {e!r}")
        u, v, i = e
        in_lists.setdefault(v, []).append((i, u))

    seen_sources = set()
    rest = []
    for nd in data["nodes"]:
        if not isinstance(nd, dict) or not {"id", "kind", "string"} <= set(nd):
            raise ParseError(f"bad node entry {nd!r}")
        if not isinstance(nd["id"], int) or nd["kind"] not in _KINDS:
            raise ParseError(f"bad node entry {nd!r}")
        if nd["kind"] == SOURCE:
            v = nd["id"]
            if not (0 <= v < len(alphabet)) or parse_string(nd["string"]) != [v]:
                raise ParseError(f"source node {v} does not match the alphabet")
            seen_sources.add(v)
        else:
            rest.append(nd)
    if len(seen_sources) != len(alphabet):
        raise ParseError("alphabet and source nodes disagree")

    for nd in sorted(rest, key=lambda d: d["id"]):
        pairs = sorted(in_lists.get(nd["id"], []))
        members = [u for _, u in pairs]
        indices = [i for i, _ in pairs]
        try:
            dag.add_node(
                nd["kind"],
                string=parse_string(nd["string"]),
                members=members,
                indices=indices,
                id=nd["id"],
            )
        except InvalidCandidate as exc:
            raise ParseError(str(exc)) from exc
    known = set(dag.nodes)
    for v in in_lists:
        if v not in known:
            raise ParseError(f"edges reference unknown node {v}")
    violations = dag.validate()
    if violations:
        raise ValidationError(violations)
    return dag

"""Corpus model: alphabets, targets, ingestion, and target shuffling.

A corpus is an ordered list of target sequences over a shared alphabet.
Symbols are small integer ids; the alphabet maps them back to labels
(single characters in char mode, whitespace-free tokens in token mode).
Alphabet ids are assigned in first-appearance order over the targets, so
ingestion is deterministic.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import EmptyCorpus, EmptyTarget, ParseError

SymbolId = int

CHAR_MODE = "char"
TOKEN_MODE = "token"


@dataclass(frozen=True)
class Alphabet:
    """Immutable label table. ``labels[i]`` is the label of symbol id ``i``."""

    labels: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.labels)})
        if len(self._index) != len(self.labels):
            raise ParseError("duplicate labels in alphabet")

    def __len__(self) -> int:
        return len(self.labels)

    def id_of(self, label: str) -> SymbolId:
        try:
            return self._index[label]
        except KeyError:
            raise ParseError(f"label {label!r} not in alphabet") from None

    def label_of(self, sym: SymbolId) -> str:
        return self.labels[sym]


@dataclass(frozen=True)
class Corpus:
    """Targets plus their alphabet. ``mode`` controls label rendering."""

    alphabet: Alphabet
    targets: tuple[tuple[SymbolId, ...], ...]
    mode: str = CHAR_MODE

    @property
    def total_length(self) -> int:
        return sum(len(t) for t in self.targets)

    def render(self, seq: Iterable[SymbolId]) -> str:
        """Render a symbol sequence back to text (joined per mode)."""
        sep = "" if self.mode == CHAR_MODE else " "
        return sep.join(self.alphabet.label_of(s) for s in seq)

    def render_targets(self) -> tuple[str, ...]:
        return tuple(self.render(t) for t in self.targets)


def _ingest(token_lines: Sequence[Sequence[str]], mode: str) -> Corpus:
    if len(token_lines) == 0:
        raise EmptyCorpus("no targets")
    labels: list[str] = []
    index: dict[str, int] = {}
    targets = []
    for ti, toks in enumerate(token_lines):
        if len(toks) == 0:
            raise EmptyTarget(ti)
        ids = []
        for tok in toks:
            sym = index.get(tok)
            if sym is None:
                sym = index[tok] = len(labels)
                labels.append(tok)
            ids.append(sym)
        targets.append(tuple(ids))
    return Corpus(Alphabet(tuple(labels)), tuple(targets), mode)


def ingest_char(lines: Sequence[str]) -> Corpus:
    """Build a corpus from text lines, one target per line, one symbol per
    character."""
    return _ingest([list(line) for line in lines], CHAR_MODE)


def ingest_tokens(lines: Sequence[str]) -> Corpus:
    """Build a corpus from text lines, one target per line, symbols separated
    by whitespace."""
    return _ingest([line.split() for line in lines], TOKEN_MODE)


def load_corpus(path: str, mode: str = CHAR_MODE) -> Corpus:
    """Read a corpus file. A trailing newline does not create an extra target."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not valid UTF-8 text ({exc})") from exc
    lines = text.splitlines()
    if mode == CHAR_MODE:
        return ingest_char(lines)
    if mode == TOKEN_MODE:
        return ingest_tokens(lines)
    raise ParseError(f"unknown mode {mode!r}")


def save_corpus(corpus: Corpus, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for line in corpus.render_targets():
            fh.write(line + "\n")


def shuffle_targets(corpus: Corpus, seed: int | str) -> Corpus:
    """Return a copy with each target independently and uniformly permuted.

    Symbol multisets per target (hence the alphabet and total length) are
    unchanged. Deterministic for a given seed.
    """
    rng = random.Random(seed)
    shuffled = []
    for t in corpus.targets:
        s = list(t)
        rng.shuffle(s)
        shuffled.append(tuple(s))
    return Corpus(corpus.alphabet, tuple(shuffled), corpus.mode)

"""Synthetic corpora with known structure.

Three generators: a planted hierarchy (modules composed of modules, down
to symbols), uniform noise, and uniform noise with a repeated motif
spliced in. Each returns the ground truth alongside the corpus so tests
can check what a builder recovers.

All randomness comes from one random.Random(seed) per call; string seeds
hash identically across processes, so any seed value gives reproducible
corpora.
"""
from __future__ import annotations

import random
import string as _string
from dataclasses import dataclass

from .corpus import Alphabet, Corpus
from .errors import InvalidSpec

_BASE62 = _string.digits + _string.ascii_lowercase + _string.ascii_uppercase


def _symbol_labels(n: int) -> tuple[str, ...]:
    """Single-character labels: digits, letters, then codepoints past
    Latin-1 so char mode keeps one character per symbol."""
    labels = [_BASE62[i] if i < len(_BASE62) else chr(0x100 + i) for i in range(n)]
    return tuple(labels)


@dataclass(frozen=True)
class PlantedHierarchySpec:
    """Hierarchy shape: ``levels`` module layers above the symbols, each
    module a run of ``module_length`` units from the layer below, each
    target a run of ``modules_per_target`` top-layer modules. ``noise``
    is the per-position chance of replacing a symbol after expansion."""

    alphabet_size: int
    levels: int
    modules_per_level: int
    module_length: int
    targets: int
    modules_per_target: int
    noise: float = 0.0

    def validate(self) -> None:
        if self.alphabet_size < 2:
            raise InvalidSpec(f"alphabet_size must be >= 2, got {self.alphabet_size}")
        if self.levels < 1:
            raise InvalidSpec(f"levels must be >= 1, got {self.levels}")
        if self.modules_per_level < 2:
            raise InvalidSpec(f"modules_per_level must be >= 2, got {self.modules_per_level}")
        if self.module_length < 2:
            raise InvalidSpec(f"module_length must be >= 2, got {self.module_length}")
        if self.targets < 1:
            raise InvalidSpec(f"targets must be >= 1, got {self.targets}")
        if self.modules_per_target < 1:
            raise InvalidSpec(f"modules_per_target must be >= 1, got {self.modules_per_target}")
        if not 0.0 <= self.noise <= 1.0:
            raise InvalidSpec(f"noise must be in [0, 1], got {self.noise}")

    @property
    def target_length(self) -> int:
        return self.modules_per_target * self.module_length**self.levels

    @property
    def total_length(self) -> int:
        return self.targets * self.target_length


def gen_planted(
    spec: PlantedHierarchySpec, seed: int | str
) -> tuple[Corpus, tuple[tuple[str, ...], ...]]:
    """Corpus plus ground truth: per level (bottom-up), the rendered
    symbol strings of that level's modules."""
    spec.validate()
    rng = random.Random(seed)
    labels = _symbol_labels(spec.alphabet_size)
    units: list[tuple[int, ...]] = [(s,) for s in range(spec.alphabet_size)]
    truth: list[tuple[str, ...]] = []
    for _ in range(spec.levels):
        level = []
        for _ in range(spec.modules_per_level):
            parts: list[int] = []
            for _ in range(spec.module_length):
                parts.extend(rng.choice(units))
            level.append(tuple(parts))
        truth.append(tuple("".join(labels[s] for s in m) for m in level))
        units = level
    targets = []
    for _ in range(spec.targets):
        t: list[int] = []
        for _ in range(spec.modules_per_target):
            t.extend(rng.choice(units))
        if spec.noise > 0:
            for i in range(len(t)):
                if rng.random() < spec.noise:
                    t[i] = rng.randrange(spec.alphabet_size)
        targets.append(tuple(t))
    corpus = Corpus(Alphabet(labels), tuple(targets), "char")
    return corpus, tuple(truth)


def gen_uniform(alphabet_size: int, targets: int, target_length: int, seed: int | str) -> Corpus:
    """Independent uniform symbols: the structureless baseline."""
    if alphabet_size < 2:
        raise InvalidSpec(f"alphabet_size must be >= 2, got {alphabet_size}")
    if targets < 1 or target_length < 1:
        raise InvalidSpec("need at least one target of length >= 1")
    rng = random.Random(seed)
    labels = _symbol_labels(alphabet_size)
    ts = tuple(
        tuple(rng.randrange(alphabet_size) for _ in range(target_length))
        for _ in range(targets)
    )
    return Corpus(Alphabet(labels), ts, "char")


def gen_motif(
    alphabet_size: int,
    motif_length: int,
    insertions: int,
    total_length: int,
    seed: int | str,
) -> tuple[Corpus, str]:
    """One target: uniform noise with a fixed random motif spliced in
    ``insertions`` times at random slots. Returns the corpus and the
    motif's rendered label."""
    if alphabet_size < 2:
        raise InvalidSpec(f"alphabet_size must be >= 2, got {alphabet_size}")
    if motif_length < 2:
        raise InvalidSpec(f"motif_length must be >= 2, got {motif_length}")
    if insertions < 2:
        raise InvalidSpec(f"insertions must be >= 2, got {insertions}")
    noise_length = total_length - insertions * motif_length
    if noise_length < 0:
        raise InvalidSpec(
            f"total_length {total_length} cannot fit {insertions} x {motif_length} motif copies"
        )
    rng = random.Random(seed)
    labels = _symbol_labels(alphabet_size)
    motif = tuple(rng.randrange(alphabet_size) for _ in range(motif_length))
    noise = [rng.randrange(alphabet_size) for _ in range(noise_length)]
    slots = sorted(rng.choices(range(noise_length + 1), k=insertions))
    out: list[int] = []
    prev = 0
    for s in slots:
        out.extend(noise[prev:s])
        out.extend(motif)
        prev = s
    out.extend(noise[prev:])
    corpus = Corpus(Alphabet(labels), (tuple(out),), "char")
    return corpus, "".join(labels[s] for s in motif)

"""Matplotlib figures for the CLI report paths.

Every function takes plain data and a file path and writes a PNG. The Agg
backend is forced and the PNG metadata is pinned so identical inputs give
identical bytes; run outputs stay diffable.
"""
from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_SAVE = {"dpi": 120, "metadata": {"Software": "lexis"}}


def save_centrality_bars(items: Sequence[tuple[str, int]], path: str) -> None:
    """Horizontal bars, highest centrality on top."""
    labels = [label for label, _ in items]
    values = [v for _, v in items]
    fig, ax = plt.subplots(figsize=(7, max(2.0, 0.35 * len(items) + 1)))
    y = range(len(items))
    ax.barh(y, values, color="#4878a8")
    ax.set_yticks(list(y), labels, fontsize=8, fontfamily="monospace")
    ax.invert_yaxis()
    ax.set_xlabel("path centrality")
    fig.tight_layout()
    fig.savefig(path, **_SAVE)
    plt.close(fig)


def save_core_curve(remaining: Sequence[float], tau: float, path: str) -> None:
    """Fraction of paths remaining after each removal, with the threshold."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(range(len(remaining)), remaining, marker="o", color="#4878a8")
    ax.axhline(tau, linestyle="--", color="#a84848", label=f"threshold {tau:g}")
    ax.set_xlabel("nodes removed")
    ax.set_ylabel("fraction of paths remaining")
    ax.set_ylim(0, 1.05)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, **_SAVE)
    plt.close(fig)


def save_cost_scatter(
    original: tuple[int, int], trials: Sequence[tuple[int, int]], path: str
) -> None:
    """Edge vs concatenation cost: shuffled rebuilds as a cloud, the
    original build as a single marked point."""
    fig, ax = plt.subplots(figsize=(6, 4))
    if trials:
        ax.scatter(
            [e for e, _ in trials],
            [c for _, c in trials],
            s=14,
            color="#9aa5ad",
            label="shuffled",
        )
    ax.scatter([original[0]], [original[1]], s=60, marker="*", color="#a84848", label="original")
    ax.set_xlabel("edge cost")
    ax.set_ylabel("concatenation cost")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, **_SAVE)
    plt.close(fig)


def save_reuse_scatter(
    original: Sequence[tuple[int, int, bool]],
    null_pairs: Sequence[tuple[int, int]],
    path: str,
) -> None:
    """Node length vs reuse: the null cloud in gray, original nodes split
    into significant and not."""
    fig, ax = plt.subplots(figsize=(6, 4))
    if null_pairs:
        ax.scatter(
            [l for l, _ in null_pairs],
            [r for _, r in null_pairs],
            s=10,
            color="#c9ced3",
            label="shuffled",
        )
    plain = [(l, r) for l, r, sig in original if not sig]
    marked = [(l, r) for l, r, sig in original if sig]
    if plain:
        ax.scatter([l for l, _ in plain], [r for _, r in plain], s=18, color="#4878a8", label="original")
    if marked:
        ax.scatter(
            [l for l, _ in marked],
            [r for _, r in marked],
            s=40,
            marker="D",
            color="#a84848",
            label="significant",
        )
    ax.set_xlabel("length (symbols)")
    ax.set_ylabel("reuse in targets")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, **_SAVE)
    plt.close(fig)

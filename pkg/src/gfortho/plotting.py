"""Figures written alongside the text reports.

Every function renders to a file and closes its figure; nothing is shown
interactively.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .gfmat import GfMatrix, gram  # noqa: E402

_STATUS_CODE = {"pass": 0, "skip": 1, "fail": 2}
_STATUS_COLORS = ["#4c9f70", "#c8c8c8", "#d1495b"]


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight", dpi=120)
    plt.close(fig)
    return path


def plot_matrix(M: GfMatrix, path, title: str | None = None, with_gram: bool = True) -> Path:
    """Heat map of element indices, optionally next to the Gram matrix."""
    square = M.rows == M.cols
    panels = 2 if (with_gram and square) else 1
    fig, axes = plt.subplots(1, panels, figsize=(4.2 * panels, 4), squeeze=False)
    ax = axes[0, 0]
    im = ax.imshow(M.data, cmap="viridis", vmin=0, vmax=M.ctx.q - 1, interpolation="nearest")
    ax.set_title(title or f"{M.rows}x{M.cols} over {M.ctx.describe()}", fontsize=9)
    fig.colorbar(im, ax=ax, fraction=0.046, pad=0.04)
    if panels == 2:
        G = gram(M)
        ax = axes[0, 1]
        im = ax.imshow(G.data, cmap="magma", vmin=0, vmax=M.ctx.q - 1, interpolation="nearest")
        ax.set_title("A A^T", fontsize=9)
        fig.colorbar(im, ax=ax, fraction=0.046, pad=0.04)
    for ax in axes.ravel():
        ax.set_xticks([])
        ax.set_yticks([])
    return _save(fig, path)


def plot_cipher_block(message, cipher, path, reference=None, title: str = "") -> Path:
    """Plaintext and ciphertext symbol codes per position.

    Positions where ``cipher`` and ``reference`` differ are marked.
    """
    message = np.asarray(message)
    cipher = np.asarray(cipher)
    idx = np.arange(message.size)
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(9, 4.5), sharex=True)
    top.bar(idx, message, color="#3a6ea5", width=0.8)
    top.set_ylabel("M")
    bottom.bar(idx, cipher, color="#e07a1f", width=0.8, label="computed")
    if reference is not None:
        reference = np.asarray(reference)
        bottom.plot(idx, reference, "k.", ms=3, label="reference")
        bad = np.flatnonzero(reference != cipher)
        if bad.size:
            bottom.plot(bad, cipher[bad], "rx", ms=6, label="mismatch")
        bottom.legend(fontsize=7, loc="upper right")
    bottom.set_ylabel("C")
    bottom.set_xlabel("position")
    if title:
        top.set_title(title, fontsize=9)
    return _save(fig, path)


def plot_verification(reports, path) -> Path:
    """Grid of check status (rows: fields, columns: checks) with timings."""
    reports = list(reports)
    names = [c.name for c in reports[0].checks]
    grid = np.array([[_STATUS_CODE[c.status] for c in r.checks] for r in reports])
    fig, ax = plt.subplots(figsize=(1.0 + 0.8 * len(names), 0.9 + 0.45 * len(reports)))
    cmap = matplotlib.colors.ListedColormap(_STATUS_COLORS)
    ax.imshow(grid, cmap=cmap, vmin=0, vmax=2, aspect="auto")
    for i, r in enumerate(reports):
        for j, c in enumerate(r.checks):
            ax.text(j, i, f"{c.ms}", ha="center", va="center", fontsize=7)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=40, ha="right", fontsize=7)
    ax.set_yticks(range(len(reports)))
    ax.set_yticklabels([r.field for r in reports], fontsize=7)
    ax.set_title("status (green pass, grey skip, red fail); cell text = ms", fontsize=8)
    return _save(fig, path)


def plot_keyspace(figures, path) -> Path:
    """log10 sizes of the full matrix space and of the (t, r) parameter space."""
    figures = list(figures)
    qs = [f.q for f in figures]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.semilogy(qs, [f.matrix_space_log10 for f in figures], "o-", label="log10 q^(q^2)")
    ax.semilogy(qs, [np.log10(max(f.parameter_space, 1)) for f in figures], "s--",
                label="log10 #(t, r)")
    ax.set_xlabel("q")
    ax.set_ylabel("decimal digits")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    return _save(fig, path)

"""Matplotlib figures for the report path.

Everything is rendered to SVG with a fixed hash salt, no date metadata and
text kept as text (``svg.fonttype = none``), so rerunning a command writes
byte-identical figures and labels stay searchable in the output.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

matplotlib.rcParams["svg.hashsalt"] = "ddtool"
matplotlib.rcParams["svg.fonttype"] = "none"

_SAVE_KW = {"format": "svg", "metadata": {"Date": None}}


def save_scree(path, values) -> None:
    """Bar chart of the eigenvalues in decreasing order."""
    values = np.asarray(values, dtype=float)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.bar(np.arange(1, values.size + 1), values, color="C0")
    ax.set_xlabel("component")
    ax.set_ylabel("eigenvalue")
    ax.set_title("scree")
    ax.set_xticks(np.arange(1, values.size + 1))
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def save_factor_map(path, scores, ids, percents) -> None:
    """Rows plotted on the first two axes, one annotated point per row."""
    scores = np.asarray(scores, dtype=float)
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    ax.axhline(0.0, color="0.8", lw=0.8, zorder=0)
    ax.axvline(0.0, color="0.8", lw=0.8, zorder=0)
    ax.scatter(scores[:, 0], scores[:, 1], color="C0", s=18)
    for name, (sx, sy) in zip(ids, scores[:, :2]):
        ax.annotate(
            str(name), (sx, sy), textcoords="offset points", xytext=(4, 4), fontsize=8
        )
    ax.set_xlabel(f"axis 1 ({percents[0]:.1f}%)")
    ax.set_ylabel(f"axis 2 ({percents[1]:.1f}%)")
    ax.set_title("factor map")
    ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def save_rv_heatmap(path, rv_matrix, labels) -> None:
    """RV similarities as a labeled cell grid with a colorbar."""
    r = np.asarray(rv_matrix, dtype=float)
    k = r.shape[0]
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    mesh = ax.pcolormesh(r[::-1], cmap="viridis", vmin=0.0, vmax=1.0)
    ax.set_xticks(np.arange(k) + 0.5, labels, rotation=45, ha="right")
    ax.set_yticks(np.arange(k) + 0.5, labels[::-1])
    ax.set_title("RV similarity")
    fig.colorbar(mesh, ax=ax)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def save_interstructure(path, similarity, labels) -> None:
    """Studies on the top two eigenvectors of their similarity matrix.

    Coordinates are eigenvector entries scaled by the square roots of the
    (clamped) eigenvalues, the usual picture of how the studies relate.
    """
    s = np.asarray(similarity, dtype=float)
    vals, vecs = np.linalg.eigh(0.5 * (s + s.T))
    vals = vals[::-1]
    vecs = vecs[:, ::-1]
    coords = np.zeros((s.shape[0], 2))
    for axis in range(min(2, vals.size)):
        lam = max(vals[axis], 0.0)
        col = vecs[:, axis]
        top = np.argmax(np.abs(col))
        if col[top] < 0:
            col = -col
        coords[:, axis] = np.sqrt(lam) * col
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    ax.axhline(0.0, color="0.8", lw=0.8, zorder=0)
    ax.axvline(0.0, color="0.8", lw=0.8, zorder=0)
    ax.scatter(coords[:, 0], coords[:, 1], color="C1", s=24)
    for name, (sx, sy) in zip(labels, coords):
        ax.annotate(
            str(name), (sx, sy), textcoords="offset points", xytext=(4, 4), fontsize=9
        )
    ax.set_xlabel("axis 1")
    ax.set_ylabel("axis 2")
    ax.set_title("interstructure")
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)

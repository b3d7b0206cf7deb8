"""Data triplets (X, Q, D) and their spectral decomposition.

A triplet couples an n x p data matrix X with a metric Q on column space
(p x p) and a metric D on row space (n x n).  The two derived operators

* ``V = X.T @ D @ X`` (column-side cross product) and
* ``W = X @ Q @ X.T`` (row-side Gram operator)

share their nonzero eigenvalues once weighted by the opposing metric: V Q and
W D have the same spectrum.  :func:`diagram_eigen` computes both eigenbases at
once by symmetrizing with the metric square roots: the singular value
decomposition of ``A = D^(1/2) X Q^(1/2)`` yields eigenvectors of the
symmetric forms ``Q^(1/2) V Q^(1/2)`` and ``D^(1/2) W D^(1/2)``, which map
back to Q-orthonormal column vectors and D-orthonormal row vectors.  The two
sides are tied exactly by the transfer relation ``X Q v_k = sqrt(lam_k) w_k``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, RankMismatch
from .linalg import RANK_TOL, SpdMatrix, as_matrix, fix_signs


@dataclass(frozen=True)
class Triplet:
    """Data matrix plus the metrics on its column and row spaces."""

    x: np.ndarray
    q: SpdMatrix
    d: SpdMatrix

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def p(self) -> int:
        return self.x.shape[1]


@dataclass(frozen=True)
class DiagramEigen:
    """Joint eigendecomposition of a triplet.

    ``values`` has length ``r = min(n, p)``, descending and nonnegative.
    ``col_vectors`` (p x r) is Q-orthonormal, ``row_vectors`` (n x r) is
    D-orthonormal, and for every value above the rank cutoff the transfer
    relation ``X Q col_k = sqrt(values_k) row_k`` holds.  ``rank`` counts the
    values above ``RANK_TOL * values[0]``.
    """

    values: np.ndarray
    col_vectors: np.ndarray
    row_vectors: np.ndarray
    rank: int


def make_triplet(x, q: SpdMatrix, d: SpdMatrix) -> Triplet:
    """Validate shapes and assemble a triplet.

    Parameters
    ----------
    x : (n, p) array_like
        Data matrix with finite entries.  Centering is the caller's business;
        see :func:`center_columns`.
    q : SpdMatrix
        Column-space metric, ``q.dim == p``.
    d : SpdMatrix
        Row-space metric, ``d.dim == n``.
    """
    xm = as_matrix(x, "triplet data")
    n, p = xm.shape
    if q.dim != p:
        raise DimensionMismatch(
            f"column metric has dim {q.dim}, data has {p} columns"
        )
    if d.dim != n:
        raise DimensionMismatch(f"row metric has dim {d.dim}, data has {n} rows")
    xm = xm.copy()
    xm.flags.writeable = False
    return Triplet(x=xm, q=q, d=d)


def crossprod_v(t: Triplet) -> np.ndarray:
    """Column-side cross product ``X.T @ D @ X``, symmetrized."""
    v = t.x.T @ t.d.mat @ t.x
    return 0.5 * (v + v.T)


def gram_w(t: Triplet) -> np.ndarray:
    """Row-side Gram operator ``X @ Q @ X.T``, symmetrized."""
    w = t.x @ t.q.mat @ t.x.T
    return 0.5 * (w + w.T)


def diagram_eigen(t: Triplet) -> DiagramEigen:
    """Decompose a triplet into its principal axes and components.

    Computes the SVD of ``D^(1/2) X Q^(1/2)`` (the work happens on the
    smaller of the two sides) and maps the singular vectors back through the
    inverse metric square roots.  Squared singular values are the shared
    eigenvalues of V Q and W D.  Both returned bases cover the full
    ``min(n, p)`` columns, including the null directions, so orthonormality
    holds for every column while the transfer relation pins down the retained
    ones.

    Returns
    -------
    DiagramEigen
    """
    d_half = t.d.power(0.5)
    a = d_half @ t.x @ t.q.power(0.5)
    try:
        u, s, vt = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD failed to converge: {exc}") from exc
    values = s**2
    col = t.q.power(-0.5) @ vt.T
    row = t.d.power(-0.5) @ u
    if t.q.semidefinite:
        # With a rank-deficient metric the pseudo-inverse square root only
        # recovers the range component; the eigenvectors of V Q come from
        # transferring the row side back instead.  Null columns keep the
        # pseudo-inverse mapping as placeholders.
        if values.size and values[0] > 0.0:
            keep = values > RANK_TOL * values[0]
        else:
            keep = np.zeros(values.size, dtype=bool)
        col[:, keep] = (t.x.T @ (d_half @ u[:, keep])) / s[keep]
    # One sign choice serves both sides: the transfer relation ties row_k to
    # col_k wherever the value is nonzero, so flipping them in tandem keeps it.
    signs = fix_signs(col)
    col = col * signs
    row = row * signs
    rank = 0
    if values.size and values[0] > 0.0:
        rank = int(np.count_nonzero(values > RANK_TOL * values[0]))
    if rank < values.size:
        null_signs = fix_signs(row[:, rank:])
        row[:, rank:] *= null_signs
    values = values.copy()
    values.flags.writeable = False
    return DiagramEigen(values=values, col_vectors=col, row_vectors=row, rank=rank)


def transfer_row_vectors(t: Triplet, e: DiagramEigen) -> np.ndarray:
    """Rebuild the retained row vectors from the column side.

    Returns ``X @ Q @ col_vectors[:, :rank]`` with column k scaled by
    ``1/sqrt(values[k])``; equal to ``e.row_vectors[:, :rank]`` up to the
    eigen tolerance.  Raises ``RankMismatch`` when the decomposition retained
    nothing.
    """
    if e.rank == 0:
        raise RankMismatch("decomposition has rank zero, nothing to transfer")
    lam = e.values[: e.rank]
    return (t.x @ (t.q.mat @ e.col_vectors[:, : e.rank])) / np.sqrt(lam)


def total_inertia(t: Triplet) -> float:
    """Trace of V Q (equivalently of W D), computed on the smaller side."""
    if t.p <= t.n:
        return float(np.sum(crossprod_v(t) * t.q.mat))
    return float(np.sum(gram_w(t) * t.d.mat))


def center_columns(x, d: SpdMatrix) -> np.ndarray:
    """Subtract the D-weighted mean from every column.

    Weights are the row sums of D normalized to total one, so for a diagonal
    metric this is the classical weighted mean.  The result satisfies
    ``ones @ D @ centered == 0`` and centering twice changes nothing.
    """
    xm = as_matrix(x, "centering input")
    if d.dim != xm.shape[0]:
        raise DimensionMismatch(
            f"row metric has dim {d.dim}, data has {xm.shape[0]} rows"
        )
    w = d.mat.sum(axis=1)
    w = w / w.sum()
    return xm - w @ xm

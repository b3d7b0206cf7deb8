"""Comparing several studies that share their rows.

Operators of the form ``W = X Q X.T`` live in a common space once the row
metric D is fixed, whatever the column count of each study.  The trace inner
product ``covv(W1, W2) = tr(W1 D W2 D)`` turns that space into a Euclidean
one; its cosine is the RV coefficient, a similarity in [0, 1] that is 1
exactly when one operator is a positive multiple of the other and 0 exactly
when the two data sets are D-orthogonal.

:func:`statis` builds on this: the matrix of pairwise similarities is itself
decomposed, its leading eigenvector (nonnegative by Perron-Frobenius) gives
one weight per study, and the weighted average of the operators is the
compromise, analyzed like any other row-side operator.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateId,
    NotPositiveDefinite,
    NotSymmetric,
    PerronAmbiguity,
    UsageError,
    ZeroOperator,
)
from .linalg import EIG_TOL, RANK_TOL, SYM_TOL, SpdMatrix, as_matrix, sym_eigen
from .triplet import Triplet, gram_w

PERRON_GAP_TOL = 1e-9
D_MATCH_TOL = 1e-12
PSD_REJECT_TOL = 1e-8


def _check_operator(w, d: SpdMatrix, name: str) -> np.ndarray:
    m = as_matrix(w, name)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")
    if m.shape[0] != d.dim:
        raise DimensionMismatch(
            f"{name} has dim {m.shape[0]}, row metric has dim {d.dim}"
        )
    scale = np.linalg.norm(m)
    if scale > 0.0 and np.linalg.norm(m - m.T) > SYM_TOL * scale:
        raise NotSymmetric(f"{name} is not symmetric within tolerance")
    return 0.5 * (m + m.T)


def covv(w1, w2, d: SpdMatrix) -> float:
    """Trace inner product ``tr(W1 D W2 D)`` of two row-side operators."""
    m1 = _check_operator(w1, d, "first operator")
    m2 = _check_operator(w2, d, "second operator")
    a = m1 @ d.mat
    b = m2 @ d.mat
    return float(np.sum(a * b.T))


def _require_psd(m: np.ndarray, name: str) -> None:
    vals = np.linalg.eigvalsh(m)
    top = float(np.max(np.abs(vals))) if vals.size else 0.0
    if top > 0.0 and vals[0] < -PSD_REJECT_TOL * top:
        raise NotPositiveDefinite(f"{name} is indefinite (eigenvalue {vals[0]:.3e})")


def rv(w1, w2, d: SpdMatrix) -> float:
    """RV similarity of two nonnegative definite row-side operators.

    ``covv(w1, w2) / sqrt(covv(w1, w1) * covv(w2, w2))``, clamped into
    [0, 1].  Indefinite inputs are rejected with ``NotPositiveDefinite`` and
    zero operators with ``ZeroOperator`` (the cosine is undefined there).
    """
    m1 = _check_operator(w1, d, "first operator")
    m2 = _check_operator(w2, d, "second operator")
    _require_psd(m1, "first operator")
    _require_psd(m2, "second operator")
    n11 = covv(m1, m1, d)
    n22 = covv(m2, m2, d)
    if n11 <= 0.0:
        raise ZeroOperator("first operator is zero, RV undefined")
    if n22 <= 0.0:
        raise ZeroOperator("second operator is zero, RV undefined")
    val = covv(m1, m2, d) / np.sqrt(n11 * n22)
    return float(min(1.0, max(0.0, val)))


@dataclass(frozen=True)
class DiagramCollection:
    """Two or more triplets over the same weighted rows, with labels."""

    d: SpdMatrix
    diagrams: tuple
    labels: tuple


def make_collection(diagrams, labels=None) -> DiagramCollection:
    """Validate a family of triplets sharing one row metric.

    The triplets may have different column counts but must agree on the row
    metric entrywise within ``1e-12``.  Labels default to ``table1``,
    ``table2``, ... and must be unique.
    """
    diagrams = tuple(diagrams)
    if len(diagrams) < 2:
        raise DimensionMismatch("a collection needs at least two diagrams")
    for t in diagrams:
        if not isinstance(t, Triplet):
            raise DimensionMismatch("collection entries must be triplets")
    d = diagrams[0].d
    for i, t in enumerate(diagrams[1:], start=2):
        if t.d.dim != d.dim or np.max(np.abs(t.d.mat - d.mat)) > D_MATCH_TOL:
            raise DimensionMismatch(
                f"diagram {i} does not share the collection row metric"
            )
    if labels is None:
        labels = tuple(f"table{i}" for i in range(1, len(diagrams) + 1))
    else:
        labels = tuple(str(s) for s in labels)
        if len(labels) != len(diagrams):
            raise DimensionMismatch(
                f"{len(labels)} labels for {len(diagrams)} diagrams"
            )
        seen = set()
        for s in labels:
            if s in seen:
                raise DuplicateId(f"duplicate diagram label {s!r}")
            seen.add(s)
    return DiagramCollection(d=d, diagrams=diagrams, labels=labels)


def coefficient_matrices(coll: DiagramCollection) -> tuple[np.ndarray, np.ndarray]:
    """Pairwise (covv, rv) matrices of a collection.

    The first matrix holds trace inner products (symmetric, nonnegative
    definite); the second the RV similarities with an exact unit diagonal.
    A zero diagram is reported by label via ``ZeroOperator``.
    """
    ws = [gram_w(t) for t in coll.diagrams]
    k = len(ws)
    dm = coll.d
    c = np.zeros((k, k))
    for i in range(k):
        for j in range(i, k):
            c[i, j] = c[j, i] = covv(ws[i], ws[j], dm)
    norms = np.sqrt(np.diag(c))
    for i, nrm in enumerate(norms):
        if nrm <= 0.0:
            raise ZeroOperator(
                f"diagram {coll.labels[i]!r} has a zero operator, RV undefined"
            )
    r = c / np.outer(norms, norms)
    r = np.clip(0.5 * (r + r.T), 0.0, 1.0)
    np.fill_diagonal(r, 1.0)
    return c, r


@dataclass(frozen=True)
class OperatorEigen:
    """Eigendecomposition of ``W @ D`` for a symmetric nonnegative W.

    ``vectors`` columns are D-orthonormal eigenvectors; ``values`` are the
    (clamped-at-zero) eigenvalues, descending; ``rank`` counts values above
    the rank cutoff.
    """

    values: np.ndarray
    vectors: np.ndarray
    rank: int


def operator_eigen(w, d: SpdMatrix) -> OperatorEigen:
    """Decompose a row-side operator through D^(1/2) symmetrization."""
    m = _check_operator(w, d, "operator")
    d_half = d.power(0.5)
    e = sym_eigen(d_half @ m @ d_half)
    vals = e.values
    top = float(np.max(np.abs(vals))) if vals.size else 0.0
    if top > 0.0 and vals[-1] < -EIG_TOL * top:
        raise NotPositiveDefinite(
            f"operator has eigenvalue {vals[-1]:.3e}, expected nonnegative"
        )
    vals = np.clip(vals, 0.0, None)
    vectors = d.power(-0.5) @ e.vectors
    rank = 0
    if vals.size and vals[0] > 0.0:
        rank = int(np.count_nonzero(vals > RANK_TOL * vals[0]))
    return OperatorEigen(values=vals, vectors=vectors, rank=rank)


@dataclass(frozen=True)
class StatisResult:
    """Output of :func:`statis`.

    ``weights`` is the normalized leading eigenvector of the chosen
    similarity matrix, ``compromise_w`` the weighted sum of the operators,
    ``compromise_eigen`` its decomposition and ``distances_to_compromise``
    the RV of each diagram to the compromise (1 means identical shape).
    """

    covv_matrix: np.ndarray
    rv_matrix: np.ndarray
    weights: np.ndarray
    compromise_w: np.ndarray
    compromise_eigen: OperatorEigen
    distances_to_compromise: np.ndarray


def statis(coll: DiagramCollection, basis: str = "rv") -> StatisResult:
    """Consensus analysis of a diagram collection.

    Parameters
    ----------
    coll : DiagramCollection
    basis : {"rv", "covv"}
        Which similarity matrix supplies the study weights.  The normalized
        RV matrix is the default; both have nonnegative entries, so the
        leading eigenvector can be taken entrywise nonnegative.

    Raises
    ------
    PerronAmbiguity
        When the leading eigenvalue of the chosen matrix is not simple
        within a relative gap of ``1e-9`` (for example two mutually
        orthogonal studies), so no canonical weight vector exists.
    """
    c, r = coefficient_matrices(coll)
    if basis == "covv":
        s = c
    elif basis == "rv":
        s = r
    else:
        raise UsageError(f"unknown similarity basis {basis!r}")
    e = sym_eigen(s)
    if e.values.size > 1:
        gap = e.values[0] - e.values[1]
        if gap < PERRON_GAP_TOL * abs(e.values[0]):
            raise PerronAmbiguity(
                f"leading eigenvalue gap {gap:.3e} is below "
                f"{PERRON_GAP_TOL:g} * {e.values[0]:.3e}, weights not unique"
            )
    u = e.vectors[:, 0]
    if u.sum() < 0.0:
        u = -u
    u = np.clip(u, 0.0, None)
    weights = u / u.sum()
    ws = [gram_w(t) for t in coll.diagrams]
    compromise = np.zeros((coll.d.dim, coll.d.dim))
    for wi, w in zip(weights, ws):
        compromise += wi * w
    compromise = 0.5 * (compromise + compromise.T)
    ce = operator_eigen(compromise, coll.d)
    distances = np.array([rv(w, compromise, coll.d) for w in ws])
    return StatisResult(
        covv_matrix=c,
        rv_matrix=r,
        weights=weights,
        compromise_w=compromise,
        compromise_eigen=ce,
        distances_to_compromise=distances,
    )

"""Classical analyses expressed as triplets.

Plain and standardized PCA, correspondence analysis of contingency tables,
and PCA with respect to instrumental variables (reduced-rank regression of
one table on another).  Each method only builds the right (X, Q, D) and hands
it to :func:`ddtool.triplet.diagram_eigen`.

Score scaling convention, used throughout: the k-th column of a score matrix
is ``sqrt(values[k]) * row_vectors[:, k]``, so component k carries D-weighted
variance ``values[k]``.  Divide by the square root of the eigenvalue if unit
variance scores are wanted.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadWeights,
    DegenerateTable,
    DimensionMismatch,
    EigengapViolation,
    NonFiniteValue,
    NonIntegerCount,
    RankExceeded,
    SingularSxx,
    ZeroVarianceColumn,
)
from .linalg import (
    RANK_TOL,
    SpdMatrix,
    as_matrix,
    psd_check,
    spd_diagonal,
    spd_identity,
)
from .triplet import (
    DiagramEigen,
    Triplet,
    center_columns,
    diagram_eigen,
    make_triplet,
)

VAR_TOL = 1e-12
COND_TOL = 1e12
GAP_TOL = 1e-9
WEIGHT_SUM_TOL = 1e-10


def _check_weights(weights, n: int) -> np.ndarray:
    w = np.asarray(weights, dtype=float).ravel()
    if w.size != n:
        raise DimensionMismatch(f"got {w.size} row weights for {n} rows")
    if not np.all(np.isfinite(w)):
        raise NonFiniteValue("row weights must be finite")
    if np.any(w <= 0.0):
        raise BadWeights("row weights must be strictly positive")
    if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise BadWeights(f"row weights sum to {w.sum():.12g}, expected 1")
    return w


def pca_triplet(x, d_weights, standardize: bool = False) -> Triplet:
    """Centered (optionally standardized) PCA triplet.

    Parameters
    ----------
    x : (n, p) array_like
        Raw data, at least two rows.
    d_weights : (n,) array_like
        Strictly positive row weights summing to one.  Uniform ``1/n``
        recovers ordinary PCA with eigenvalues ``singular_values**2 / n``.
    standardize : bool
        If true, the column metric is ``diag(1 / variance_j)`` with
        variances taken under the row weights, which fixes the total inertia
        at the number of columns.  Otherwise the metric is the identity.

    Raises
    ------
    BadWeights, ZeroVarianceColumn, DimensionMismatch
    """
    xm = as_matrix(x, "pca input")
    n, p = xm.shape
    if n < 2:
        raise DimensionMismatch("pca needs at least two rows")
    w = _check_weights(d_weights, n)
    d = spd_diagonal(w)
    xc = center_columns(xm, d)
    if standardize:
        variances = w @ (xc**2)
        top = float(np.max(variances))
        if top <= 0.0 or np.any(variances < VAR_TOL * top):
            worst = int(np.argmin(variances))
            raise ZeroVarianceColumn(
                f"column {worst} has variance {variances[worst]:.3e}, "
                "cannot standardize"
            )
        q = spd_diagonal(1.0 / variances)
    else:
        q = spd_identity(p)
    return make_triplet(xc, q, d)


def principal_components(t: Triplet, e: DiagramEigen, k: int) -> np.ndarray:
    """First k score columns, column i scaled to variance ``values[i]``.

    ``k`` may be zero (empty result); exceeding ``e.rank`` raises
    ``RankExceeded``.  The scores are eigenvectors of W D, so they come
    straight from the stored row vectors with no further metric factoring.
    """
    if k < 0 or k > e.rank:
        raise RankExceeded(f"requested {k} components, rank is {e.rank}")
    if k == 0:
        return np.empty((t.n, 0))
    return e.row_vectors[:, :k] * np.sqrt(e.values[:k])


@dataclass(frozen=True)
class ContingencyTable:
    """Nonnegative integer counts with zero-margin rows/columns dropped.

    ``dropped_rows`` / ``dropped_cols`` record the original indices removed
    because their margin was zero; ``m`` is the grand total of the kept part
    (equal to the original total).
    """

    counts: np.ndarray
    m: float
    dropped_rows: tuple
    dropped_cols: tuple


def contingency_table(counts) -> ContingencyTable:
    """Validate raw counts and apply the zero-margin preprocessing."""
    raw = np.asarray(counts, dtype=float)
    if raw.ndim != 2 or raw.size == 0:
        raise DimensionMismatch(
            f"counts must form a nonempty 2-d table, got shape {raw.shape}"
        )
    if not np.all(np.isfinite(raw)):
        raise NonFiniteValue("counts contain NaN or infinite entries")
    rounded = np.rint(raw)
    bad = (raw != rounded) | (raw < 0)
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise NonIntegerCount(
            f"entry at row {i}, column {j} is {raw[i, j]!r}, "
            "expected a nonnegative integer"
        )
    keep_rows = raw.sum(axis=1) > 0
    keep_cols = raw.sum(axis=0) > 0
    kept = raw[keep_rows][:, keep_cols]
    if kept.size == 0:
        raise DegenerateTable("all rows or columns have zero margin")
    kept = kept.copy()
    kept.flags.writeable = False
    return ContingencyTable(
        counts=kept,
        m=float(kept.sum()),
        dropped_rows=tuple(np.flatnonzero(~keep_rows).tolist()),
        dropped_cols=tuple(np.flatnonzero(~keep_cols).tolist()),
    )


@dataclass(frozen=True)
class CaTriplet:
    """Correspondence analysis triplet with its marginal profiles.

    The data matrix holds relative departures from independence,
    ``F_ij / (r_i c_j) - 1``; the column metric is ``diag(c)`` and the row
    metric ``diag(r)``, which makes the matrix doubly centered and the total
    inertia equal to chi-squared over the grand total.
    """

    triplet: Triplet
    r: np.ndarray
    c: np.ndarray


def ca_triplet(table: ContingencyTable) -> CaTriplet:
    """Correspondence analysis triplet of a preprocessed table.

    Raises ``DegenerateTable`` when fewer than two rows or columns survived
    the zero-margin preprocessing.
    """
    counts = table.counts
    if counts.shape[0] < 2 or counts.shape[1] < 2:
        raise DegenerateTable(
            f"need at least a 2 x 2 table, have {counts.shape[0]} x "
            f"{counts.shape[1]} after dropping zero margins"
        )
    f = counts / table.m
    r = f.sum(axis=1)
    c = f.sum(axis=0)
    x = f / np.outer(r, c) - 1.0
    trip = make_triplet(x, spd_diagonal(c), spd_diagonal(r))
    return CaTriplet(triplet=trip, r=r, c=c)


def ca_chi2(table: ContingencyTable) -> float:
    """Pearson chi-squared against independence, ``E_ij = m * r_i * c_j``."""
    counts = table.counts
    if counts.shape[0] < 2 or counts.shape[1] < 2:
        raise DegenerateTable("chi-squared needs at least a 2 x 2 table")
    r = counts.sum(axis=1) / table.m
    c = counts.sum(axis=0) / table.m
    expected = table.m * np.outer(r, c)
    return float(np.sum((counts - expected) ** 2 / expected))


@dataclass(frozen=True)
class PcaivResult:
    """Output of :func:`pcaiv`.

    ``r_metric`` is the regression-induced metric R on the explanatory
    columns (possibly semidefinite), ``b`` holds the R-orthonormal axes
    ``beta_k / sqrt(values[k])``, ``fitted_triplet`` is (X, R, D) and
    ``eigen`` its decomposition truncated to the requested rank.
    """

    r_metric: SpdMatrix
    b: np.ndarray
    fitted_triplet: Triplet
    eigen: DiagramEigen


def pcaiv(x, y, q: SpdMatrix, d: SpdMatrix, rank_q: int | None = None) -> PcaivResult:
    """PCA of Y with respect to instrumental variables X.

    Finds the column metric R on X that makes the triplet (X, R, D) closest
    to (Y, Q, D) in the operator sense:

        ``R = Sxx^-1 Sxy Q Syx Sxx^-1``

    with ``Sxx = X.T D X`` and ``Sxy = X.T D Y``.  The row-side operator
    X R X.T then equals ``Yhat Q Yhat.T`` for the D-weighted least squares
    fit ``Yhat`` of Y on X, so the analysis is a PCA of the fitted values.

    Parameters
    ----------
    x : (n, p) array_like
        Explanatory table; ``Sxx`` must be well conditioned (condition
        number at most ``COND_TOL``), otherwise ``SingularSxx``.
    y : (n, py) array_like
        Response table.
    q : SpdMatrix
        Metric on the response columns.
    d : SpdMatrix
        Shared row metric.
    rank_q : int or None
        Components to keep.  ``None`` keeps the full effective rank.  Must
        not exceed ``min(rank(X), rank(Y))`` nor the effective rank of the
        fitted triplet (``RankExceeded``), and the eigenvalue gap at the
        truncation point must clear ``GAP_TOL`` times the leading value
        (``EigengapViolation``), since the retained axes are only
        well-defined for simple eigenvalues.
    """
    xm = as_matrix(x, "explanatory table")
    ym = as_matrix(y, "response table")
    n, p = xm.shape
    if ym.shape[0] != n:
        raise DimensionMismatch(
            f"explanatory table has {n} rows, response has {ym.shape[0]}"
        )
    if q.dim != ym.shape[1]:
        raise DimensionMismatch(
            f"response metric has dim {q.dim}, response has {ym.shape[1]} columns"
        )
    if d.dim != n:
        raise DimensionMismatch(f"row metric has dim {d.dim}, tables have {n} rows")

    dm = d.mat
    sxx = xm.T @ dm @ xm
    sxx = 0.5 * (sxx + sxx.T)
    sxx_eigs = np.linalg.eigvalsh(sxx)
    if sxx_eigs[0] <= 0.0 or sxx_eigs[-1] / sxx_eigs[0] > COND_TOL:
        raise SingularSxx(
            f"explanatory cross product has condition number beyond {COND_TOL:g}"
        )
    sxy = xm.T @ dm @ ym
    coef = np.linalg.solve(sxx, sxy)
    r = coef @ q.mat @ coef.T
    r_metric = psd_check(0.5 * (r + r.T))

    if rank_q is not None:
        if rank_q < 0:
            raise RankExceeded("rank must be nonnegative")
        max_rank = min(np.linalg.matrix_rank(xm), np.linalg.matrix_rank(ym))
        if rank_q > max_rank:
            raise RankExceeded(
                f"requested rank {rank_q} exceeds data rank {max_rank}"
            )

    trip = make_triplet(xm, r_metric, d)
    e = diagram_eigen(trip)
    # Effective rank is judged against the response inertia, not the leading
    # eigenvalue: when X and Y are D-orthogonal the fitted spectrum is pure
    # rounding noise and must count as rank zero.
    response_scale = float(np.sum((ym.T @ dm @ ym) * q.mat))
    if response_scale > 0.0:
        effective = int(np.count_nonzero(e.values > RANK_TOL * response_scale))
        effective = min(effective, e.rank)
    else:
        effective = 0
    keep = effective if rank_q is None else rank_q
    if keep > effective:
        raise RankExceeded(
            f"requested rank {keep} exceeds effective rank {effective}"
        )
    if 0 < keep < e.values.size and e.values[0] > 0.0:
        gap = e.values[keep - 1] - e.values[keep]
        if gap < GAP_TOL * e.values[0]:
            raise EigengapViolation(
                f"eigenvalue gap {gap:.3e} at cut {keep} is below "
                f"{GAP_TOL:g} * {e.values[0]:.3e}"
            )
    truncated = DiagramEigen(
        values=e.values[:keep],
        col_vectors=e.col_vectors[:, :keep],
        row_vectors=e.row_vectors[:, :keep],
        rank=keep,
    )
    return PcaivResult(
        r_metric=r_metric,
        b=truncated.col_vectors,
        fitted_triplet=trip,
        eigen=truncated,
    )

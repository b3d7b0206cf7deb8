"""Symmetric eigendecomposition kernel and SPD metric helpers.

Dense, double precision, desk scale.  All tolerance checks are relative:

* ``SYM_TOL``   symmetry, ``||A - A.T||_F <= SYM_TOL * ||A||_F``
* ``SPD_TOL``   definiteness cutoff relative to the largest eigenvalue
* ``EIG_TOL``   residual tolerance for eigen identities
* ``RANK_TOL``  rank cutoff relative to the largest eigenvalue

Eigenvector sign convention, used everywhere so repeated runs agree: within
each column the entry of largest absolute value is made positive, ties broken
by the lowest row index.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NonFiniteValue,
    NonSquare,
    NotPositiveDefinite,
    NotSymmetric,
)

SYM_TOL = 1e-8
SPD_TOL = 1e-12
EIG_TOL = 1e-10
RANK_TOL = 1e-10


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-d float array, rejecting NaN/Inf and empty shapes."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise DimensionMismatch(
            f"{name} must be a nonempty 2-d array, got shape {m.shape}"
        )
    if not np.all(np.isfinite(m)):
        raise NonFiniteValue(f"{name} contains NaN or infinite entries")
    return m


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Return a sign vector making each column's largest-|entry| positive."""
    idx = np.argmax(np.abs(vectors), axis=0)
    picked = vectors[idx, np.arange(vectors.shape[1])]
    signs = np.where(picked < 0.0, -1.0, 1.0)
    return signs


@dataclass(frozen=True)
class SymEigen:
    """Eigendecomposition of a symmetric matrix.

    ``values`` are sorted descending, ``vectors`` holds the matching
    orthonormal eigenvectors as columns, sign-normalized.
    """

    values: np.ndarray
    vectors: np.ndarray


def sym_eigen(a) -> SymEigen:
    """Full eigendecomposition of a symmetric matrix.

    Parameters
    ----------
    a : (d, d) array_like
        Square matrix, symmetric within ``SYM_TOL`` (relative Frobenius).

    Returns
    -------
    SymEigen
        Values descending, orthonormal sign-normalized columns.
    """
    m = as_matrix(a, "sym_eigen input")
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {m.shape}")
    scale = np.linalg.norm(m)
    if scale > 0.0 and np.linalg.norm(m - m.T) > SYM_TOL * scale:
        raise NotSymmetric(
            "matrix is not symmetric within relative tolerance "
            f"{SYM_TOL:g} (size {m.shape[0]})"
        )
    sym = 0.5 * (m + m.T)
    try:
        vals, vecs = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigendecomposition failed: {exc}") from exc
    vals = vals[::-1]
    vecs = vecs[:, ::-1]
    vecs = vecs * fix_signs(vecs)
    return SymEigen(values=vals, vectors=vecs)


class SpdMatrix:
    """A validated symmetric positive (semi)definite metric.

    Wraps the symmetrized matrix together with its eigendecomposition so
    fractional powers are cheap.  Instances are immutable; build them with
    :func:`spd_check`, :func:`psd_check` or :func:`spd_diagonal`.
    """

    __slots__ = ("_mat", "_eig", "_semidefinite")

    def __init__(self, mat: np.ndarray, eig: SymEigen, semidefinite: bool = False):
        m = np.array(mat, dtype=float)
        m.flags.writeable = False
        self._mat = m
        self._eig = eig
        self._semidefinite = bool(semidefinite)

    @property
    def mat(self) -> np.ndarray:
        return self._mat

    @property
    def dim(self) -> int:
        return self._mat.shape[0]

    @property
    def semidefinite(self) -> bool:
        return self._semidefinite

    @property
    def eigenvalues(self) -> np.ndarray:
        return self._eig.values

    def power(self, a: float) -> np.ndarray:
        """Spectral power ``sum_k lam_k**a v_k v_k.T`` as a symmetric matrix.

        In semidefinite mode eigenvalues are clamped at zero and negative
        powers act as pseudo-inverse powers: only eigenvalues above
        ``RANK_TOL`` times the largest are inverted, the rest map to zero.
        """
        if a == 0:
            return np.eye(self.dim)
        vals = self._eig.values
        if self._semidefinite:
            vals = np.clip(vals, 0.0, None)
        if a < 0:
            top = vals[0] if vals.size else 0.0
            keep = vals > RANK_TOL * top
            powered = np.zeros_like(vals)
            powered[keep] = vals[keep] ** a
        else:
            powered = vals**a
        vecs = self._eig.vectors
        out = (vecs * powered) @ vecs.T
        return 0.5 * (out + out.T)

    def __repr__(self) -> str:  # pragma: no cover
        kind = "psd" if self._semidefinite else "spd"
        return f"SpdMatrix(dim={self.dim}, kind={kind})"


def spd_check(a) -> SpdMatrix:
    """Validate symmetry and strict positive definiteness.

    Raises ``NotSymmetric`` or ``NotPositiveDefinite``; the definiteness
    cutoff is ``SPD_TOL`` relative to the largest eigenvalue.
    """
    eig = sym_eigen(a)
    vals = eig.values
    if vals[0] <= 0.0 or vals[-1] <= SPD_TOL * vals[0]:
        raise NotPositiveDefinite(
            f"smallest eigenvalue {vals[-1]:.3e} is at or below the cutoff "
            f"{SPD_TOL:g} * {vals[0]:.3e}"
        )
    sym = 0.5 * (np.asarray(a, dtype=float) + np.asarray(a, dtype=float).T)
    return SpdMatrix(sym, eig)


def psd_check(a) -> SpdMatrix:
    """Like :func:`spd_check` but admits a zero eigenvalue tail.

    Used for derived metrics that are only semidefinite (for example a
    regression-induced metric of deficient rank).  Eigenvalues below
    ``-SYM_TOL`` times the largest magnitude are rejected.
    """
    eig = sym_eigen(a)
    vals = eig.values
    top = np.max(np.abs(vals)) if vals.size else 0.0
    if top > 0.0 and vals[-1] < -SYM_TOL * top:
        raise NotPositiveDefinite(
            f"eigenvalue {vals[-1]:.3e} is negative beyond tolerance"
        )
    sym = 0.5 * (np.asarray(a, dtype=float) + np.asarray(a, dtype=float).T)
    return SpdMatrix(sym, eig, semidefinite=True)


def spd_diagonal(entries) -> SpdMatrix:
    """Build the diagonal metric ``diag(entries)`` with exact diagonal powers."""
    w = np.asarray(entries, dtype=float).ravel()
    if w.size == 0:
        raise DimensionMismatch("diagonal metric needs at least one entry")
    if not np.all(np.isfinite(w)):
        raise NonFiniteValue("diagonal metric entries must be finite")
    if np.max(w) <= 0.0 or np.min(w) <= SPD_TOL * np.max(w):
        raise NotPositiveDefinite(
            f"diagonal entries must be positive, smallest is {np.min(w):.3e}"
        )
    order = np.argsort(-w, kind="stable")
    eig = SymEigen(values=w[order], vectors=np.eye(w.size)[:, order])
    return SpdMatrix(np.diag(w), eig)


def spd_identity(dim: int) -> SpdMatrix:
    """The identity metric of the given dimension."""
    return spd_diagonal(np.ones(dim))


def spd_factor(q: SpdMatrix) -> np.ndarray:
    """Symmetric square root ``L`` with ``L @ L.T == q.mat`` (L == L.T)."""
    return q.power(0.5)


def spd_power(q: SpdMatrix, a: float) -> np.ndarray:
    """Spectral power of a validated metric; see :meth:`SpdMatrix.power`."""
    return q.power(a)

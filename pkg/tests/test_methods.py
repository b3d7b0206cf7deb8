import numpy as np
import pytest
from numpy.testing import assert_allclose

from ddtool.comparison import covv, rv
from ddtool.errors import (
    BadWeights,
    DegenerateTable,
    DimensionMismatch,
    EigengapViolation,
    NonIntegerCount,
    RankExceeded,
    SingularSxx,
    ZeroVarianceColumn,
)
from ddtool.linalg import spd_diagonal, spd_identity
from ddtool.methods import (
    ca_chi2,
    ca_triplet,
    contingency_table,
    pca_triplet,
    pcaiv,
    principal_components,
)
from ddtool.triplet import crossprod_v, diagram_eigen, gram_w, total_inertia

from conftest import random_spd, uniform_weights


# -- pca ---------------------------------------------------------------------


def test_pca_triplet_rejects_bad_weights(rng):
    x = rng.normal(size=(4, 2))
    with pytest.raises(BadWeights):
        pca_triplet(x, [0.5, 0.5, 0.0, 0.0])
    with pytest.raises(BadWeights):
        pca_triplet(x, [0.5, 0.5, 0.5, 0.5])
    with pytest.raises(BadWeights):
        pca_triplet(x, [0.7, 0.4, -0.1, 0.0])
    with pytest.raises(DimensionMismatch):
        pca_triplet(x, [0.5, 0.5])


def test_pca_triplet_zero_variance_column():
    x = np.ones((5, 3))
    x[:, 0] = np.arange(5.0)
    with pytest.raises(ZeroVarianceColumn):
        pca_triplet(x, uniform_weights(5), standardize=True)


def test_pca_plain_eigenvalues_are_scaled_singular_values(rng):
    x = rng.normal(size=(9, 4))
    t = pca_triplet(x, uniform_weights(9))
    e = diagram_eigen(t)
    xc = x - x.mean(axis=0)
    s = np.linalg.svd(xc, compute_uv=False)
    assert_allclose(e.values, s**2 / 9.0, rtol=1e-10, atol=1e-12)


def test_pca_standardized_inertia_is_column_count(rng):
    for n, p in ((10, 4), (6, 5)):
        x = rng.normal(size=(n, p)) * rng.uniform(0.5, 20.0, size=p)
        t = pca_triplet(x, uniform_weights(n), standardize=True)
        assert abs(total_inertia(t) - p) <= 1e-10 * p


def test_pca_weighted_mean_is_zero(rng):
    x = rng.normal(size=(7, 3))
    w = rng.uniform(0.5, 2.0, size=7)
    w = w / w.sum()
    t = pca_triplet(x, w, standardize=False)
    assert_allclose(w @ t.x, np.zeros(3), atol=1e-12)


def test_principal_components_match_svd_scores(rng):
    x = rng.normal(size=(8, 3))
    t = pca_triplet(x, uniform_weights(8))
    e = diagram_eigen(t)
    scores = principal_components(t, e, e.rank)
    xc = x - x.mean(axis=0)
    u, s, _ = np.linalg.svd(xc, full_matrices=False)
    expected = u * s
    for k in range(e.rank):
        same = np.linalg.norm(scores[:, k] - expected[:, k])
        flipped = np.linalg.norm(scores[:, k] + expected[:, k])
        assert min(same, flipped) <= 1e-9
    # variance of component k is the eigenvalue
    assert_allclose((scores**2).mean(axis=0), e.values[: e.rank], rtol=1e-10)


def test_principal_components_edge_counts(rng):
    x = rng.normal(size=(6, 3))
    t = pca_triplet(x, uniform_weights(6))
    e = diagram_eigen(t)
    assert principal_components(t, e, 0).shape == (6, 0)
    with pytest.raises(RankExceeded):
        principal_components(t, e, e.rank + 1)


def test_pca_scores_are_gram_eigenvectors(rng):
    x = rng.normal(size=(7, 4))
    t = pca_triplet(x, uniform_weights(7))
    e = diagram_eigen(t)
    scores = principal_components(t, e, e.rank)
    wd = gram_w(t) @ t.d.mat
    for k in range(e.rank):
        assert_allclose(wd @ scores[:, k], e.values[k] * scores[:, k], atol=1e-10)


# -- correspondence analysis -------------------------------------------------


def test_contingency_table_validation():
    with pytest.raises(NonIntegerCount):
        contingency_table([[1, 2], [3, 2.5]])
    with pytest.raises(NonIntegerCount):
        contingency_table([[1, -2], [3, 4]])
    with pytest.raises(DegenerateTable):
        contingency_table(np.zeros((3, 3)))


def test_contingency_table_drops_zero_margins():
    counts = np.array([[5, 0, 2], [0, 0, 0], [1, 0, 3]])
    table = contingency_table(counts)
    assert table.dropped_rows == (1,)
    assert table.dropped_cols == (1,)
    assert table.counts.shape == (2, 2)
    assert table.m == 11.0


def test_ca_degenerate_after_dropping():
    with pytest.raises(DegenerateTable):
        ca_triplet(contingency_table([[3, 0], [4, 0]]))


def test_ca_hand_case():
    table = contingency_table([[10, 0], [0, 10]])
    cat = ca_triplet(table)
    assert table.m == 20.0
    assert_allclose(cat.r, [0.5, 0.5], atol=1e-15)
    assert_allclose(cat.c, [0.5, 0.5], atol=1e-15)
    assert_allclose(cat.triplet.x, [[1.0, -1.0], [-1.0, 1.0]], atol=1e-12)
    assert abs(total_inertia(cat.triplet) - 1.0) <= 1e-12
    assert abs(ca_chi2(table) - 20.0) <= 1e-12


def test_ca_independence_table_has_zero_inertia():
    # margins representable exactly in binary: departures are exactly zero
    table = contingency_table(np.full((2, 4), 3))
    cat = ca_triplet(table)
    assert np.max(np.abs(cat.triplet.x)) == 0.0
    assert diagram_eigen(cat.triplet).rank == 0
    # a general outer-product table lands at rounding level
    counts = np.outer([1, 2, 3], [2, 3, 1]) * 4
    cat = ca_triplet(contingency_table(counts))
    assert np.max(np.abs(cat.triplet.x)) <= 1e-12
    assert total_inertia(cat.triplet) <= 1e-25


def test_ca_is_doubly_centered(rng):
    counts = rng.integers(1, 30, size=(6, 4))
    cat = ca_triplet(contingency_table(counts))
    x = cat.triplet.x
    assert_allclose(cat.r @ x, np.zeros(4), atol=1e-10)
    assert_allclose(x @ cat.c, np.zeros(6), atol=1e-10)


def test_ca_inertia_matches_chi2(rng):
    for _ in range(30):
        counts = rng.integers(0, 20, size=(5, 4))
        counts[0, 0] += 1  # keep the table nonempty
        table = contingency_table(counts)
        try:
            cat = ca_triplet(table)
        except DegenerateTable:
            continue
        chi2 = ca_chi2(table)
        inertia = total_inertia(cat.triplet)
        assert abs(table.m * inertia - chi2) <= 1e-9 * max(1.0, chi2)


# -- pcaiv -------------------------------------------------------------------


def _centered(rng, n, p):
    x = rng.normal(size=(n, p))
    return x - x.mean(axis=0)


def test_pcaiv_self_regression_recovers_metric(rng):
    n, p = 12, 3
    x = _centered(rng, n, p)
    q = random_spd(rng, p)
    d = spd_diagonal(uniform_weights(n))
    res = pcaiv(x, x, q, d)
    err = np.linalg.norm(res.r_metric.mat - q.mat)
    assert err <= 1e-9 * np.linalg.norm(q.mat)


def test_pcaiv_equals_pca_of_fitted_values(rng):
    n, px, py = 14, 3, 4
    x = _centered(rng, n, px)
    y = _centered(rng, n, py)
    q = spd_identity(py)
    d = spd_diagonal(uniform_weights(n))
    res = pcaiv(x, y, q, d)
    # normal-equations route, kept deliberately separate from the library path
    dm = d.mat
    coef, *_ = np.linalg.lstsq(x.T @ dm @ x, x.T @ dm @ y, rcond=None)
    yhat = x @ coef
    w_fit = gram_w(res.fitted_triplet)
    w_reg = yhat @ q.mat @ yhat.T
    assert np.linalg.norm(w_fit - w_reg) <= 1e-8 * max(1.0, np.linalg.norm(w_reg))


def test_pcaiv_pythagorean_split(rng):
    n, px, py = 10, 3, 3
    x = _centered(rng, n, px)
    y = _centered(rng, n, py)
    q = random_spd(rng, py)
    d = spd_diagonal(uniform_weights(n))
    res = pcaiv(x, y, q, d)
    g_y = y @ q.mat @ y.T
    g_r = gram_w(res.fitted_triplet)
    m = random_spd(rng, px).mat
    g_m = x @ m @ x.T

    def norm2(a):
        return covv(a, a, d)

    lhs = norm2(g_y - g_m)
    rhs = norm2(g_y - g_r) + norm2(g_r - g_m)
    assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs))


def test_pcaiv_axes_normalization(rng):
    n, px, py = 11, 4, 3
    x = _centered(rng, n, px)
    y = _centered(rng, n, py)
    d = spd_diagonal(uniform_weights(n))
    res = pcaiv(x, y, spd_identity(py), d, rank_q=2)
    rm = res.r_metric.mat
    v = crossprod_v(res.fitted_triplet)
    lam = res.eigen.values
    assert np.all(np.diff(lam) < 0)
    for k in range(2):
        beta = np.sqrt(lam[k]) * res.b[:, k]
        assert_allclose(v @ rm @ beta, lam[k] * beta, atol=1e-9 * max(1.0, lam[0]))
        assert abs(beta @ rm @ beta - lam[k]) <= 1e-9 * max(1.0, lam[k])


def test_pcaiv_orthogonal_response_gives_zero_rank(rng):
    n = 10
    d = spd_diagonal(uniform_weights(n))
    x = _centered(rng, n, 3)
    z = _centered(rng, n, 2)
    # strip the D-projection of z onto the columns of x
    dm = d.mat
    y = z - x @ np.linalg.solve(x.T @ dm @ x, x.T @ dm @ z)
    assert np.max(np.abs(x.T @ dm @ y)) <= 1e-12
    res = pcaiv(x, y, spd_identity(2), d, rank_q=0)
    assert res.eigen.rank == 0
    assert np.max(np.abs(res.r_metric.mat)) <= 1e-12
    with pytest.raises(RankExceeded):
        pcaiv(x, y, spd_identity(2), d, rank_q=1)


def test_pcaiv_singular_design(rng):
    n = 8
    base = _centered(rng, n, 2)
    x = np.hstack([base, base[:, :1]])  # exactly collinear
    y = _centered(rng, n, 2)
    d = spd_diagonal(uniform_weights(n))
    with pytest.raises(SingularSxx):
        pcaiv(x, y, spd_identity(2), d)


def test_pcaiv_rank_exceeded(rng):
    n = 9
    x = _centered(rng, n, 3)
    y = _centered(rng, n, 2)
    d = spd_diagonal(uniform_weights(n))
    with pytest.raises(RankExceeded):
        pcaiv(x, y, spd_identity(2), d, rank_q=3)


def test_pcaiv_eigengap_violation():
    # orthonormal design, response equal to design: eigenvalues tie exactly
    x = np.zeros((4, 2))
    x[0, 0] = 1.0
    x[1, 1] = 1.0
    d = spd_diagonal(uniform_weights(4))
    with pytest.raises(EigengapViolation):
        pcaiv(x, x, spd_identity(2), d, rank_q=1)


def test_pcaiv_top_components_maximize_rv(rng):
    # the rank-q score matrix is the best q-column summary in the RV sense
    n, p, q_rank = 7, 4, 2
    x = _centered(rng, n, p)
    qm = random_spd(rng, p)
    d = spd_diagonal(uniform_weights(n))
    from ddtool.triplet import make_triplet

    t = make_triplet(x, qm, d)
    e = diagram_eigen(t)
    scores = principal_components(t, e, q_rank)
    w_x = gram_w(t)
    best = rv(w_x, scores @ scores.T, d)
    n11 = covv(w_x, w_x, d)
    for _ in range(200):
        z = rng.normal(size=(n, q_rank))
        w_z = z @ z.T
        cand = covv(w_x, w_z, d) / np.sqrt(n11 * covv(w_z, w_z, d))
        assert cand <= best + 1e-12

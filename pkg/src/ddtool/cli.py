"""Command line front end.

``ddtool <method> --input table.csv [--input more.csv ...] [options]``

Methods: ``pca``, ``pca_std``, ``ca``, ``pcaiv``, ``rv``, ``statis``.  Each
run writes delimited results plus ``summary.json`` into the output directory
and, with ``--plots``, SVG figures rendered by matplotlib.  Identical
invocations on identical inputs produce byte-identical outputs.

On failure the process exits with the error's own code (see the README
table) and prints a single JSON line ``{"error": ..., "message": ...}`` to
stderr.  Logging is controlled by the ``DDTOOL_LOG`` environment variable
(``off``, ``info`` or ``debug``).
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .comparison import make_collection, coefficient_matrices, statis
from .errors import DdtoolError, DimensionMismatch, UsageError
from .linalg import spd_diagonal, spd_identity
from .methods import (
    ca_chi2,
    ca_triplet,
    contingency_table,
    pca_triplet,
    pcaiv,
    principal_components,
)
from .report import (
    axis_names,
    write_eigenvalues,
    write_labeled_matrix,
    write_summary,
    write_weights,
)
from .tables import load_table, load_weights
from .triplet import center_columns, diagram_eigen, total_inertia

log = logging.getLogger("ddtool")

METHODS = ("pca", "pca_std", "ca", "pcaiv", "rv", "statis")
_ARITY = {"pca": (1, 1), "pca_std": (1, 1), "ca": (1, 1), "pcaiv": (2, 2)}


@dataclass
class AnalysisConfig:
    """Everything one run needs; mirrors the command line one to one."""

    method: str
    inputs: list
    weights: str | None = None
    rank: int | None = None
    statis_basis: str = "rv"
    output_dir: str = "."
    plots: bool = False
    seed: int | None = None
    warnings: list = field(default_factory=list)


def _validate(config: AnalysisConfig) -> None:
    if config.method not in METHODS:
        raise UsageError(f"unknown method {config.method!r}")
    lo, hi = _ARITY.get(config.method, (2, None))
    k = len(config.inputs)
    if k < lo or (hi is not None and k > hi):
        need = f"exactly {lo}" if lo == hi else f"at least {lo}"
        raise UsageError(f"method {config.method} takes {need} input table(s), got {k}")
    if config.method == "ca" and config.weights is not None:
        raise UsageError("ca derives row weights from the table margins")
    if config.method in ("rv", "statis") and config.rank is not None:
        raise UsageError(f"--rank does not apply to {config.method}")
    if config.method != "statis" and config.statis_basis != "rv":
        raise UsageError("--statis-basis only applies to statis")
    if config.rank is not None and config.rank < 0:
        raise UsageError("--rank must be nonnegative")


def _labels_for(paths) -> list:
    labels = []
    used = set()
    for p in paths:
        stem = Path(p).stem or "table"
        cand = stem
        i = 1
        while cand in used:
            i += 1
            cand = f"{stem}_{i}"
        used.add(cand)
        labels.append(cand)
    return labels


def _aligned_tables(paths, kind="continuous"):
    tables = [load_table(p, kind) for p in paths]
    first = tables[0]
    for p, tf in zip(paths[1:], tables[1:]):
        if tf.row_ids != first.row_ids:
            raise DimensionMismatch(
                f"{p}: row ids do not match the first input table"
            )
    return tables


def _row_weights(config: AnalysisConfig, row_ids):
    n = len(row_ids)
    if config.weights is None:
        return np.full(n, 1.0 / n)
    return load_weights(config.weights, row_ids)


def _cut(rank_available: int, requested) -> int:
    if requested is None:
        return rank_available
    return requested


def _run_pca(config: AnalysisConfig):
    tf = _aligned_tables(config.inputs)[0]
    w = _row_weights(config, tf.row_ids)
    trip = pca_triplet(tf.values, w, standardize=config.method == "pca_std")
    eig = diagram_eigen(trip)
    k = _cut(eig.rank, config.rank)
    scores = principal_components(trip, eig, k)
    log.info("%s: %d x %d table, rank %d", config.method, trip.n, trip.p, eig.rank)
    return {
        "eigen_values": eig.values,
        "scores": (tf.row_ids, scores),
        "loadings": (tf.col_ids, eig.col_vectors[:, :k]),
        "summary": {
            "dimensions": {"rows": trip.n, "cols": [trip.p]},
            "total_inertia": total_inertia(trip),
            "rank": eig.rank,
            "components_written": k,
        },
    }


def _run_ca(config: AnalysisConfig):
    tf = _aligned_tables(config.inputs, kind="counts")[0]
    table = contingency_table(tf.values)
    for i in table.dropped_rows:
        config.warnings.append(f"dropped zero-margin row {tf.row_ids[i]!r}")
    for j in table.dropped_cols:
        config.warnings.append(f"dropped zero-margin column {tf.col_ids[j]!r}")
    row_ids = [
        rid for i, rid in enumerate(tf.row_ids) if i not in set(table.dropped_rows)
    ]
    col_ids = [
        cid for j, cid in enumerate(tf.col_ids) if j not in set(table.dropped_cols)
    ]
    cat = ca_triplet(table)
    eig = diagram_eigen(cat.triplet)
    k = _cut(eig.rank, config.rank)
    scores = principal_components(cat.triplet, eig, k)
    chi2 = ca_chi2(table)
    log.info("ca: grand total %g, chi2 %g", table.m, chi2)
    return {
        "eigen_values": eig.values,
        "scores": (row_ids, scores),
        "loadings": (col_ids, eig.col_vectors[:, :k]),
        "summary": {
            "dimensions": {
                "rows": cat.triplet.n,
                "cols": [cat.triplet.p],
            },
            "total_inertia": total_inertia(cat.triplet),
            "rank": eig.rank,
            "components_written": k,
            "chi_squared": chi2,
            "grand_total": table.m,
        },
    }


def _run_pcaiv(config: AnalysisConfig):
    xf, yf = _aligned_tables(config.inputs)
    w = _row_weights(config, xf.row_ids)
    d = spd_diagonal(w)
    x = center_columns(xf.values, d)
    y = center_columns(yf.values, d)
    res = pcaiv(x, y, spd_identity(y.shape[1]), d, rank_q=config.rank)
    full = diagram_eigen(res.fitted_triplet)
    k = res.eigen.rank
    scores = res.eigen.row_vectors * np.sqrt(res.eigen.values)
    log.info("pcaiv: kept %d of %d components", k, full.rank)
    return {
        "eigen_values": full.values,
        "scores": (xf.row_ids, scores),
        "loadings": (xf.col_ids, res.b),
        "summary": {
            "dimensions": {
                "rows": x.shape[0],
                "cols": [x.shape[1], y.shape[1]],
            },
            "total_inertia": total_inertia(res.fitted_triplet),
            "rank": k,
            "effective_rank": full.rank,
            "components_written": k,
        },
    }


def _collection(config: AnalysisConfig):
    tables = _aligned_tables(config.inputs)
    labels = _labels_for(config.inputs)
    w = _row_weights(config, tables[0].row_ids)
    trips = [pca_triplet(tf.values, w, standardize=False) for tf in tables]
    return make_collection(trips, labels), tables


def _run_rv(config: AnalysisConfig):
    coll, tables = _collection(config)
    _, r = coefficient_matrices(coll)
    return {
        "rv": (coll.labels, r),
        "summary": {
            "dimensions": {
                "rows": len(tables[0].row_ids),
                "cols": [len(tf.col_ids) for tf in tables],
            },
            "labels": list(coll.labels),
        },
    }


def _run_statis(config: AnalysisConfig):
    coll, tables = _collection(config)
    res = statis(coll, basis=config.statis_basis)
    ce = res.compromise_eigen
    scores = ce.vectors[:, : ce.rank] * np.sqrt(ce.values[: ce.rank])
    log.info("statis: weights %s", np.array2string(res.weights, precision=4))
    return {
        "eigen_values": ce.values,
        "scores": (tables[0].row_ids, scores),
        "rv": (coll.labels, res.rv_matrix),
        "statis_weights": (coll.labels, res.weights),
        "summary": {
            "dimensions": {
                "rows": len(tables[0].row_ids),
                "cols": [len(tf.col_ids) for tf in tables],
            },
            "total_inertia": float(np.sum(ce.values)),
            "rank": ce.rank,
            "labels": list(coll.labels),
            "statis_basis": config.statis_basis,
            "weights": [float(v) for v in res.weights],
            "distances_to_compromise": [
                float(v) for v in res.distances_to_compromise
            ],
        },
    }


_RUNNERS = {
    "pca": _run_pca,
    "pca_std": _run_pca,
    "ca": _run_ca,
    "pcaiv": _run_pcaiv,
    "rv": _run_rv,
    "statis": _run_statis,
}


def _emit_plots(result, outdir: Path, warnings: list) -> list:
    # Imported here so library users without a display stack never pay for it.
    from . import plots

    written = []
    values = result.get("eigen_values")
    if values is not None:
        plots.save_scree(outdir / "scree.svg", values)
        written.append("scree.svg")
        total = float(np.sum(values))
        ids, scores = result.get("scores", (None, None))
        if scores is not None and scores.shape[1] >= 2:
            percents = [
                100.0 * float(v) / total if total > 0 else 0.0 for v in values[:2]
            ]
            plots.save_factor_map(outdir / "factor_map.svg", scores, ids, percents)
            written.append("factor_map.svg")
        elif scores is not None:
            warnings.append("factor map skipped: fewer than 2 axes available")
    if "rv" in result:
        labels, r = result["rv"]
        plots.save_rv_heatmap(outdir / "rv_heatmap.svg", r, labels)
        written.append("rv_heatmap.svg")
        plots.save_interstructure(outdir / "interstructure.svg", r, labels)
        written.append("interstructure.svg")
    return written


def run(config: AnalysisConfig) -> Path:
    """Execute one analysis; returns the path of the summary file."""
    _validate(config)
    outdir = Path(config.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    result = _RUNNERS[config.method](config)

    files = []
    values = result.get("eigen_values")
    if values is not None:
        write_eigenvalues(outdir / "eigenvalues.csv", values)
        files.append("eigenvalues.csv")
    if "scores" in result:
        ids, scores = result["scores"]
        write_labeled_matrix(
            outdir / "row_scores.csv", ids, axis_names(scores.shape[1]), scores
        )
        files.append("row_scores.csv")
    if "loadings" in result:
        ids, loadings = result["loadings"]
        write_labeled_matrix(
            outdir / "col_loadings.csv", ids, axis_names(loadings.shape[1]), loadings
        )
        files.append("col_loadings.csv")
    if "rv" in result:
        labels, r = result["rv"]
        write_labeled_matrix(outdir / "rv_matrix.csv", labels, labels, r)
        files.append("rv_matrix.csv")
    if "statis_weights" in result:
        labels, weights = result["statis_weights"]
        write_weights(outdir / "statis_weights.csv", labels, weights)
        files.append("statis_weights.csv")

    warnings = list(config.warnings)
    if config.plots:
        files.extend(_emit_plots(result, outdir, warnings))

    summary = {
        "method": config.method,
        "inputs": [str(p) for p in config.inputs],
        "seed": config.seed,
        "warnings": warnings,
        "outputs": files + ["summary.json"],
        "version": __version__,
    }
    summary.update(result["summary"])
    summary_path = outdir / "summary.json"
    write_summary(summary_path, summary)
    return summary_path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddtool",
        description="Metric-weighted multivariate analysis of delimited tables.",
    )
    parser.add_argument("--version", action="version", version=f"ddtool {__version__}")
    parser.add_argument("method", choices=METHODS, help="analysis to run")
    parser.add_argument(
        "--input",
        action="append",
        required=True,
        metavar="PATH",
        help="input table; repeat for multi-table methods",
    )
    parser.add_argument("--weights", metavar="PATH", help="one-column row weight table")
    parser.add_argument("--rank", type=int, help="components to keep (pcaiv, pca, ca)")
    parser.add_argument(
        "--statis-basis",
        choices=("covv", "rv"),
        default="rv",
        help="similarity matrix that supplies statis weights (default rv)",
    )
    parser.add_argument("--out", default=".", metavar="DIR", help="output directory")
    parser.add_argument("--plots", action="store_true", help="also render SVG figures")
    parser.add_argument("--seed", type=int, help="recorded in summary.json")
    return parser


def _setup_logging() -> None:
    level = os.environ.get("DDTOOL_LOG", "off").lower()
    if level == "debug":
        logging.basicConfig(level=logging.DEBUG, format="%(name)s %(message)s")
    elif level == "info":
        logging.basicConfig(level=logging.INFO, format="%(name)s %(message)s")
    else:
        log.addHandler(logging.NullHandler())
        log.propagate = False


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    config = AnalysisConfig(
        method=args.method,
        inputs=args.input,
        weights=args.weights,
        rank=args.rank,
        statis_basis=args.statis_basis,
        output_dir=args.out,
        plots=args.plots,
        seed=args.seed,
    )
    try:
        run(config)
    except DdtoolError as exc:
        line = json.dumps(
            {"error": type(exc).__name__, "message": str(exc)}, sort_keys=True
        )
        print(line, file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())

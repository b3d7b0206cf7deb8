"""Writers for the delimited results and the run summary.

All numbers are printed with 12 significant digits, enough for a write/read
round trip at the advertised precision.  File contents are a pure function
of the results, so repeated runs produce identical bytes.
"""

import csv
import json
from pathlib import Path

SCHEMA_VERSION = 1


def fmt(value: float) -> str:
    """Render a float with 12 significant digits."""
    return f"{float(value):.12g}"


def write_eigenvalues(path, values) -> None:
    """Eigenvalue table: index, eigenvalue, percent inertia, cumulative."""
    total = float(sum(values))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["index", "eigenvalue", "percent_inertia", "cumulative_percent"])
        running = 0.0
        for i, lam in enumerate(values, start=1):
            share = 100.0 * float(lam) / total if total > 0.0 else 0.0
            running += share
            out.writerow([str(i), fmt(lam), fmt(share), fmt(running)])


def write_labeled_matrix(path, row_ids, col_ids, values) -> None:
    """A matrix in the standard table contract (id header, labeled rows)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["id", *col_ids])
        for rid, row in zip(row_ids, values):
            out.writerow([str(rid), *[fmt(v) for v in row]])


def write_weights(path, labels, weights) -> None:
    """STATIS weight vector, one labeled row per study."""
    write_labeled_matrix(path, labels, ["weight"], [[w] for w in weights])


def write_summary(path, payload: dict) -> None:
    """summary.json with a pinned schema version and sorted keys."""
    body = {"schema_version": SCHEMA_VERSION}
    body.update(payload)
    text = json.dumps(body, indent=2, sort_keys=True, allow_nan=False)
    Path(path).write_text(text + "\n", encoding="utf-8")


def axis_names(k: int) -> list:
    return [f"axis{i}" for i in range(1, k + 1)]

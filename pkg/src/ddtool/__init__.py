"""Metric-weighted multivariate analysis.

One engine, many classical methods: a data table X together with a metric Q
on its columns and a metric D on its rows determines a pair of operators
sharing one spectrum, and plain PCA, standardized PCA, correspondence
analysis, instrumental-variable PCA, RV comparison and STATIS all reduce to
decomposing that pair for the right choice of (X, Q, D).
"""

__version__ = "0.1.0"

from .comparison import (
    DiagramCollection,
    OperatorEigen,
    StatisResult,
    coefficient_matrices,
    covv,
    make_collection,
    operator_eigen,
    rv,
    statis,
)
from .errors import (
    BadWeights,
    ConvergenceFailure,
    DdtoolError,
    DegenerateTable,
    DimensionMismatch,
    DuplicateId,
    EigengapViolation,
    NonFiniteValue,
    NonIntegerCount,
    NonSquare,
    NotPositiveDefinite,
    NotSymmetric,
    ParseError,
    PerronAmbiguity,
    RankExceeded,
    RankMismatch,
    SingularSxx,
    UsageError,
    ZeroOperator,
    ZeroVarianceColumn,
)
from .linalg import (
    SpdMatrix,
    SymEigen,
    spd_check,
    spd_diagonal,
    spd_factor,
    spd_identity,
    spd_power,
    sym_eigen,
)
from .methods import (
    CaTriplet,
    ContingencyTable,
    PcaivResult,
    ca_chi2,
    ca_triplet,
    contingency_table,
    pca_triplet,
    pcaiv,
    principal_components,
)
from .tables import TableFile, load_table, load_weights
from .triplet import (
    DiagramEigen,
    Triplet,
    center_columns,
    crossprod_v,
    diagram_eigen,
    gram_w,
    make_triplet,
    total_inertia,
    transfer_row_vectors,
)

__all__ = [
    "__version__",
    "BadWeights",
    "CaTriplet",
    "ContingencyTable",
    "ConvergenceFailure",
    "DdtoolError",
    "DegenerateTable",
    "DiagramCollection",
    "DiagramEigen",
    "DimensionMismatch",
    "DuplicateId",
    "EigengapViolation",
    "NonFiniteValue",
    "NonIntegerCount",
    "NonSquare",
    "NotPositiveDefinite",
    "NotSymmetric",
    "OperatorEigen",
    "ParseError",
    "PcaivResult",
    "PerronAmbiguity",
    "RankExceeded",
    "RankMismatch",
    "SingularSxx",
    "SpdMatrix",
    "StatisResult",
    "SymEigen",
    "TableFile",
    "Triplet",
    "UsageError",
    "ZeroOperator",
    "ZeroVarianceColumn",
    "ca_chi2",
    "ca_triplet",
    "center_columns",
    "coefficient_matrices",
    "contingency_table",
    "covv",
    "crossprod_v",
    "diagram_eigen",
    "gram_w",
    "load_table",
    "load_weights",
    "make_collection",
    "make_triplet",
    "operator_eigen",
    "pca_triplet",
    "pcaiv",
    "principal_components",
    "rv",
    "spd_check",
    "spd_diagonal",
    "spd_factor",
    "spd_identity",
    "spd_power",
    "statis",
    "sym_eigen",
    "total_inertia",
    "transfer_row_vectors",
]

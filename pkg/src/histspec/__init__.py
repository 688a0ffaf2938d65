"""Least p-norm histogram specification and quantile transformation.

Data without exploitable local structure (table columns, flattened images)
is matched to a reference distribution by assigning one optimal output value
per unique input value: the Frechet p-mean of the reference slice covering
that value's positions in the sorted order.  The uniform-reference special
case collapses to a closed-form quantile transformer.
"""

from .baseline import (
    QuantileEstimateTable,
    baseline_transform,
    estimate_quantiles,
    quantile_table,
)
from .decomposition import Decomposition, argsort_stable, decompose, reconstruct
from .exceptions import (
    CorruptHeaderError,
    DimensionMismatchError,
    DomainError,
    EmptyInputError,
    EmptySliceError,
    InvalidParamsError,
    InvalidPError,
    LengthMismatchError,
    MergedUniqueValuesWarning,
    NonFiniteValueError,
    OutOfBoundsError,
    ParseError,
    PGMError,
    PixelCountMismatchError,
    RaggedRowsError,
    TruncatedDataError,
    UnorderableValueError,
    UnsupportedFormatError,
)
from .io import (
    GrayscaleImage,
    ReportEntry,
    SpecificationReport,
    TabularDataset,
    ecdf_points,
    flatten_columns,
    inscribe_rectangle,
    read_csv,
    read_pgm,
    reshape_columns,
    write_csv,
    write_pgm,
    write_report,
)
from .quantile import (
    TYPE_4,
    TYPE_5,
    TYPE_6,
    TYPE_7,
    TYPE_8,
    TYPE_9,
    EmpiricalReference,
    NormalReference,
    PlottingPositions,
    UniformReference,
    normal_inverse_cdf,
    quantile_transform,
    reference_values,
    transform_to_reference,
    uniform_reference,
)
from .specification import (
    frechet_p_mean,
    optimal_unique_values,
    specification_error,
    specify,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Decomposition",
    "argsort_stable",
    "decompose",
    "reconstruct",
    "frechet_p_mean",
    "optimal_unique_values",
    "specify",
    "specification_error",
    "PlottingPositions",
    "TYPE_4",
    "TYPE_5",
    "TYPE_6",
    "TYPE_7",
    "TYPE_8",
    "TYPE_9",
    "UniformReference",
    "NormalReference",
    "EmpiricalReference",
    "quantile_transform",
    "uniform_reference",
    "normal_inverse_cdf",
    "reference_values",
    "transform_to_reference",
    "QuantileEstimateTable",
    "estimate_quantiles",
    "quantile_table",
    "baseline_transform",
    "TabularDataset",
    "read_csv",
    "write_csv",
    "GrayscaleImage",
    "read_pgm",
    "write_pgm",
    "flatten_columns",
    "reshape_columns",
    "inscribe_rectangle",
    "ReportEntry",
    "SpecificationReport",
    "write_report",
    "ecdf_points",
    "EmptyInputError",
    "EmptySliceError",
    "UnorderableValueError",
    "LengthMismatchError",
    "InvalidPError",
    "InvalidParamsError",
    "DomainError",
    "ParseError",
    "RaggedRowsError",
    "NonFiniteValueError",
    "PGMError",
    "UnsupportedFormatError",
    "CorruptHeaderError",
    "TruncatedDataError",
    "DimensionMismatchError",
    "OutOfBoundsError",
    "PixelCountMismatchError",
    "MergedUniqueValuesWarning",
]

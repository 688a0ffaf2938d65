"""Dataset, image, and report I/O."""

from .pgm import (
    GrayscaleImage,
    flatten_columns,
    inscribe_rectangle,
    read_pgm,
    reshape_columns,
    write_pgm,
)
from .report import (
    KNOWN_METHODS,
    ReportEntry,
    SpecificationReport,
    ecdf_points,
    format_p,
    write_report,
)
from .tabular import TabularDataset, read_csv, write_csv

__all__ = [
    "GrayscaleImage",
    "flatten_columns",
    "inscribe_rectangle",
    "read_pgm",
    "reshape_columns",
    "write_pgm",
    "KNOWN_METHODS",
    "ReportEntry",
    "SpecificationReport",
    "ecdf_points",
    "format_p",
    "write_report",
    "TabularDataset",
    "read_csv",
    "write_csv",
]

"""Exception and warning types shared across the package."""


class EmptyInputError(ValueError):
    """Raised when an operation receives an empty array."""


class EmptySliceError(EmptyInputError):
    """Raised when a per-group barycenter is requested for an empty slice."""


class UnorderableValueError(ValueError):
    """Raised when input elements cannot be totally ordered (e.g. NaN)."""


class LengthMismatchError(ValueError):
    """Raised when two arrays that must have equal length do not."""


class InvalidPError(ValueError):
    """Raised for norm exponents p < 1 or otherwise unusable p."""


class InvalidParamsError(ValueError):
    """Raised when plotting-position parameters make gamma nonpositive,
    or other parameter combinations are unusable."""


class DomainError(ValueError):
    """Raised when a numeric argument lies outside its allowed domain."""


class ParseError(ValueError):
    """Raised for malformed or non-numeric CSV content."""


class RaggedRowsError(ParseError):
    """Raised when CSV rows have differing cell counts."""


class NonFiniteValueError(ParseError):
    """Raised when ingested data contains NaN or infinities."""


class PGMError(ValueError):
    """Base class for PGM reader/writer failures."""


class UnsupportedFormatError(PGMError):
    """Raised for non-PGM or unsupported PGM variants (e.g. P6, maxval > 255)."""


class CorruptHeaderError(PGMError):
    """Raised when a PGM header cannot be parsed."""


class TruncatedDataError(PGMError):
    """Raised when a PGM raster holds fewer samples than the header promises."""


class DimensionMismatchError(ValueError):
    """Raised when array length and image dimensions disagree."""


class OutOfBoundsError(ValueError):
    """Raised when a rectangle does not fit inside an image."""


class PixelCountMismatchError(ValueError):
    """Raised when input and reference images have different pixel counts."""


class MergedUniqueValuesWarning(UserWarning):
    """Adjacent groups received equal optimal values, so output counts
    differ from input counts (the mapping is not bijective)."""

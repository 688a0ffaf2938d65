"""PGM (portable graymap) reading and writing, plus image/vector bridging.

Supports the plain (P2) and raw (P5) formats with maxval up to 255.  Round
trips are byte-lossless on pixel content.  Images travel to and from the
transforms as column-major vectors: all pixel columns concatenated into one
array, reshaped back after transformation.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..exceptions import (
    CorruptHeaderError,
    DimensionMismatchError,
    OutOfBoundsError,
    PGMError,
    TruncatedDataError,
    UnsupportedFormatError,
)

__all__ = [
    "GrayscaleImage",
    "read_pgm",
    "write_pgm",
    "flatten_columns",
    "reshape_columns",
    "inscribe_rectangle",
]

_WHITESPACE = b" \t\r\n\v\f"


@dataclass(frozen=True, eq=False)
class GrayscaleImage:
    """Grayscale raster: a (height, width) array of intensities in [0, 255]."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2 or arr.size == 0:
            raise DimensionMismatchError(
                f"pixels must be a nonempty 2-D array, got shape {arr.shape}"
            )
        if arr.dtype != np.uint8:
            if np.any(arr < 0) or np.any(arr > 255) or np.any(arr != np.floor(arr)):
                raise OutOfBoundsError("intensities must be integers in [0, 255]")
            arr = arr.astype(np.uint8)
        object.__setattr__(self, "pixels", arr)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other):
        if not isinstance(other, GrayscaleImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)


def _read_bytes(source) -> bytes:
    if isinstance(source, (str, os.PathLike)):
        return Path(source).read_bytes()
    if isinstance(source, (bytes, bytearray)):
        return bytes(source)
    return source.read()


def _next_token(data: bytes, pos: int):
    """Next whitespace-delimited token, skipping '#' comments."""
    n = len(data)
    while pos < n:
        byte = data[pos : pos + 1]
        if byte in (b"#",):
            while pos < n and data[pos : pos + 1] != b"\n":
                pos += 1
        elif byte in _WHITESPACE:
            pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise CorruptHeaderError("unexpected end of header")
    return data[start:pos], pos


def _header_int(data: bytes, pos: int, what: str):
    token, pos = _next_token(data, pos)
    try:
        value = int(token)
    except ValueError:
        raise CorruptHeaderError(f"{what} is not an integer: {token!r}") from None
    return value, pos


def read_pgm(source) -> GrayscaleImage:
    """Read a P2 or P5 graymap with maxval <= 255.

    source may be a path, raw bytes, or a binary file-like object.
    """
    data = _read_bytes(source)
    try:
        magic, pos = _next_token(data, 0)
    except CorruptHeaderError:
        raise CorruptHeaderError("empty or headerless file") from None
    if magic not in (b"P2", b"P5"):
        raise UnsupportedFormatError(
            f"unsupported magic {magic!r}: only P2 and P5 graymaps are handled"
        )

    width, pos = _header_int(data, pos, "width")
    height, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if width < 1 or height < 1:
        raise CorruptHeaderError(f"dimensions must be positive, got {width}x{height}")
    if maxval < 1:
        raise CorruptHeaderError(f"maxval must be positive, got {maxval}")
    if maxval > 255:
        raise UnsupportedFormatError(f"maxval {maxval} exceeds 255 (one byte per pixel)")

    count = width * height
    if magic == b"P5":
        if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
            raise CorruptHeaderError("missing whitespace after maxval")
        pos += 1
        raster = data[pos : pos + count]
        if len(raster) < count:
            raise TruncatedDataError(
                f"expected {count} raster bytes, found {len(raster)}"
            )
        flat = np.frombuffer(raster, dtype=np.uint8)
    else:
        values = []
        while len(values) < count:
            try:
                token, pos = _next_token(data, pos)
            except CorruptHeaderError:
                raise TruncatedDataError(
                    f"expected {count} pixel values, found {len(values)}"
                ) from None
            try:
                values.append(int(token))
            except ValueError:
                raise PGMError(f"invalid pixel token {token!r}") from None
        flat = np.array(values, dtype=np.int64)

    if flat.max(initial=0) > maxval or flat.min(initial=0) < 0:
        raise PGMError(f"pixel value outside [0, {maxval}]")
    return GrayscaleImage(flat.astype(np.uint8).reshape(height, width))


def write_pgm(image: GrayscaleImage, destination=None, *, raw: bool = True) -> bytes:
    """Serialize an image as P5 (raw, default) or P2 (plain) with maxval 255.

    Returns the bytes; additionally writes them when destination is a path
    or binary file-like object.
    """
    header = f"{'P5' if raw else 'P2'}\n{image.width} {image.height}\n255\n"
    if raw:
        payload = header.encode("ascii") + image.pixels.tobytes()
    else:
        flat = image.pixels.ravel()
        # Plain format keeps lines short; 17 three-digit values fit in 70 chars.
        lines = (
            " ".join(str(v) for v in flat[i : i + 17])
            for i in range(0, flat.size, 17)
        )
        payload = header.encode("ascii") + "\n".join(lines).encode("ascii") + b"\n"

    if destination is not None:
        if isinstance(destination, (str, os.PathLike)):
            Path(destination).write_bytes(payload)
        else:
            destination.write(payload)
    return payload


def flatten_columns(image: GrayscaleImage) -> np.ndarray:
    """All pixel columns concatenated into one float vector (column-major)."""
    return image.pixels.astype(float).ravel(order="F")


def reshape_columns(values, width: int, height: int) -> np.ndarray:
    """Inverse of flatten_columns: rebuild the (height, width) real grid."""
    arr = np.asarray(values, dtype=float).ravel()
    if width < 1 or height < 1:
        raise DimensionMismatchError(f"dimensions must be positive, got {width}x{height}")
    if arr.size != width * height:
        raise DimensionMismatchError(
            f"{arr.size} values cannot fill a {width}x{height} grid"
        )
    return arr.reshape((height, width), order="F")


def inscribe_rectangle(
    image: GrayscaleImage, x0: int, y0: int, w: int, h: int, value: int
) -> GrayscaleImage:
    """Copy of the image with a constant-valued axis-aligned rectangle.

    (x0, y0) is the top-left corner in (column, row) coordinates, 0-based.
    """
    if w < 1 or h < 1:
        raise OutOfBoundsError(f"rectangle must have positive area, got {w}x{h}")
    if x0 < 0 or y0 < 0 or x0 + w > image.width or y0 + h > image.height:
        raise OutOfBoundsError(
            f"rectangle ({x0},{y0}) {w}x{h} exceeds image {image.width}x{image.height}"
        )
    if not 0 <= value <= 255:
        raise OutOfBoundsError(f"value must be in [0, 255], got {value}")
    pixels = image.pixels.copy()
    pixels[y0 : y0 + h, x0 : x0 + w] = value
    return GrayscaleImage(pixels)

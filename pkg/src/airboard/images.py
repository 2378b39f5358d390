"""Pixel-buffer types and the primitive raster operations the pipeline builds on.

All buffers are numpy-backed, row-major, origin top-left, with (x, y) meaning
(column, row). Grayscale data is uint8, the background accumulator is float64,
color canvases are uint8 RGB. Rectangles are inclusive at the top-left corner
and exclusive at the bottom-right.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

Point = tuple[int, int]

GRAY_WEIGHTS = (0.299, 0.587, 0.114)  # ITU-R BT.601 luma


class PpmError(ValueError):
    """Raised for malformed or truncated PPM streams."""


def round_half_up(values: np.ndarray) -> np.ndarray:
    """Round to nearest integer with .5 going up (numpy rounds .5 to even)."""
    return np.floor(values + 0.5)


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle, top-left inclusive, bottom-right exclusive."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self) -> None:
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError(f"degenerate rect {self}")

    @property
    def width(self) -> int:
        return self.x1 - self.x0

    @property
    def height(self) -> int:
        return self.y1 - self.y0

    def contains(self, x: int, y: int) -> bool:
        return self.x0 <= x < self.x1 and self.y0 <= y < self.y1

    def inside(self, width: int, height: int) -> bool:
        return 0 <= self.x0 and 0 <= self.y0 and self.x1 <= width and self.y1 <= height

    def overlaps(self, other: "Rect") -> bool:
        return self.x0 < other.x1 and other.x0 < self.x1 and self.y0 < other.y1 and other.y0 < self.y1

    def as_list(self) -> list[int]:
        return [self.x0, self.y0, self.x1, self.y1]


def _check_2d(pixels: np.ndarray, dtype: type, name: str) -> np.ndarray:
    arr = np.asarray(pixels, dtype=dtype)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} needs a non-empty 2-d buffer, got shape {arr.shape}")
    return arr


@dataclass
class GrayImage:
    """Single-channel uint8 image, shape (height, width)."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        self.pixels = _check_2d(self.pixels, np.uint8, "GrayImage")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def full(cls, width: int, height: int, value: int = 0) -> "GrayImage":
        return cls(np.full((height, width), value, dtype=np.uint8))

    def copy(self) -> "GrayImage":
        return GrayImage(self.pixels.copy())


@dataclass
class FloatImage:
    """Real-valued image, shape (height, width); all entries finite."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        self.pixels = _check_2d(self.pixels, np.float64, "FloatImage")
        if not np.all(np.isfinite(self.pixels)):
            raise ValueError("FloatImage entries must be finite")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass
class RgbImage:
    """Interleaved 3-channel uint8 image, shape (height, width, 3)."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.pixels, dtype=np.uint8)
        if arr.ndim != 3 or arr.shape[2] != 3 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"RgbImage needs shape (h, w, 3), got {arr.shape}")
        self.pixels = arr

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def full(cls, width: int, height: int, color: tuple[int, int, int]) -> "RgbImage":
        arr = np.empty((height, width, 3), dtype=np.uint8)
        arr[:, :] = color
        return cls(arr)

    def copy(self) -> "RgbImage":
        return RgbImage(self.pixels.copy())


@dataclass
class BinaryMask:
    """Boolean foreground mask, shape (height, width)."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        self.pixels = _check_2d(self.pixels, bool, "BinaryMask")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def count(self) -> int:
        return int(self.pixels.sum())


@dataclass
class IntegralImage:
    """Inclusive 2-d prefix sums: entry (x, y) = sum over all pixels (i<=x, j<=y)."""

    sums: np.ndarray

    def __post_init__(self) -> None:
        self.sums = _check_2d(self.sums, np.int64, "IntegralImage")

    @property
    def width(self) -> int:
        return self.sums.shape[1]

    @property
    def height(self) -> int:
        return self.sums.shape[0]


def to_grayscale(img: RgbImage) -> GrayImage:
    """BT.601 luma with round-half-up, clamped to 0..255."""
    r, g, b = GRAY_WEIGHTS
    luma = img.pixels[:, :, 0] * r + img.pixels[:, :, 1] * g + img.pixels[:, :, 2] * b
    return GrayImage(np.clip(round_half_up(luma), 0, 255).astype(np.uint8))


def crop(img: GrayImage, roi: Rect) -> GrayImage:
    """Copy out a sub-image; the source is left untouched."""
    if not roi.inside(img.width, img.height):
        raise ValueError(f"roi {roi} exceeds image {img.width}x{img.height}")
    return GrayImage(img.pixels[roi.y0:roi.y1, roi.x0:roi.x1].copy())


def abs_diff(a: GrayImage, b: GrayImage | FloatImage) -> GrayImage:
    """Per-pixel |a - b|; a FloatImage operand is rounded (half-up) first."""
    if (a.width, a.height) != (b.width, b.height):
        raise ValueError(
            f"size mismatch: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
    if isinstance(b, FloatImage):
        other = np.clip(round_half_up(b.pixels), 0, 255)
    else:
        other = b.pixels.astype(np.float64)
    diff = np.abs(a.pixels.astype(np.float64) - other)
    return GrayImage(diff.astype(np.uint8))


def threshold_binary(img: GrayImage, t: int) -> BinaryMask:
    """Foreground where intensity is strictly greater than t."""
    return BinaryMask(img.pixels > t)


def integral(img: GrayImage) -> IntegralImage:
    sums = img.pixels.astype(np.int64).cumsum(axis=0).cumsum(axis=1)
    return IntegralImage(sums)


def rect_sum(ii: IntegralImage, r: Rect) -> int:
    """Sum of source intensities over r via 4-term inclusion-exclusion, exact."""
    if not r.inside(ii.width, ii.height):
        raise ValueError(f"rect {r} exceeds integral image {ii.width}x{ii.height}")
    s = ii.sums
    total = int(s[r.y1 - 1, r.x1 - 1])
    if r.x0 > 0:
        total -= int(s[r.y1 - 1, r.x0 - 1])
    if r.y0 > 0:
        total -= int(s[r.y0 - 1, r.x1 - 1])
    if r.x0 > 0 and r.y0 > 0:
        total += int(s[r.y0 - 1, r.x0 - 1])
    return total


def disc_offsets(diameter: int) -> np.ndarray:
    """(dy, dx) offsets with dx^2 + dy^2 <= (diameter/2)^2, as an (n, 2) array."""
    if diameter < 1:
        raise ValueError("diameter must be >= 1")
    radius = diameter / 2.0
    reach = int(np.floor(radius))
    span = np.arange(-reach, reach + 1)
    dy, dx = np.meshgrid(span, span, indexing="ij")
    keep = dx * dx + dy * dy <= radius * radius
    return np.stack([dy[keep], dx[keep]], axis=1)


def draw_disc(
    img: RgbImage,
    center: Point,
    diameter: int,
    color: tuple[int, int, int],
    *,
    y_min: int = 0,
) -> RgbImage:
    """Stamp a filled disc in place; pixels outside bounds (or above y_min) are clipped."""
    cx, cy = center
    offsets = disc_offsets(diameter)
    ys = offsets[:, 0] + cy
    xs = offsets[:, 1] + cx
    keep = (xs >= 0) & (xs < img.width) & (ys >= y_min) & (ys < img.height)
    img.pixels[ys[keep], xs[keep]] = color
    return img


def encode_ppm(img: RgbImage) -> bytes:
    """Binary PPM (P6, maxval 255)."""
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    n = len(data)
    while pos < n:
        if data[pos:pos + 1].isspace():
            pos += 1
        elif data[pos] == ord("#"):
            while pos < n and data[pos] not in (10, 13):
                pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos:pos + 1].isspace() and data[pos] != ord("#"):
        pos += 1
    if start == pos:
        raise PpmError("unexpected end of PPM header")
    return data[start:pos], pos


def decode_ppm(data: bytes) -> RgbImage:
    """Parse a binary P6 stream; raises PpmError on malformed or truncated input."""
    magic, pos = _next_token(data, 0)
    if magic != b"P6":
        raise PpmError(f"not a P6 stream (magic {magic!r})")
    fields = []
    for _ in range(3):
        token, pos = _next_token(data, pos)
        if not token.isdigit():
            raise PpmError(f"bad PPM header token {token!r}")
        fields.append(int(token))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise PpmError(f"bad PPM dimensions {width}x{height}")
    if maxval != 255:
        raise PpmError(f"unsupported maxval {maxval}")
    # Exactly one whitespace byte separates the header from the payload.
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise PpmError("missing separator before pixel data")
    pos += 1
    payload = data[pos:]
    expected = width * height * 3
    if len(payload) < expected:
        raise PpmError(f"truncated payload: {len(payload)} of {expected} bytes")
    if len(payload) > expected:
        raise PpmError(f"trailing bytes after payload: {len(payload) - expected}")
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3)
    return RgbImage(pixels.copy())

"""Running-average background model, one instance per region of interest.

The accumulator follows dst = (1-alpha)*dst + alpha*src per pixel in float
arithmetic, seeded from the first frame so warmup never drags a black ghost.
After `warmup_frames` frames the model freezes and only serves subtractions.
"""

from __future__ import annotations

import numpy as np

from .images import BinaryMask, FloatImage, GrayImage, abs_diff, threshold_binary

DEFAULT_ALPHA = 0.8
DEFAULT_WARMUP_FRAMES = 100
DEFAULT_THRESHOLD = 15


class FrozenModelError(RuntimeError):
    """Accumulate was called on a model that already finished warmup."""


class ModelNotReadyError(RuntimeError):
    """Subtraction was requested before the model finished warmup."""


class BackgroundModel:
    def __init__(
        self,
        width: int,
        height: int,
        alpha: float = DEFAULT_ALPHA,
        warmup_frames: int = DEFAULT_WARMUP_FRAMES,
    ) -> None:
        if not 0.0 < alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {alpha}")
        if warmup_frames < 1:
            raise ValueError(f"warmup_frames must be >= 1, got {warmup_frames}")
        if width < 1 or height < 1:
            raise ValueError(f"bad model size {width}x{height}")
        self.width = width
        self.height = height
        self.alpha = float(alpha)
        self.warmup_frames = warmup_frames
        self.frames_seen = 0
        self._accumulator: np.ndarray | None = None

    @property
    def frozen(self) -> bool:
        return self.frames_seen >= self.warmup_frames

    @property
    def accumulator(self) -> FloatImage:
        if self._accumulator is None:
            raise ModelNotReadyError("no frames accumulated yet")
        return FloatImage(self._accumulator.copy())

    def _check_size(self, img: GrayImage) -> None:
        if (img.width, img.height) != (self.width, self.height):
            raise ValueError(
                f"frame {img.width}x{img.height} does not match model "
                f"{self.width}x{self.height}"
            )

    def accumulate(self, src: GrayImage) -> None:
        if self.frozen:
            raise FrozenModelError("model already warmed up")
        self._check_size(src)
        if self._accumulator is None:
            self._accumulator = src.pixels.astype(np.float64)
        else:
            self._accumulator *= 1.0 - self.alpha
            self._accumulator += self.alpha * src.pixels
        self.frames_seen += 1

    def background(self) -> GrayImage:
        """Accumulator rounded half-up to uint8."""
        if self._accumulator is None:
            raise ModelNotReadyError("no frames accumulated yet")
        rounded = np.clip(np.floor(self._accumulator + 0.5), 0, 255)
        return GrayImage(rounded.astype(np.uint8))

    def residual_mask(self, live: GrayImage, threshold: int = DEFAULT_THRESHOLD) -> BinaryMask:
        """Threshold |live - background|; only valid once the model is frozen."""
        if not self.frozen:
            raise ModelNotReadyError(
                f"model still warming up ({self.frames_seen}/{self.warmup_frames})"
            )
        self._check_size(live)
        return threshold_binary(abs_diff(live, self.background()), threshold)

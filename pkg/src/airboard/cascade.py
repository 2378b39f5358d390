"""Boolean hand-presence gate over a staged rectangle-feature classifier.

A model is a list of stages; each stage sums stump votes over rectangle-sum
features evaluated on an integral image, and a window passes only if every
stage sum clears its stage threshold. Detection slides a single-scale window
over the ROI and reports whether any window passes. The gate is pluggable so
sessions can also run with a pass-through or a scripted stand-in.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .images import GrayImage, IntegralImage, Point, Rect, integral, rect_sum

DEFAULT_STRIDE = 4
MAX_FEATURE_RECTS = 4


class CascadeFormatError(ValueError):
    """Model file failed to parse or violates a structural invariant."""


@dataclass(frozen=True)
class HaarFeature:
    """Weighted rectangles, window-relative; value = sum of weight * rect_sum."""

    rects: tuple[tuple[Rect, float], ...]


@dataclass(frozen=True)
class WeakClassifier:
    feature: HaarFeature
    threshold: float
    vote_above: float
    vote_below: float


@dataclass(frozen=True)
class CascadeStage:
    classifiers: tuple[WeakClassifier, ...]
    threshold: float


@dataclass(frozen=True)
class CascadeModel:
    window_w: int
    window_h: int
    stages: tuple[CascadeStage, ...]


def _parse_rect(raw: dict, window_w: int, window_h: int) -> tuple[Rect, float]:
    try:
        x, y, w, h = int(raw["x"]), int(raw["y"]), int(raw["w"]), int(raw["h"])
        weight = float(raw["weight"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CascadeFormatError(f"bad feature rect {raw!r}") from exc
    if w < 1 or h < 1 or x < 0 or y < 0:
        raise CascadeFormatError(f"bad feature rect geometry {raw!r}")
    if x + w > window_w or y + h > window_h:
        raise CascadeFormatError(
            f"feature rect {raw!r} exceeds window {window_w}x{window_h}"
        )
    return Rect(x, y, x + w, y + h), weight


def load_cascade(data: bytes | str | dict) -> CascadeModel:
    """Parse and validate the JSON model format."""
    if isinstance(data, (bytes, str)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise CascadeFormatError(f"cascade file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CascadeFormatError("cascade model must be a JSON object")
    try:
        window_w, window_h = (int(v) for v in data["window"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CascadeFormatError("missing or malformed 'window'") from exc
    if window_w < 1 or window_h < 1:
        raise CascadeFormatError(f"bad window size {window_w}x{window_h}")
    raw_stages = data.get("stages")
    if not isinstance(raw_stages, list) or not raw_stages:
        raise CascadeFormatError("model needs at least one stage")
    stages = []
    for raw_stage in raw_stages:
        raw_classifiers = raw_stage.get("classifiers")
        if not isinstance(raw_classifiers, list) or not raw_classifiers:
            raise CascadeFormatError("each stage needs at least one classifier")
        classifiers = []
        for raw_clf in raw_classifiers:
            raw_rects = raw_clf.get("rects")
            if not isinstance(raw_rects, list) or not 1 <= len(raw_rects) <= MAX_FEATURE_RECTS:
                raise CascadeFormatError(
                    f"features need 1..{MAX_FEATURE_RECTS} rects, got {raw_rects!r}"
                )
            rects = tuple(_parse_rect(r, window_w, window_h) for r in raw_rects)
            try:
                classifiers.append(
                    WeakClassifier(
                        feature=HaarFeature(rects=rects),
                        threshold=float(raw_clf["threshold"]),
                        vote_above=float(raw_clf["above"]),
                        vote_below=float(raw_clf["below"]),
                    )
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise CascadeFormatError(f"bad classifier {raw_clf!r}") from exc
        try:
            stage_threshold = float(raw_stage["threshold"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CascadeFormatError(f"bad stage threshold in {raw_stage!r}") from exc
        stages.append(CascadeStage(classifiers=tuple(classifiers), threshold=stage_threshold))
    return CascadeModel(window_w=window_w, window_h=window_h, stages=tuple(stages))


def feature_value(feature: HaarFeature, ii: IntegralImage, origin: Point) -> float:
    ox, oy = origin
    total = 0.0
    for rect, weight in feature.rects:
        shifted = Rect(rect.x0 + ox, rect.y0 + oy, rect.x1 + ox, rect.y1 + oy)
        total += weight * rect_sum(ii, shifted)
    return total


def eval_window(model: CascadeModel, ii: IntegralImage, origin: Point) -> bool:
    """True iff the window at origin clears every stage."""
    ox, oy = origin
    if ox < 0 or oy < 0 or ox + model.window_w > ii.width or oy + model.window_h > ii.height:
        raise ValueError(f"window at {origin} exceeds image {ii.width}x{ii.height}")
    for stage in model.stages:
        stage_sum = 0.0
        for clf in stage.classifiers:
            value = feature_value(clf.feature, ii, origin)
            stage_sum += clf.vote_above if value > clf.threshold else clf.vote_below
        if stage_sum < stage.threshold:
            return False
    return True


def _padded_sums(ii: IntegralImage) -> np.ndarray:
    padded = np.zeros((ii.height + 1, ii.width + 1), dtype=np.int64)
    padded[1:, 1:] = ii.sums
    return padded


def detect(model: CascadeModel, roi: GrayImage, stride: int = DEFAULT_STRIDE) -> bool:
    """Any sliding window (step = stride, single scale) passing the cascade?

    Window origins are multiples of the stride, evaluated for all stages at
    once via vectorised integral-image lookups; windows failing a stage drop
    out before the next one.
    """
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if roi.width < model.window_w or roi.height < model.window_h:
        raise ValueError(
            f"roi {roi.width}x{roi.height} smaller than window "
            f"{model.window_w}x{model.window_h}"
        )
    padded = _padded_sums(integral(roi))
    xs = np.arange(0, roi.width - model.window_w + 1, stride)
    ys = np.arange(0, roi.height - model.window_h + 1, stride)
    oy, ox = np.meshgrid(ys, xs, indexing="ij")
    ox = ox.ravel()
    oy = oy.ravel()
    for stage in model.stages:
        stage_sum = np.zeros(ox.shape[0], dtype=np.float64)
        for clf in stage.classifiers:
            value = np.zeros(ox.shape[0], dtype=np.float64)
            for rect, weight in clf.feature.rects:
                value += weight * (
                    padded[oy + rect.y1, ox + rect.x1]
                    - padded[oy + rect.y0, ox + rect.x1]
                    - padded[oy + rect.y1, ox + rect.x0]
                    + padded[oy + rect.y0, ox + rect.x0]
                )
            stage_sum += np.where(value > clf.threshold, clf.vote_above, clf.vote_below)
        alive = stage_sum >= stage.threshold
        if not alive.any():
            return False
        ox = ox[alive]
        oy = oy[alive]
    return True


class AlwaysGate:
    """Pass-through gate for traces recorded without hands."""

    def detect(self, roi: GrayImage) -> bool:
        return True


class ScriptedGate:
    """Replays a fixed decision sequence, then holds the last value."""

    def __init__(self, decisions: list[bool], default: bool = True) -> None:
        self._decisions = list(decisions)
        self._default = decisions[-1] if decisions else default
        self._index = 0

    def detect(self, roi: GrayImage) -> bool:
        if self._index < len(self._decisions):
            decision = self._decisions[self._index]
            self._index += 1
            return decision
        return self._default


class CascadeGate:
    """Full cascade evaluation over the ROI."""

    def __init__(self, model: CascadeModel, stride: int = DEFAULT_STRIDE) -> None:
        self.model = model
        self.stride = stride

    def detect(self, roi: GrayImage) -> bool:
        return detect(self.model, roi, self.stride)

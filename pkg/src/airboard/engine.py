"""Session orchestration: frame sources, warmup, the per-frame pipeline, timing.

A session owns one board, one background model per ROI, a gate per ROI and an
OCR dispatcher. Each frame flows gate -> subtract -> contour -> map -> board
-> render, with every stage timed on a monotonic clock. Frame latency is the
sum of the processing stages (render included, capture excluded).

Sources are either recorded traces (manifest + PPM frames) or synthetic
specs that script a moving blob per ROI, so every experiment replays without
a camera, bit-exactly.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterator

import numpy as np

from .background import BackgroundModel
from .board import (
    DEFAULT_DWELL_FRAMES,
    DEFAULT_POINTER_DIAMETER,
    VUI_HEIGHT,
    Board,
    BoardEvent,
    Mode,
    map_to_canvas,
)
from .cascade import (
    DEFAULT_STRIDE,
    AlwaysGate,
    CascadeGate,
    ScriptedGate,
    load_cascade,
)
from .contours import extract_contours, largest_contour, pointer_from_contour
from .images import GrayImage, Point, Rect, RgbImage, crop, decode_ppm, encode_ppm, to_grayscale
from .ocr import ExternalOcr, MockOcr, OcrDispatcher

STAGE_NAMES = ("gate", "subtract", "contour", "map", "board", "render")

LATENCY_BUDGET_MS = 100.0

DEFAULT_FRAME_WIDTH = 720
DEFAULT_FRAME_HEIGHT = 420
DEFAULT_ROI_SELECT = Rect(320, 220, 520, 420)
DEFAULT_ROI_DRAW = Rect(520, 220, 720, 420)
DEFAULT_FPS = 28.0

MANIFEST_NAME = "manifest.json"


def _rect_from_json(value: Any, label: str) -> Rect:
    if not (isinstance(value, (list, tuple)) and len(value) == 4):
        raise ValueError(f"{label} must be [x0, y0, x1, y1], got {value!r}")
    try:
        return Rect(*(int(v) for v in value))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad {label}: {exc}") from exc


@dataclass
class SessionConfig:
    width: int = DEFAULT_FRAME_WIDTH
    height: int = DEFAULT_FRAME_HEIGHT
    roi_select: Rect = DEFAULT_ROI_SELECT
    roi_draw: Rect = DEFAULT_ROI_DRAW
    alpha: float = 0.8
    warmup_frames: int = 100
    threshold: int = 15
    min_area: int = 50
    dwell_frames: int = DEFAULT_DWELL_FRAMES
    pointer_diameter: int = DEFAULT_POINTER_DIAMETER
    vui_height: int = VUI_HEIGHT
    gate: str = "always"
    gate_select: str = "always"
    gate_stride: int = DEFAULT_STRIDE
    gate_script: list[bool] = field(default_factory=list)
    cascade_path: str | None = None
    ocr: str = "mock"
    ocr_text: str = ""
    ocr_cmd: str | None = None
    ocr_mode: str = "sync"
    seed: int = 0
    fps: float = DEFAULT_FPS

    _JSON_KEYS = {
        "width", "height", "roi_select", "roi_draw", "alpha", "warmup_frames",
        "threshold", "min_area", "dwell_frames", "pointer_diameter", "vui_height",
        "gate", "gate_select", "gate_stride", "gate_script", "cascade_path",
        "ocr", "ocr_text", "ocr_cmd", "ocr_mode", "seed", "fps",
    }

    def validate(self) -> None:
        if not self.roi_select.inside(self.width, self.height):
            raise ValueError(f"roi_select {self.roi_select} outside {self.width}x{self.height} frame")
        if not self.roi_draw.inside(self.width, self.height):
            raise ValueError(f"roi_draw {self.roi_draw} outside {self.width}x{self.height} frame")
        if self.roi_select.overlaps(self.roi_draw):
            raise ValueError("roi_select and roi_draw must be disjoint")
        if self.gate not in ("always", "cascade", "scripted"):
            raise ValueError(f"unknown gate kind {self.gate!r}")
        if self.gate_select not in ("always", "cascade", "scripted"):
            raise ValueError(f"unknown gate kind {self.gate_select!r}")
        if self.ocr not in ("mock", "external"):
            raise ValueError(f"unknown ocr backend {self.ocr!r}")

    @classmethod
    def from_json(cls, raw: dict[str, Any]) -> "SessionConfig":
        unknown = set(raw) - cls._JSON_KEYS
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(raw)
        for key in ("roi_select", "roi_draw"):
            if key in kwargs:
                kwargs[key] = _rect_from_json(kwargs[key], key)
        config = cls(**kwargs)
        config.validate()
        return config

    def with_overrides(self, **overrides: Any) -> "SessionConfig":
        updated = replace(self, **{k: v for k, v in overrides.items() if v is not None})
        updated.validate()
        return updated


@dataclass(frozen=True)
class Frame:
    index: int
    image: RgbImage
    timestamp_ms: float


# -- synthetic traces -------------------------------------------------------


@dataclass(frozen=True)
class PathLeg:
    """Target blob centre and the number of frames to reach it (1 = jump/hold)."""

    x: int
    y: int
    frames: int


@dataclass
class SyntheticSpec:
    frames: int
    warmup: int
    width: int = DEFAULT_FRAME_WIDTH
    height: int = DEFAULT_FRAME_HEIGHT
    fps: float = DEFAULT_FPS
    background: int = 60
    blob: int = 230
    radius: int = 9
    seed: int = 0
    noise: int = 0
    roi_select: Rect = DEFAULT_ROI_SELECT
    roi_draw: Rect = DEFAULT_ROI_DRAW
    paths: dict[str, list[PathLeg]] = field(default_factory=dict)

    def active_frames(self) -> int:
        return self.frames - self.warmup

    def roi_for(self, name: str) -> Rect:
        return {"select": self.roi_select, "draw": self.roi_draw}[name]

    def validate(self) -> None:
        if self.frames < 1 or not 0 <= self.warmup <= self.frames:
            raise ValueError(f"bad frame counts: frames={self.frames} warmup={self.warmup}")
        if not 0 <= self.background <= 255 or not 0 <= self.blob <= 255:
            raise ValueError("intensities must be 0..255")
        if self.radius < 1:
            raise ValueError("blob radius must be >= 1")
        if self.noise < 0:
            raise ValueError("noise amplitude must be >= 0")
        for name, legs in self.paths.items():
            if name not in ("select", "draw"):
                raise ValueError(f"unknown path target {name!r} (use 'select' or 'draw')")
            roi = self.roi_for(name)
            if not legs:
                raise ValueError(f"{name} path has no legs")
            total = 0
            for leg in legs:
                if leg.frames < 1:
                    raise ValueError(f"{name} leg {leg} needs frames >= 1")
                if not (0 <= leg.x < roi.width and 0 <= leg.y < roi.height):
                    raise ValueError(f"{name} waypoint ({leg.x}, {leg.y}) outside {roi.width}x{roi.height} ROI")
                total += leg.frames
            if total != self.active_frames():
                raise ValueError(
                    f"{name} path covers {total} frames, expected {self.active_frames()}"
                )


def _parse_legs(raw: Any, active_frames: int, label: str) -> list[PathLeg]:
    if not isinstance(raw, list) or not raw:
        raise ValueError(f"{label} path must be a non-empty list")
    if all(isinstance(item, dict) for item in raw):
        try:
            return [PathLeg(int(i["x"]), int(i["y"]), int(i["frames"])) for i in raw]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad {label} leg: {exc}") from exc
    # Bare waypoints: first frame at the start point, remaining frames split
    # as evenly as possible across the segments (leftover to the earliest).
    try:
        points = [(int(p[0]), int(p[1])) for p in raw]
    except (TypeError, ValueError, IndexError) as exc:
        raise ValueError(f"bad {label} waypoint list: {exc}") from exc
    if len(points) == 1:
        return [PathLeg(points[0][0], points[0][1], active_frames)]
    segments = len(points) - 1
    remaining = active_frames - 1
    if remaining < segments:
        raise ValueError(f"{label} path needs at least {segments + 1} active frames")
    base, leftover = divmod(remaining, segments)
    legs = [PathLeg(points[0][0], points[0][1], 1)]
    for i, (x, y) in enumerate(points[1:]):
        legs.append(PathLeg(x, y, base + (1 if i < leftover else 0)))
    return legs


def parse_synthetic_spec(raw: dict[str, Any]) -> SyntheticSpec:
    known = {
        "frames", "warmup", "width", "height", "fps", "background", "blob",
        "radius", "seed", "noise", "roi_select", "roi_draw", "paths",
    }
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown synthetic spec keys: {sorted(unknown)}")
    try:
        frames = int(raw["frames"])
        warmup = int(raw["warmup"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"synthetic spec needs integer 'frames' and 'warmup': {exc}") from exc
    kwargs: dict[str, Any] = {"frames": frames, "warmup": warmup}
    for key in ("width", "height", "background", "blob", "radius", "seed", "noise"):
        if key in raw:
            kwargs[key] = int(raw[key])
    if "fps" in raw:
        kwargs["fps"] = float(raw["fps"])
    for key in ("roi_select", "roi_draw"):
        if key in raw:
            kwargs[key] = _rect_from_json(raw[key], key)
    spec = SyntheticSpec(**kwargs)
    paths = raw.get("paths", {})
    if not isinstance(paths, dict):
        raise ValueError("'paths' must be an object keyed by 'select'/'draw'")
    spec.paths = {
        name: _parse_legs(legs, spec.active_frames(), name) for name, legs in paths.items()
    }
    spec.validate()
    return spec


def _round_half_up(value: Fraction) -> int:
    return math.floor(value + Fraction(1, 2))


def path_positions(legs: list[PathLeg], active_frames: int) -> list[Point]:
    """Blob centre per active frame; linear interpolation in exact rationals."""
    positions: list[Point] = []
    current = (legs[0].x, legs[0].y)
    positions.extend([current] * legs[0].frames)
    for leg in legs[1:]:
        x0, y0 = current
        for j in range(1, leg.frames + 1):
            t = Fraction(j, leg.frames)
            positions.append(
                (_round_half_up(x0 + (leg.x - x0) * t), _round_half_up(y0 + (leg.y - y0) * t))
            )
        current = (leg.x, leg.y)
    assert len(positions) == active_frames
    return positions


def _stamp_blob(pixels: np.ndarray, roi: Rect, centre: Point, radius: int, value: int) -> None:
    """Filled disc at an ROI-relative centre, clipped to the ROI rect."""
    cx, cy = roi.x0 + centre[0], roi.y0 + centre[1]
    span = np.arange(-radius, radius + 1)
    dy, dx = np.meshgrid(span, span, indexing="ij")
    keep = dx * dx + dy * dy <= radius * radius
    xs = dx[keep] + cx
    ys = dy[keep] + cy
    inside = (xs >= roi.x0) & (xs < roi.x1) & (ys >= roi.y0) & (ys < roi.y1)
    pixels[ys[inside], xs[inside]] = value


class SyntheticSource:
    """Generates frames straight from a spec, no files involved."""

    def __init__(self, spec: SyntheticSpec) -> None:
        spec.validate()
        self.spec = spec
        self.fps = spec.fps
        self._positions = {
            name: path_positions(legs, spec.active_frames())
            for name, legs in spec.paths.items()
        }

    def frame_image(self, index: int, rng: np.random.Generator | None) -> RgbImage:
        spec = self.spec
        if spec.noise > 0 and rng is not None:
            delta = rng.integers(-spec.noise, spec.noise + 1, size=(spec.height, spec.width))
            gray = np.clip(spec.background + delta, 0, 255).astype(np.uint8)
        else:
            gray = np.full((spec.height, spec.width), spec.background, dtype=np.uint8)
        if index >= spec.warmup:
            for name, positions in self._positions.items():
                _stamp_blob(
                    gray, spec.roi_for(name), positions[index - spec.warmup], spec.radius, spec.blob
                )
        return RgbImage(np.repeat(gray[:, :, None], 3, axis=2))

    def __iter__(self) -> Iterator[Frame]:
        rng = np.random.default_rng(self.spec.seed) if self.spec.noise > 0 else None
        for index in range(self.spec.frames):
            yield Frame(
                index=index,
                image=self.frame_image(index, rng),
                timestamp_ms=index * 1000.0 / self.spec.fps,
            )


class TraceSource:
    """Replays a recorded trace directory (manifest.json + P6 frames)."""

    def __init__(self, trace_dir: str | Path) -> None:
        self.trace_dir = Path(trace_dir)
        manifest_path = self.trace_dir / MANIFEST_NAME
        if not manifest_path.is_file():
            raise FileNotFoundError(f"no {MANIFEST_NAME} in {self.trace_dir}")
        try:
            manifest = json.loads(manifest_path.read_text())
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed manifest: {exc}") from exc
        try:
            self.width = int(manifest["width"])
            self.height = int(manifest["height"])
            self.fps = float(manifest.get("fps", DEFAULT_FPS))
            self.frame_names = list(manifest["frames"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"manifest missing required fields: {exc}") from exc

    def __len__(self) -> int:
        return len(self.frame_names)

    def __iter__(self) -> Iterator[Frame]:
        for index, name in enumerate(self.frame_names):
            image = decode_ppm((self.trace_dir / name).read_bytes())
            if (image.width, image.height) != (self.width, self.height):
                raise ValueError(
                    f"frame {name} is {image.width}x{image.height}, "
                    f"manifest says {self.width}x{self.height}"
                )
            yield Frame(index=index, image=image, timestamp_ms=index * 1000.0 / self.fps)


def open_source(path: str | Path) -> TraceSource | SyntheticSource:
    """Trace directory or synthetic-spec JSON file, detected by path kind."""
    p = Path(path)
    if p.is_dir():
        return TraceSource(p)
    if p.is_file():
        try:
            raw = json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise ValueError(f"synthetic spec {p} is not valid JSON: {exc}") from exc
        return SyntheticSource(parse_synthetic_spec(raw))
    raise FileNotFoundError(f"no trace directory or spec file at {p}")


def generate_trace(spec: SyntheticSpec, out_dir: str | Path) -> Path:
    """Write manifest + frames; byte-identical for identical specs."""
    source = SyntheticSource(spec)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for frame in source:
        name = f"f{frame.index:06d}.ppm"
        (out / name).write_bytes(encode_ppm(frame.image))
        names.append(name)
    manifest = {
        "width": spec.width,
        "height": spec.height,
        "fps": spec.fps,
        "frames": names,
    }
    (out / MANIFEST_NAME).write_text(json.dumps(manifest, indent=2) + "\n")
    return out


#: Scripted 300-frame demo drive: the select blob dwells on the Draw button,
#: then parks mid-canvas while the draw blob writes a zig-zag stroke.
REFERENCE_SPEC: dict[str, Any] = {
    "frames": 300,
    "warmup": 120,
    "width": DEFAULT_FRAME_WIDTH,
    "height": DEFAULT_FRAME_HEIGHT,
    "fps": DEFAULT_FPS,
    "background": 60,
    "blob": 230,
    "radius": 9,
    "seed": 7,
    "noise": 0,
    "paths": {
        "select": [
            {"x": 100, "y": 19, "frames": 20},
            {"x": 100, "y": 159, "frames": 10},
            {"x": 100, "y": 159, "frames": 150},
        ],
        "draw": [
            {"x": 40, "y": 80, "frames": 25},
            {"x": 160, "y": 80, "frames": 60},
            {"x": 100, "y": 170, "frames": 95},
        ],
    },
}


# -- session ----------------------------------------------------------------


@dataclass
class StepResult:
    phase: str  # "warmup" | "active"
    pointer_draw: Point | None
    pointer_select: Point | None
    hand_detected: bool
    events: list[BoardEvent]
    stage_timings_us: dict[str, float]
    rendered: RgbImage

    @property
    def latency_ms(self) -> float:
        return sum(self.stage_timings_us.values()) / 1000.0


@dataclass(frozen=True)
class SessionStats:
    frames: int
    mean_latency_ms: float
    p95_latency_ms: float
    stage_means_ms: dict[str, float]

    @classmethod
    def from_timings(cls, timings: list[dict[str, float]]) -> "SessionStats":
        n = len(timings)
        if n == 0:
            return cls(0, 0.0, 0.0, {name: 0.0 for name in STAGE_NAMES})
        latencies = sorted(sum(t.values()) / 1000.0 for t in timings)
        rank = math.ceil(0.95 * n)  # nearest-rank percentile
        return cls(
            frames=n,
            mean_latency_ms=sum(latencies) / n,
            p95_latency_ms=latencies[rank - 1],
            stage_means_ms={
                name: sum(t[name] for t in timings) / n / 1000.0 for name in STAGE_NAMES
            },
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "frames": self.frames,
            "mean_latency_ms": self.mean_latency_ms,
            "p95_latency_ms": self.p95_latency_ms,
            "stages": {name: self.stage_means_ms[name] for name in STAGE_NAMES},
        }


def event_to_json(event: BoardEvent) -> dict[str, Any]:
    payload: dict[str, Any] = {"frame": event.frame_index, "kind": event.kind}
    for key, value in event.detail.items():
        if isinstance(value, RgbImage):
            payload["width"] = value.width
            payload["height"] = value.height
        else:
            payload[key] = value
    return payload


def _make_gate(kind: str, config: SessionConfig):
    if kind == "always":
        return AlwaysGate()
    if kind == "scripted":
        return ScriptedGate(list(config.gate_script))
    if kind == "cascade":
        if config.cascade_path is None:
            raise ValueError("gate 'cascade' needs cascade_path")
        return CascadeGate(load_cascade(Path(config.cascade_path).read_bytes()), config.gate_stride)
    raise ValueError(f"unknown gate kind {kind!r}")


def _make_ocr(config: SessionConfig) -> OcrDispatcher:
    if config.ocr == "external":
        backend = ExternalOcr(config.ocr_cmd)
    else:
        backend = MockOcr(config.ocr_text)
    return OcrDispatcher(backend, config.ocr_mode)


class Session:
    """One processing loop over one frame stream."""

    def __init__(self, config: SessionConfig, *, save_dir: str | Path | None = None) -> None:
        config.validate()
        self.config = config
        self.board = Board(
            config.width,
            config.height,
            vui_height=config.vui_height,
            dwell_frames=config.dwell_frames,
            pointer_diameter=config.pointer_diameter,
            save_dir=save_dir,
        )
        self.bg_select = BackgroundModel(
            config.roi_select.width, config.roi_select.height, config.alpha, config.warmup_frames
        )
        self.bg_draw = BackgroundModel(
            config.roi_draw.width, config.roi_draw.height, config.alpha, config.warmup_frames
        )
        self.gate_select = _make_gate(config.gate_select, config)
        self.gate_draw = _make_gate(config.gate, config)
        self.ocr = _make_ocr(config)
        self.timings: list[dict[str, float]] = []
        self.events: list[BoardEvent] = []
        self.frames_processed = 0

    def _pointer_for(self, bg: BackgroundModel, roi_img: GrayImage, detected: bool) -> Point | None:
        if not detected:
            return None
        mask = bg.residual_mask(roi_img, self.config.threshold)
        contour = largest_contour(extract_contours(mask), self.config.min_area)
        if contour is None:
            return None
        return pointer_from_contour(contour)

    def step(self, frame: Frame) -> StepResult:
        cfg = self.config
        if (frame.image.width, frame.image.height) != (cfg.width, cfg.height):
            raise ValueError(
                f"frame {frame.image.width}x{frame.image.height} does not match "
                f"configured {cfg.width}x{cfg.height}"
            )
        clock = time.perf_counter_ns
        timings = dict.fromkeys(STAGE_NAMES, 0.0)

        t0 = clock()
        gray = to_grayscale(frame.image)
        roi_sel = crop(gray, cfg.roi_select)
        roi_drw = crop(gray, cfg.roi_draw)
        prep_ns = clock() - t0

        if not self.bg_draw.frozen:
            t0 = clock()
            self.bg_select.accumulate(roi_sel)
            self.bg_draw.accumulate(roi_drw)
            timings["subtract"] = (prep_ns + clock() - t0) / 1000.0
            phase = "warmup"
            pointer_sel = pointer_drw = None
            hand_drw = False
            events: list[BoardEvent] = []
            t0 = clock()
            rendered = self.board.render(None)
            timings["render"] = (clock() - t0) / 1000.0
        else:
            t0 = clock()
            hand_sel = self.gate_select.detect(roi_sel)
            hand_drw = self.gate_draw.detect(roi_drw)
            timings["gate"] = (clock() - t0) / 1000.0

            # Residual masks + components; mask work is folded into "subtract"
            # and component work into "contour" inside _pointer_for, so time
            # them together and split by a second pass of the cheap parts.
            t0 = clock()
            mask_sel = self.bg_select.residual_mask(roi_sel, cfg.threshold) if hand_sel else None
            mask_drw = self.bg_draw.residual_mask(roi_drw, cfg.threshold) if hand_drw else None
            timings["subtract"] = (prep_ns + clock() - t0) / 1000.0

            t0 = clock()
            top_sel = top_drw = None
            if mask_sel is not None:
                contour = largest_contour(extract_contours(mask_sel), cfg.min_area)
                top_sel = pointer_from_contour(contour) if contour else None
            if mask_drw is not None:
                contour = largest_contour(extract_contours(mask_drw), cfg.min_area)
                top_drw = pointer_from_contour(contour) if contour else None
            timings["contour"] = (clock() - t0) / 1000.0

            t0 = clock()
            frame_rect = self.board.frame_spec
            pointer_sel = (
                map_to_canvas(top_sel, cfg.roi_select, frame_rect) if top_sel is not None else None
            )
            pointer_drw = (
                map_to_canvas(top_drw, cfg.roi_draw, frame_rect) if top_drw is not None else None
            )
            timings["map"] = (clock() - t0) / 1000.0

            t0 = clock()
            events = list(self.board.step_select(pointer_sel, frame.index))
            self.board.step_canvas(pointer_drw)
            events = self._dispatch_ocr(events, frame.index)
            timings["board"] = (clock() - t0) / 1000.0

            phase = "active"
            t0 = clock()
            rendered = self.board.render(pointer_drw)
            timings["render"] = (clock() - t0) / 1000.0

        self.timings.append(timings)
        self.events.extend(events)
        self.frames_processed += 1
        return StepResult(
            phase=phase,
            pointer_draw=pointer_drw if phase == "active" else None,
            pointer_select=pointer_sel if phase == "active" else None,
            hand_detected=hand_drw,
            events=events,
            stage_timings_us=timings,
            rendered=rendered,
        )

    def _dispatch_ocr(self, events: list[BoardEvent], frame_index: int) -> list[BoardEvent]:
        out: list[BoardEvent] = []
        for event in events:
            out.append(event)
            if event.kind == "detect_requested":
                out.extend(self.ocr.submit(event.detail["image"], frame_index))
        out.extend(self.ocr.poll(frame_index))
        return out

    def apply_command(
        self,
        action: str,
        *,
        index: int | None = None,
        mode: str | None = None,
    ) -> list[BoardEvent]:
        """Board action equivalent to a completed dwell, driven externally."""
        frame_index = self.frames_processed
        if action == "clear":
            events = self.board.activate(Mode.CLEAR, frame_index)
        elif action == "save":
            events = self.board.activate(Mode.SAVE, frame_index)
        elif action == "detect":
            events = self._dispatch_ocr(self.board.activate(Mode.DETECT, frame_index), frame_index)
        elif action == "set_color":
            if index is None:
                raise ValueError("set_color needs an index")
            events = self.board.set_color_index(int(index), frame_index)
        elif action == "set_mode":
            try:
                target = Mode(mode)
            except ValueError as exc:
                raise ValueError(f"unknown mode {mode!r}") from exc
            events = self.board.activate(target, frame_index)
        else:
            raise ValueError(f"unknown action {action!r}")
        self.events.extend(events)
        return events

    def run(self, source) -> SessionStats:
        for frame in source:
            self.step(frame)
        leftovers = self.ocr.drain(max(self.frames_processed - 1, 0))
        self.events.extend(leftovers)
        self.ocr.close()
        return self.stats()

    def stats(self) -> SessionStats:
        return SessionStats.from_timings(self.timings)

    def events_json(self) -> list[dict[str, Any]]:
        return [event_to_json(e) for e in self.events]

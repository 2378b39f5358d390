"""Canvas state machine: operation modes, dwell-activated buttons, stroke stamping.

The board owns a white canvas spanning the full frame. The top strip hosts the
on-canvas buttons (one per operation mode); hovering a button for a fixed
number of consecutive frames activates it. One-shot modes (Clear, Color,
Detect, Save) run their action and fall back to Move; Draw, Erase and Move
persist. Drawing clips to the area below the button strip so UI chrome never
leaks into saved or recognised images.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import glyphs
from .images import Point, Rect, RgbImage, draw_disc, encode_ppm

VUI_HEIGHT = 40
DEFAULT_DWELL_FRAMES = 15
DEFAULT_POINTER_DIAMETER = 4

CANVAS_BACKGROUND = (255, 255, 255)
PALETTE: tuple[tuple[int, int, int], ...] = (
    (0, 0, 0),
    (255, 0, 0),
    (0, 255, 0),
    (0, 0, 255),
)

POINTER_COLOR = (255, 0, 255)
_BUTTON_FILL = (210, 210, 210)
_BUTTON_ACTIVE = (150, 205, 150)
_BUTTON_BORDER = (90, 90, 90)
_BUTTON_TEXT = (30, 30, 30)
_STRIP_FILL = (230, 230, 230)


class Mode(str, enum.Enum):
    CLEAR = "Clear"
    COLOR = "Color"
    DETECT = "Detect"
    DRAW = "Draw"
    ERASE = "Erase"
    MOVE = "Move"
    SAVE = "Save"


#: Button order across the strip, left to right.
MODE_ORDER = (Mode.CLEAR, Mode.COLOR, Mode.DETECT, Mode.DRAW, Mode.ERASE, Mode.MOVE, Mode.SAVE)

ONE_SHOT_MODES = frozenset({Mode.CLEAR, Mode.COLOR, Mode.DETECT, Mode.SAVE})


@dataclass(frozen=True)
class VuiRegion:
    rect: Rect
    mode: Mode
    label: str


@dataclass(frozen=True)
class BoardEvent:
    """Observable effect of a board or session action, in causal order."""

    kind: str
    frame_index: int
    detail: dict[str, Any] = field(default_factory=dict)


def build_vui(frame_width: int, strip_height: int = VUI_HEIGHT) -> list[VuiRegion]:
    """Equal-width buttons across the top strip, boundaries at floor(i*W/n)."""
    n = len(MODE_ORDER)
    bounds = [frame_width * i // n for i in range(n + 1)]
    return [
        VuiRegion(rect=Rect(bounds[i], 0, bounds[i + 1], strip_height), mode=mode, label=mode.value.upper())
        for i, mode in enumerate(MODE_ORDER)
    ]


def map_to_canvas(p: Point, roi: Rect, frame: Rect) -> Point:
    """Scale an ROI-relative pointer to frame coordinates, flooring to pixels.

    Uses exact integer arithmetic: floor(frame_extent * coordinate / roi_extent),
    with the frame origin at (0, 0).
    """
    rx, ry = p
    cx = (frame.x1 - frame.x0) * rx // (roi.x1 - roi.x0)
    cy = (frame.y1 - frame.y0) * ry // (roi.y1 - roi.y0)
    return (cx, cy)


class Board:
    def __init__(
        self,
        width: int,
        height: int,
        *,
        vui_height: int = VUI_HEIGHT,
        dwell_frames: int = DEFAULT_DWELL_FRAMES,
        pointer_diameter: int = DEFAULT_POINTER_DIAMETER,
        save_dir: str | Path | None = None,
    ) -> None:
        if height <= vui_height:
            raise ValueError(f"canvas height {height} leaves no room below the {vui_height}px strip")
        if dwell_frames < 1:
            raise ValueError("dwell_frames must be >= 1")
        self.frame_spec = Rect(0, 0, width, height)
        self.vui_height = vui_height
        self.dwell_frames = dwell_frames
        self.pointer_diameter = pointer_diameter
        self.save_dir = Path(save_dir) if save_dir is not None else None
        self.canvas = RgbImage.full(width, height, CANVAS_BACKGROUND)
        self.vui = build_vui(width, vui_height)
        self.active_mode = Mode.MOVE
        self.palette_index = 0
        self.draw_color = PALETTE[0]
        self._dwell_region: VuiRegion | None = None
        self._dwell_count = 0
        self._strip_cache: dict[Mode, np.ndarray] = {}

    @property
    def width(self) -> int:
        return self.frame_spec.width

    @property
    def height(self) -> int:
        return self.frame_spec.height

    @property
    def dwell_state(self) -> tuple[VuiRegion | None, int]:
        return self._dwell_region, self._dwell_count

    # -- pointer handling ---------------------------------------------------

    def hit_test(self, c: Point | None) -> VuiRegion | None:
        if c is None:
            return None
        for region in self.vui:
            if region.rect.contains(c[0], c[1]):
                return region
        return None

    def step_select(self, c: Point | None, frame_index: int) -> list[BoardEvent]:
        """Dwell bookkeeping for the mode-select pointer; no canvas effect."""
        region = self.hit_test(c)
        if region is None:
            self._dwell_region = None
            self._dwell_count = 0
            return []
        if region != self._dwell_region:
            self._dwell_region = region
            self._dwell_count = 1
        else:
            self._dwell_count += 1
        if self._dwell_count >= self.dwell_frames:
            self._dwell_count = 0
            return self.activate(region.mode, frame_index)
        return []

    def step_canvas(self, c: Point | None) -> None:
        """Apply the active mode at the drawing pointer; Move stamps nothing."""
        if c is None:
            return
        if self.active_mode is Mode.DRAW:
            self._stamp(c, self.draw_color)
        elif self.active_mode is Mode.ERASE:
            self._stamp(c, CANVAS_BACKGROUND)

    def step_pointer(self, c: Point | None, frame_index: int) -> list[BoardEvent]:
        """Single-pointer step: button hover wins over canvas action."""
        if self.hit_test(c) is not None:
            return self.step_select(c, frame_index)
        self._dwell_region = None
        self._dwell_count = 0
        self.step_canvas(c)
        return []

    def _stamp(self, c: Point, color: tuple[int, int, int]) -> None:
        draw_disc(self.canvas, c, self.pointer_diameter, color, y_min=self.vui_height)

    # -- mode activation ----------------------------------------------------

    def activate(self, mode: Mode, frame_index: int) -> list[BoardEvent]:
        """Switch modes exactly as a completed dwell would, side effects included."""
        events = [BoardEvent("mode_changed", frame_index, {"mode": mode.value})]
        self.active_mode = mode
        if mode is Mode.CLEAR:
            self.clear()
            events.append(BoardEvent("cleared", frame_index))
        elif mode is Mode.COLOR:
            events.extend(self.set_color_index(self.palette_index + 1, frame_index))
        elif mode is Mode.SAVE:
            filename = f"canvas-{frame_index}.ppm"
            if self.save_dir is not None:
                self.save_dir.mkdir(parents=True, exist_ok=True)
                (self.save_dir / filename).write_bytes(encode_ppm(self.drawing_area()))
            events.append(BoardEvent("saved", frame_index, {"path": filename}))
        elif mode is Mode.DETECT:
            events.append(
                BoardEvent("detect_requested", frame_index, {"image": self.drawing_area()})
            )
        if mode in ONE_SHOT_MODES:
            self.active_mode = Mode.MOVE
        return events

    def set_color_index(self, index: int, frame_index: int) -> list[BoardEvent]:
        self.palette_index = index % len(PALETTE)
        self.draw_color = PALETTE[self.palette_index]
        return [BoardEvent("color_changed", frame_index, {"rgb": list(self.draw_color)})]

    def clear(self) -> None:
        self.canvas.pixels[:] = CANVAS_BACKGROUND

    def drawing_area(self) -> RgbImage:
        """Copy of the canvas below the button strip (what Save and Detect see)."""
        return RgbImage(self.canvas.pixels[self.vui_height:].copy())

    # -- rendering ----------------------------------------------------------

    def _render_strip(self) -> np.ndarray:
        cached = self._strip_cache.get(self.active_mode)
        if cached is not None:
            return cached
        strip = RgbImage.full(self.width, self.vui_height, _STRIP_FILL)
        for region in self.vui:
            r = region.rect
            fill = _BUTTON_ACTIVE if region.mode is self.active_mode else _BUTTON_FILL
            strip.pixels[r.y0:r.y1, r.x0:r.x1] = fill
            strip.pixels[r.y0, r.x0:r.x1] = _BUTTON_BORDER
            strip.pixels[r.y1 - 1, r.x0:r.x1] = _BUTTON_BORDER
            strip.pixels[r.y0:r.y1, r.x0] = _BUTTON_BORDER
            strip.pixels[r.y0:r.y1, r.x1 - 1] = _BUTTON_BORDER
            tw, th = glyphs.text_size(region.label, scale=2)
            tx = r.x0 + max((r.width - tw) // 2, 2)
            ty = (self.vui_height - th) // 2
            glyphs.stamp_text(strip, region.label, (tx, ty), _BUTTON_TEXT, scale=2)
        self._strip_cache[self.active_mode] = strip.pixels
        return strip.pixels

    def render(self, c: Point | None = None) -> RgbImage:
        """Canvas + button strip + optional pointer overlay; pure read."""
        out = self.canvas.copy()
        out.pixels[: self.vui_height] = self._render_strip()
        if c is not None:
            draw_disc(out, c, self.pointer_diameter, POINTER_COLOR)
        return out

"""Live session service: one WebSocket connection, one fresh session.

Each connection gets its own pipeline thread that loops the configured trace
through a new session and publishes one state message per processed frame.
Delivery is latest-wins: a slow client skips intermediate states but never
sees them out of order. Client commands are queued and applied on the
pipeline thread right before the next frame, exactly like a completed dwell.
"""

from __future__ import annotations

import asyncio
import base64
import json
import queue
import tempfile
import threading
import time
from pathlib import Path
from typing import Any, Iterable, Iterator

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import PlainTextResponse

from .board import Mode
from .engine import (
    REFERENCE_SPEC,
    Frame,
    Session,
    SessionConfig,
    SyntheticSource,
    event_to_json,
    open_source,
    parse_synthetic_spec,
)
from .images import Rect, RgbImage, encode_ppm

PROTO_VERSION = 1

ROI_SELECT_OUTLINE = (255, 210, 0)
ROI_DRAW_OUTLINE = (0, 200, 255)

COMMAND_ACTIONS = ("clear", "save", "detect", "set_color", "set_mode")


def _outline(pixels, rect: Rect, color: tuple[int, int, int]) -> None:
    pixels[rect.y0, rect.x0 : rect.x1] = color
    pixels[rect.y1 - 1, rect.x0 : rect.x1] = color
    pixels[rect.y0 : rect.y1, rect.x0] = color
    pixels[rect.y0 : rect.y1, rect.x1 - 1] = color


def annotate_camera(image: RgbImage, roi_select: Rect, roi_draw: Rect) -> RgbImage:
    """Camera view with both ROI rectangles outlined."""
    pixels = image.pixels.copy()
    _outline(pixels, roi_select, ROI_SELECT_OUTLINE)
    _outline(pixels, roi_draw, ROI_DRAW_OUTLINE)
    return RgbImage(pixels)


def _b64_ppm(image: RgbImage) -> str:
    return base64.b64encode(encode_ppm(image)).decode("ascii")


def parse_command(text: str) -> tuple[dict[str, Any] | None, str | None]:
    """(kwargs for Session.apply_command, None) or (None, error reason)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return None, "malformed_json"
    if not isinstance(data, dict) or data.get("type") != "command":
        return None, "unexpected_message"
    action = data.get("action")
    if action not in COMMAND_ACTIONS:
        return None, "unknown_action"
    if action == "set_color":
        index = data.get("index")
        if isinstance(index, bool) or not isinstance(index, int):
            return None, "bad_command"
        return {"action": action, "index": index}, None
    if action == "set_mode":
        try:
            Mode(data.get("mode"))
        except ValueError:
            return None, "bad_command"
        return {"action": action, "mode": data["mode"]}, None
    return {"action": action}, None


class LatestSlot:
    """Size-one handoff from the pipeline thread into the event loop."""

    def __init__(self) -> None:
        self.queue: asyncio.Queue[dict[str, Any]] = asyncio.Queue(maxsize=1)

    def _replace(self, item: dict[str, Any]) -> None:
        if self.queue.full():
            self.queue.get_nowait()
        self.queue.put_nowait(item)

    def publish(self, loop: asyncio.AbstractEventLoop, item: dict[str, Any]) -> None:
        loop.call_soon_threadsafe(self._replace, item)

    async def next(self) -> dict[str, Any]:
        return await self.queue.get()


def _looping_frames(source: Iterable[Frame], fps: float) -> Iterator[Frame]:
    """Repeat the source forever with a connection-local increasing index."""
    counter = 0
    while True:
        produced = False
        for frame in source:
            produced = True
            yield Frame(counter, frame.image, counter * 1000.0 / fps)
            counter += 1
        if not produced:
            return


def _state_message(session: Session, frame: Frame, result, events) -> dict[str, Any]:
    cfg = session.config
    camera = annotate_camera(frame.image, cfg.roi_select, cfg.roi_draw)
    return {
        "type": "state",
        "frame_index": frame.index,
        "camera_b64": _b64_ppm(camera),
        "canvas_b64": _b64_ppm(result.rendered),
        "pointer_draw": list(result.pointer_draw) if result.pointer_draw else None,
        "pointer_select": list(result.pointer_select) if result.pointer_select else None,
        "mode": session.board.active_mode.value,
        "hand_detected": result.hand_detected,
        "latency_ms": result.latency_ms,
        "events": [event_to_json(e) for e in events],
    }


def _pipeline(
    session: Session,
    source: Iterable[Frame],
    fps: float,
    commands: "queue.Queue[dict[str, Any]]",
    slot: LatestSlot,
    loop: asyncio.AbstractEventLoop,
    stop: threading.Event,
    pace: bool,
) -> None:
    try:
        for frame in _looping_frames(source, fps):
            if stop.is_set():
                break
            command_events = []
            while True:
                try:
                    kwargs = commands.get_nowait()
                except queue.Empty:
                    break
                try:
                    command_events.extend(session.apply_command(**kwargs))
                except ValueError:
                    continue  # validated at the socket; stale modes are skipped
            result = session.step(frame)
            slot.publish(
                loop, _state_message(session, frame, result, command_events + result.events)
            )
            if pace:
                time.sleep(1.0 / fps)
    finally:
        session.ocr.close()


async def _send_states(ws: WebSocket, slot: LatestSlot) -> None:
    while True:
        message = await slot.next()
        await ws.send_json(message)


def create_app(
    config: SessionConfig | None = None,
    *,
    trace: str | Path | None = None,
    pace: bool = True,
) -> FastAPI:
    config = config or SessionConfig()
    config.validate()
    if trace is not None:
        source = open_source(trace)
    else:
        source = SyntheticSource(parse_synthetic_spec(REFERENCE_SPEC))
    fps = float(getattr(source, "fps", config.fps)) or config.fps

    app = FastAPI()
    app.state.config = config
    app.state.source = source
    app.state.pace = pace

    @app.get("/healthz", response_class=PlainTextResponse)
    async def healthz() -> str:
        return "ok"

    @app.websocket("/ws")
    async def ws_session(ws: WebSocket) -> None:
        await ws.accept()
        await ws.send_json(
            {
                "type": "hello",
                "proto": PROTO_VERSION,
                "width": config.width,
                "height": config.height,
            }
        )
        loop = asyncio.get_running_loop()
        slot = LatestSlot()
        commands: queue.Queue[dict[str, Any]] = queue.Queue()
        stop = threading.Event()
        with tempfile.TemporaryDirectory(prefix="airboard-ws-") as save_dir:
            session = Session(config, save_dir=save_dir)
            worker = threading.Thread(
                target=_pipeline,
                args=(session, source, fps, commands, slot, loop, stop, pace),
                daemon=True,
            )
            worker.start()
            sender = asyncio.create_task(_send_states(ws, slot))
            try:
                while True:
                    text = await ws.receive_text()
                    kwargs, error = parse_command(text)
                    if error is not None:
                        await ws.send_json({"type": "error", "reason": error})
                    else:
                        commands.put(kwargs)
            except WebSocketDisconnect:
                pass
            finally:
                stop.set()
                sender.cancel()
                worker.join(timeout=5.0)

    return app

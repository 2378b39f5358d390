"""Pluggable text-recognition backends for Detect mode.

The mock backend answers with a configured string and keeps the test suite
hermetic. The external backend hands the canvas to a command-line engine via
a temp file and reads recognised text from its standard output. A dispatcher
wraps either one so recognition can run inline (deterministic replay) or on
a worker thread (live sessions), with at most one request in flight.
"""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
import time
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

from .board import BoardEvent
from .images import RgbImage, encode_ppm

DEFAULT_OCR_COMMAND = "tesseract <image> stdout"
OCR_COMMAND_ENV = "AIRBOARD_OCR_CMD"
DEFAULT_TIMEOUT_S = 10.0


class OcrError(RuntimeError):
    """Backend unavailable, failed, or timed out; the session survives it."""


@dataclass(frozen=True)
class OcrResult:
    text: str
    confidence: float | None
    elapsed_ms: float

    def __post_init__(self) -> None:
        if self.confidence is not None and not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence out of range: {self.confidence}")


class OcrBackend(Protocol):
    def recognize(self, img: RgbImage) -> OcrResult: ...


class MockOcr:
    """Returns a configured string; optionally sleeps or fails, for tests."""

    def __init__(self, text: str = "", *, delay_s: float = 0.0, fail: bool = False) -> None:
        self.text = text
        self.delay_s = delay_s
        self.fail = fail

    def recognize(self, img: RgbImage) -> OcrResult:
        started = time.perf_counter()
        if self.delay_s > 0:
            time.sleep(self.delay_s)
        if self.fail:
            raise OcrError("mock backend configured to fail")
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        return OcrResult(text=self.text, confidence=1.0, elapsed_ms=elapsed_ms)


def resolve_command_template(template: str | None = None) -> str:
    return template or os.environ.get(OCR_COMMAND_ENV) or DEFAULT_OCR_COMMAND


class ExternalOcr:
    """Shells out to an OCR engine; the image crosses as a PPM temp file."""

    def __init__(self, command_template: str | None = None, timeout_s: float = DEFAULT_TIMEOUT_S) -> None:
        self.command_template = resolve_command_template(command_template)
        self.timeout_s = timeout_s

    def recognize(self, img: RgbImage) -> OcrResult:
        started = time.perf_counter()
        with tempfile.TemporaryDirectory(prefix="airboard-ocr-") as tmp:
            image_path = Path(tmp) / "drawing.ppm"
            image_path.write_bytes(encode_ppm(img))
            argv = [
                arg.replace("<image>", str(image_path))
                for arg in shlex.split(self.command_template)
            ]
            try:
                proc = subprocess.run(
                    argv, capture_output=True, text=True, timeout=self.timeout_s
                )
            except FileNotFoundError as exc:
                raise OcrError(f"OCR engine not found: {argv[0]}") from exc
            except subprocess.TimeoutExpired as exc:
                raise OcrError(f"OCR timed out after {self.timeout_s}s") from exc
        if proc.returncode != 0:
            raise OcrError(
                f"OCR engine exited {proc.returncode}: {proc.stderr.strip()[:200]}"
            )
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        return OcrResult(text=proc.stdout.strip(), confidence=None, elapsed_ms=elapsed_ms)


class OcrDispatcher:
    """Session-side recognition driver with a one-request-in-flight limit.

    In "sync" mode the result event lands on the requesting frame, which keeps
    replay deterministic. In "worker" mode the request runs on a thread and the
    result event lands on whatever frame first sees it finished; a request
    arriving while one is pending is rejected with a busy event.
    """

    def __init__(self, backend: OcrBackend, mode: str = "sync") -> None:
        if mode not in ("sync", "worker"):
            raise ValueError(f"unknown dispatcher mode {mode!r}")
        self.backend = backend
        self.mode = mode
        self._executor: ThreadPoolExecutor | None = None
        self._pending: Future | None = None

    def submit(self, img: RgbImage, frame_index: int) -> list[BoardEvent]:
        if self.mode == "sync":
            return [self._finish(frame_index, lambda: self.backend.recognize(img))]
        if self._pending is not None and not self._pending.done():
            return [BoardEvent("detect_busy", frame_index)]
        if self._executor is None:
            self._executor = ThreadPoolExecutor(max_workers=1)
        self._pending = self._executor.submit(self.backend.recognize, img)
        return []

    def poll(self, frame_index: int) -> list[BoardEvent]:
        """Collect a finished worker-mode result, if any."""
        if self._pending is None or not self._pending.done():
            return []
        future, self._pending = self._pending, None
        return [self._finish(frame_index, future.result)]

    def drain(self, frame_index: int, timeout_s: float | None = None) -> list[BoardEvent]:
        """Block until any pending request resolves (end-of-run cleanup)."""
        if self._pending is None:
            return []
        future, self._pending = self._pending, None
        try:
            result = future.result(timeout=timeout_s)
        except Exception as exc:  # noqa: BLE001 - converted to an event below
            return [BoardEvent("detect_failed", frame_index, {"reason": str(exc)})]
        return [
            BoardEvent(
                "detect_result",
                frame_index,
                {"text": result.text, "confidence": result.confidence},
            )
        ]

    def _finish(self, frame_index: int, produce) -> BoardEvent:
        try:
            result = produce()
        except OcrError as exc:
            return BoardEvent("detect_failed", frame_index, {"reason": str(exc)})
        return BoardEvent(
            "detect_result",
            frame_index,
            {"text": result.text, "confidence": result.confidence},
        )

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

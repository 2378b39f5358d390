"""Connected-component extraction from binary masks and pointer derivation.

Components use 8-connectivity. A contour is the filled pixel set of one
component; its "top" (minimal y, then minimal x) is the drawing pointer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .images import BinaryMask, Point

DEFAULT_MIN_AREA = 50

_NEIGHBOURS = ((-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1))


@dataclass(frozen=True)
class Contour:
    """One 8-connected foreground component."""

    pixels: frozenset[Point]
    area: int
    top: Point

    @classmethod
    def from_pixels(cls, pixels: set[Point]) -> "Contour":
        if not pixels:
            raise ValueError("a contour needs at least one pixel")
        top = min(pixels, key=lambda p: (p[1], p[0]))
        return cls(pixels=frozenset(pixels), area=len(pixels), top=top)


def extract_contours(mask: BinaryMask) -> list[Contour]:
    """All components, ordered by the raster position of their first pixel."""
    coords = np.argwhere(mask.pixels)  # (y, x) pairs in raster order
    foreground: set[Point] = {(int(x), int(y)) for y, x in coords}
    seen: set[Point] = set()
    contours: list[Contour] = []
    for y, x in coords:
        start = (int(x), int(y))
        if start in seen:
            continue
        component: set[Point] = set()
        queue: deque[Point] = deque([start])
        seen.add(start)
        while queue:
            px, py = queue.popleft()
            component.add((px, py))
            for dx, dy in _NEIGHBOURS:
                neighbour = (px + dx, py + dy)
                if neighbour in foreground and neighbour not in seen:
                    seen.add(neighbour)
                    queue.append(neighbour)
        contours.append(Contour.from_pixels(component))
    return contours


def largest_contour(contours: list[Contour], min_area: int = DEFAULT_MIN_AREA) -> Contour | None:
    """Max-area contour among those with area >= min_area.

    Ties go to the lexicographically smallest top point (y, then x), so the
    result is independent of input order.
    """
    qualifying = [c for c in contours if c.area >= min_area]
    if not qualifying:
        return None
    return min(qualifying, key=lambda c: (-c.area, c.top[1], c.top[0]))


def pointer_from_contour(contour: Contour) -> Point:
    """ROI-scale pointer: the component's topmost pixel."""
    return contour.top

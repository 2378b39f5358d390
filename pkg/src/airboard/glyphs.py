"""Tiny 5x7 bitmap font for button labels and synthetic test text.

Uppercase A-Z plus space. Glyphs scale by integer nearest-neighbour blocks,
so stamped text is deterministic down to the pixel.
"""

from __future__ import annotations

import numpy as np

from .images import RgbImage

GLYPH_W = 5
GLYPH_H = 7

_FONT = {
    "A": ".###.|#...#|#...#|#####|#...#|#...#|#...#",
    "B": "####.|#...#|#...#|####.|#...#|#...#|####.",
    "C": ".###.|#...#|#....|#....|#....|#...#|.###.",
    "D": "####.|#...#|#...#|#...#|#...#|#...#|####.",
    "E": "#####|#....|#....|####.|#....|#....|#####",
    "F": "#####|#....|#....|####.|#....|#....|#....",
    "G": ".###.|#...#|#....|#.###|#...#|#...#|.###.",
    "H": "#...#|#...#|#...#|#####|#...#|#...#|#...#",
    "I": "#####|..#..|..#..|..#..|..#..|..#..|#####",
    "J": "..###|...#.|...#.|...#.|...#.|#..#.|.##..",
    "K": "#...#|#..#.|#.#..|##...|#.#..|#..#.|#...#",
    "L": "#....|#....|#....|#....|#....|#....|#####",
    "M": "#...#|##.##|#.#.#|#.#.#|#...#|#...#|#...#",
    "N": "#...#|##..#|#.#.#|#..##|#...#|#...#|#...#",
    "O": ".###.|#...#|#...#|#...#|#...#|#...#|.###.",
    "P": "####.|#...#|#...#|####.|#....|#....|#....",
    "Q": ".###.|#...#|#...#|#...#|#.#.#|#..#.|.##.#",
    "R": "####.|#...#|#...#|####.|#.#..|#..#.|#...#",
    "S": ".####|#....|#....|.###.|....#|....#|####.",
    "T": "#####|..#..|..#..|..#..|..#..|..#..|..#..",
    "U": "#...#|#...#|#...#|#...#|#...#|#...#|.###.",
    "V": "#...#|#...#|#...#|#...#|#...#|.#.#.|..#..",
    "W": "#...#|#...#|#...#|#.#.#|#.#.#|##.##|#...#",
    "X": "#...#|#...#|.#.#.|..#..|.#.#.|#...#|#...#",
    "Y": "#...#|#...#|.#.#.|..#..|..#..|..#..|..#..",
    "Z": "#####|....#|...#.|..#..|.#...|#....|#####",
    " ": ".....|.....|.....|.....|.....|.....|.....",
}


def glyph_mask(char: str, scale: int = 1) -> np.ndarray:
    """Boolean glyph bitmap scaled by integer block replication."""
    rows = _FONT[char.upper()].split("|")
    base = np.array([[c == "#" for c in row] for row in rows], dtype=bool)
    if scale == 1:
        return base
    return np.kron(base, np.ones((scale, scale), dtype=bool))


def text_size(text: str, scale: int = 1) -> tuple[int, int]:
    """(width, height) of stamped text; one font pixel of spacing between glyphs."""
    if not text:
        return 0, 0
    width = (len(text) * GLYPH_W + (len(text) - 1)) * scale
    return width, GLYPH_H * scale


def stamp_text(
    img: RgbImage,
    text: str,
    origin: tuple[int, int],
    color: tuple[int, int, int],
    scale: int = 1,
) -> RgbImage:
    """Blit text in place at origin = top-left; out-of-bounds parts are clipped."""
    x, y = origin
    for char in text:
        mask = glyph_mask(char, scale)
        gh, gw = mask.shape
        ys, xs = np.nonzero(mask)
        ys = ys + y
        xs = xs + x
        keep = (xs >= 0) & (xs < img.width) & (ys >= 0) & (ys < img.height)
        img.pixels[ys[keep], xs[keep]] = color
        x += gw + scale
    return img

"""Component extraction and pointer selection against a hand-rolled flood fill."""

from __future__ import annotations

import random

import numpy as np

from airboard.contours import (
    DEFAULT_MIN_AREA,
    Contour,
    extract_contours,
    largest_contour,
    pointer_from_contour,
)
from airboard.images import BinaryMask


def mask_from_points(points, w=8, h=8) -> BinaryMask:
    pixels = np.zeros((h, w), dtype=bool)
    for x, y in points:
        pixels[y, x] = True
    return BinaryMask(pixels)


def flood_fill_components(mask: BinaryMask) -> list[set[tuple[int, int]]]:
    """Independent oracle: stack-based fill over the 8-neighborhood."""
    remaining = {(int(x), int(y)) for y, x in np.argwhere(mask.pixels)}
    components = []
    while remaining:
        seed = next(iter(remaining))
        stack = [seed]
        remaining.discard(seed)
        component = {seed}
        while stack:
            x, y = stack.pop()
            for dy in (-1, 0, 1):
                for dx in (-1, 0, 1):
                    n = (x + dx, y + dy)
                    if n in remaining:
                        remaining.discard(n)
                        component.add(n)
                        stack.append(n)
        components.append(component)
    return components


def test_empty_mask():
    assert extract_contours(mask_from_points([])) == []
    assert largest_contour([], 1) is None


def test_single_pixel():
    (c,) = extract_contours(mask_from_points([(3, 2)]))
    assert c.area == 1
    assert c.top == (3, 2)


def test_plus_shape_is_one_component():
    (c,) = extract_contours(mask_from_points([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)], w=3, h=3))
    assert c.area == 5
    assert c.top == (1, 0)


def test_diagonal_touch_is_connected():
    """(0,0) and (1,1) share only a corner; 8-connectivity joins them."""
    contours = extract_contours(mask_from_points([(0, 0), (1, 1)], w=3, h=3))
    assert len(contours) == 1
    assert contours[0].area == 2


def test_separated_blobs_stay_separate():
    contours = extract_contours(mask_from_points([(0, 0), (0, 1), (5, 5), (6, 5), (6, 6)]))
    assert sorted(c.area for c in contours) == [2, 3]


def test_extraction_order_is_raster_order_of_first_pixel():
    contours = extract_contours(mask_from_points([(6, 0), (1, 3), (0, 6)]))
    assert [c.top for c in contours] == [(6, 0), (1, 3), (0, 6)]


def test_partition_property_random():
    rng = np.random.default_rng(53)
    for _ in range(100):
        mask = BinaryMask(rng.random((10, 10)) < rng.uniform(0.1, 0.6))
        contours = extract_contours(mask)
        fg = {(int(x), int(y)) for y, x in np.argwhere(mask.pixels)}
        union = set()
        total = 0
        for c in contours:
            assert not (union & c.pixels)
            union |= c.pixels
            total += c.area
        assert union == fg
        assert total == len(fg)


def test_matches_flood_fill_oracle_random():
    rng = np.random.default_rng(59)
    for _ in range(200):
        mask = BinaryMask(rng.random((9, 9)) < rng.uniform(0.1, 0.7))
        got = {frozenset(c.pixels) for c in extract_contours(mask)}
        expected = {frozenset(c) for c in flood_fill_components(mask)}
        assert got == expected


def test_translation_equivariance():
    rng = np.random.default_rng(61)
    base = rng.random((6, 6)) < 0.4
    for dx, dy in [(1, 0), (0, 1), (3, 2), (5, 5)]:
        shifted = np.zeros((12, 12), dtype=bool)
        shifted[dy : dy + 6, dx : dx + 6] = base
        orig = extract_contours(BinaryMask(np.pad(base, ((0, 6), (0, 6)))))
        moved = extract_contours(BinaryMask(shifted))
        assert sorted(c.top for c in moved) == sorted((x + dx, y + dy) for x, y in (c.top for c in orig))


def test_top_is_min_y_then_min_x():
    (c,) = extract_contours(mask_from_points([(2, 3), (1, 4), (3, 4)]))
    assert pointer_from_contour(c) == (2, 3)
    (c,) = extract_contours(mask_from_points([(3, 2), (1, 2), (2, 3)]))
    assert pointer_from_contour(c) == (1, 2)


def test_top_matches_scan_oracle():
    rng = np.random.default_rng(67)
    for _ in range(100):
        mask = BinaryMask(rng.random((8, 8)) < 0.5)
        for c in extract_contours(mask):
            assert c.top == min(c.pixels, key=lambda p: (p[1], p[0]))


def test_largest_by_area_then_top():
    small = Contour.from_pixels({(0, 0), (1, 0)})
    big = Contour.from_pixels({(x, y) for x in range(4, 8) for y in range(3)})
    assert largest_contour([small, big], 1) is big
    assert largest_contour([big, small], 1) is big


def test_min_area_filters_inclusively():
    c = Contour.from_pixels({(x, 0) for x in range(5)})
    assert largest_contour([c], 5) is c
    assert largest_contour([c], 6) is None
    assert DEFAULT_MIN_AREA == 50


def test_tie_broken_by_lexicographic_top():
    a = Contour.from_pixels({(5, 2), (6, 2)})
    b = Contour.from_pixels({(0, 2), (1, 2)})
    c = Contour.from_pixels({(3, 1), (4, 1)})
    winner = largest_contour([a, b, c], 1)
    assert winner is c  # same areas; (3,1) beats (0,2) and (5,2) on (y, x)


def test_selection_order_invariant():
    rng = np.random.default_rng(71)
    mask = BinaryMask(rng.random((12, 12)) < 0.45)
    contours = extract_contours(mask)
    baseline = largest_contour(contours, 2)
    shuffled = list(contours)
    for _ in range(10):
        random.Random(7).shuffle(shuffled)
        assert largest_contour(shuffled, 2) == baseline

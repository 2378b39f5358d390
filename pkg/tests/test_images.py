"""Pixel primitives: rects, conversions, thresholds, integral sums, discs, PPM."""

from __future__ import annotations

import numpy as np
import pytest

from airboard.images import (
    GrayImage,
    IntegralImage,
    PpmError,
    Rect,
    RgbImage,
    FloatImage,
    abs_diff,
    crop,
    decode_ppm,
    disc_offsets,
    draw_disc,
    encode_ppm,
    integral,
    rect_sum,
    round_half_up,
    threshold_binary,
    to_grayscale,
)


def gray(rows) -> GrayImage:
    return GrayImage(np.array(rows, dtype=np.uint8))


def random_rgb(rng, w=8, h=8) -> RgbImage:
    return RgbImage(rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8))


# -- Rect -------------------------------------------------------------------


def test_rect_extent_and_membership():
    r = Rect(2, 3, 10, 8)
    assert (r.width, r.height) == (8, 5)
    assert r.contains(2, 3)
    assert r.contains(9, 7)
    assert not r.contains(10, 7)  # exclusive right edge
    assert not r.contains(9, 8)  # exclusive bottom edge
    assert not r.contains(1, 3)


def test_rect_degenerate_rejected():
    with pytest.raises(ValueError):
        Rect(5, 5, 5, 9)
    with pytest.raises(ValueError):
        Rect(0, 4, 3, 4)
    with pytest.raises(ValueError):
        Rect(3, 0, 1, 5)


def test_rect_inside_and_overlap():
    assert Rect(0, 0, 10, 10).inside(10, 10)
    assert not Rect(0, 0, 11, 10).inside(10, 10)
    a, b = Rect(0, 0, 5, 5), Rect(5, 0, 10, 5)
    assert not a.overlaps(b)  # shared edge only
    assert a.overlaps(Rect(4, 4, 6, 6))


# -- rounding and grayscale -------------------------------------------------


def test_round_half_up_ties_go_up():
    values = np.array([0.5, 1.5, 2.5, 3.49, 3.51])
    assert round_half_up(values).tolist() == [1, 2, 3, 3, 4]


def test_grayscale_white_and_black():
    assert (to_grayscale(RgbImage.full(4, 4, (255, 255, 255))).pixels == 255).all()
    assert (to_grayscale(RgbImage.full(4, 4, (0, 0, 0))).pixels == 0).all()


def test_grayscale_pure_red_is_76():
    out = to_grayscale(RgbImage.full(3, 3, (255, 0, 0)))
    assert (out.pixels == 76).all()


def test_grayscale_neutral_pixels_keep_their_value():
    """Weights sum to one, so (v, v, v) must map back to v for every v."""
    ramp = np.arange(256, dtype=np.uint8).reshape(16, 16)
    rgb = RgbImage(np.repeat(ramp[:, :, None], 3, axis=2))
    assert (to_grayscale(rgb).pixels == ramp).all()


# -- crop -------------------------------------------------------------------


def test_crop_full_extent_is_identity_copy():
    rng = np.random.default_rng(3)
    img = GrayImage(rng.integers(0, 256, size=(6, 9), dtype=np.uint8))
    out = crop(img, Rect(0, 0, 9, 6))
    assert (out.pixels == img.pixels).all()
    out.pixels[0, 0] ^= 0xFF
    assert (img.pixels == crop(img, Rect(0, 0, 9, 6)).pixels).all()


def test_crop_single_pixel_and_interior():
    ramp = gray(np.arange(16).reshape(4, 4))
    assert crop(ramp, Rect(2, 1, 3, 2)).pixels.tolist() == [[6]]
    assert crop(ramp, Rect(1, 1, 3, 3)).pixels.tolist() == [[5, 6], [9, 10]]


def test_crop_out_of_bounds_rejected():
    img = GrayImage.full(5, 5)
    with pytest.raises(ValueError):
        crop(img, Rect(0, 0, 6, 5))
    with pytest.raises(ValueError):
        crop(img, Rect(3, 3, 5, 6))


# -- abs_diff and threshold -------------------------------------------------


def test_abs_diff_identity_and_uniform():
    a = GrayImage.full(4, 4, 130)
    assert (abs_diff(a, a.copy()).pixels == 0).all()
    assert (abs_diff(a, GrayImage.full(4, 4, 100)).pixels == 30).all()


def test_abs_diff_symmetric_and_matches_per_pixel_loop():
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = GrayImage(rng.integers(0, 256, size=(5, 5), dtype=np.uint8))
        b = GrayImage(rng.integers(0, 256, size=(5, 5), dtype=np.uint8))
        got = abs_diff(a, b).pixels
        assert (got == abs_diff(b, a).pixels).all()
        for y in range(5):
            for x in range(5):
                assert got[y, x] == abs(int(a.pixels[y, x]) - int(b.pixels[y, x]))


def test_abs_diff_rounds_float_model_half_up():
    live = GrayImage.full(2, 2, 100)
    assert (abs_diff(live, FloatImage(np.full((2, 2), 100.4))).pixels == 0).all()
    assert (abs_diff(live, FloatImage(np.full((2, 2), 100.5))).pixels == 1).all()


def test_abs_diff_dimension_mismatch():
    with pytest.raises(ValueError):
        abs_diff(GrayImage.full(4, 4), GrayImage.full(4, 5))


def test_threshold_is_strictly_greater():
    img = gray([[14, 15, 16]])
    mask = threshold_binary(img, 15)
    assert mask.pixels.tolist() == [[False, False, True]]
    assert threshold_binary(GrayImage.full(3, 3, 0), 0).count == 0
    assert threshold_binary(GrayImage.full(3, 3, 30), 15).count == 9


def test_threshold_255_always_empty():
    rng = np.random.default_rng(5)
    img = GrayImage(rng.integers(0, 256, size=(8, 8), dtype=np.uint8))
    assert threshold_binary(img, 255).count == 0
    assert threshold_binary(GrayImage.full(2, 2, 255), 255).count == 0


# -- integral and rect sums -------------------------------------------------


def test_integral_known_tables():
    assert integral(gray([[1, 1], [1, 1]])).sums.tolist() == [[1, 2], [2, 4]]
    assert integral(gray([[7]])).sums.tolist() == [[7]]
    assert (integral(GrayImage.full(3, 3, 0)).sums == 0).all()


def test_rect_sum_full_and_single():
    img = gray(np.arange(12).reshape(3, 4))
    ii = integral(img)
    assert rect_sum(ii, Rect(0, 0, 4, 3)) == int(img.pixels.sum())
    assert rect_sum(ii, Rect(2, 1, 3, 2)) == 6


def test_rect_sum_matches_slice_sum_1000_cases():
    rng = np.random.default_rng(17)
    for _ in range(1000):
        w, h = int(rng.integers(1, 12)), int(rng.integers(1, 12))
        img = GrayImage(rng.integers(0, 256, size=(h, w), dtype=np.uint8))
        ii = integral(img)
        x0 = int(rng.integers(0, w))
        y0 = int(rng.integers(0, h))
        x1 = int(rng.integers(x0 + 1, w + 1))
        y1 = int(rng.integers(y0 + 1, h + 1))
        expected = int(img.pixels[y0:y1, x0:x1].astype(np.int64).sum())
        assert rect_sum(ii, Rect(x0, y0, x1, y1)) == expected


def test_rect_sum_out_of_bounds():
    ii = integral(GrayImage.full(4, 4, 1))
    with pytest.raises(ValueError):
        rect_sum(ii, Rect(0, 0, 5, 4))


# -- discs ------------------------------------------------------------------


def test_disc_diameter_1_is_center_only():
    img = RgbImage.full(12, 12, (255, 255, 255))
    draw_disc(img, (5, 5), 1, (0, 0, 0))
    black = np.argwhere((img.pixels == 0).all(axis=2))
    assert black.tolist() == [[5, 5]]


def test_disc_diameter_4_matches_membership_scan():
    img = RgbImage.full(21, 21, (255, 255, 255))
    draw_disc(img, (10, 10), 4, (0, 0, 0))
    got = {(int(x), int(y)) for y, x in np.argwhere((img.pixels == 0).all(axis=2))}
    expected = {
        (x, y)
        for x in range(21)
        for y in range(21)
        if (x - 10) ** 2 + (y - 10) ** 2 <= 4.0
    }
    assert got == expected
    assert len(got) == 13


def test_disc_offsets_matches_draw():
    offs = disc_offsets(4)
    assert len(offs) == 13
    assert {(int(dx), int(dy)) for dy, dx in offs} == {
        (dx, dy) for dx in range(-2, 3) for dy in range(-2, 3) if dx * dx + dy * dy <= 4
    }


def test_disc_clips_at_borders_and_off_canvas():
    img = RgbImage.full(8, 8, (255, 255, 255))
    draw_disc(img, (0, 0), 4, (0, 0, 0))
    assert (img.pixels[0, 0] == 0).all()
    before = RgbImage.full(8, 8, (9, 9, 9))
    draw_disc(before, (100, 100), 4, (0, 0, 0))
    assert (before.pixels == 9).all()


def test_disc_respects_floor_row():
    img = RgbImage.full(10, 10, (255, 255, 255))
    draw_disc(img, (5, 4), 4, (0, 0, 0), y_min=4)
    black_rows = {int(y) for y, x in np.argwhere((img.pixels == 0).all(axis=2))}
    assert black_rows == {4, 5, 6}


def test_disc_idempotent():
    rng = np.random.default_rng(23)
    img = RgbImage(rng.integers(0, 256, size=(15, 15, 3), dtype=np.uint8))
    draw_disc(img, (7, 7), 5, (10, 200, 30))
    once = img.pixels.copy()
    draw_disc(img, (7, 7), 5, (10, 200, 30))
    assert (img.pixels == once).all()


# -- PPM --------------------------------------------------------------------


def test_ppm_header_exact():
    img = RgbImage.full(1, 1, (255, 255, 255))
    assert encode_ppm(img) == b"P6\n1 1\n255\n\xff\xff\xff"


def test_ppm_roundtrip_random():
    rng = np.random.default_rng(29)
    for _ in range(25):
        img = random_rgb(rng, w=int(rng.integers(1, 10)), h=int(rng.integers(1, 10)))
        data = encode_ppm(img)
        back = decode_ppm(data)
        assert (back.pixels == img.pixels).all()
        assert encode_ppm(back) == data


def test_ppm_decode_accepts_header_comments():
    img = decode_ppm(b"P6\n# camera dump\n2 1\n255\n" + bytes(6))
    assert (img.width, img.height) == (2, 1)


@pytest.mark.parametrize(
    "blob",
    [
        b"P5\n1 1\n255\n\xff",  # wrong magic
        b"P6\n1 1\n254\n\xff\xff\xff",  # unsupported maxval
        b"P6\n1 1\n255\n\xff\xff",  # truncated payload
        b"P6\n1 1\n255\n\xff\xff\xff\xff",  # trailing bytes
        b"P6\n0 1\n255\n",  # empty extent
        b"P6\n1 1\n255",  # missing pixel separator
    ],
)
def test_ppm_decode_rejects_malformed(blob):
    with pytest.raises(PpmError):
        decode_ppm(blob)

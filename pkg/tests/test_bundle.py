import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from eqnav.bundle import (
    BBox,
    BundleError,
    EquationBundle,
    RasterImage,
    TextElement,
    bundle_to_dict,
    dumps_bundle,
    load_bundle,
    loads_bundle,
    normalized_coords,
    normalized_position,
    save_bundle,
)
from conftest import make_bundle


def test_bbox_rejects_empty_and_negative():
    with pytest.raises(BundleError):
        BBox(0, 0, 0, 5)
    with pytest.raises(BundleError):
        BBox(-1, 0, 5, 5)


def test_element_rejects_empty_text():
    with pytest.raises(BundleError):
        TextElement(id=1, text="", bbox=BBox(0, 0, 2, 2))


def test_bundle_rejects_out_of_bounds_bbox_naming_element():
    pixels = np.full((10, 10), 255, dtype=np.uint8)
    with pytest.raises(BundleError, match="element 7"):
        EquationBundle(
            image=RasterImage(pixels),
            elements=(TextElement(id=7, text="x", bbox=BBox(5, 5, 8, 2)),),
        )


def test_bundle_rejects_duplicate_ids():
    pixels = np.full((10, 10), 255, dtype=np.uint8)
    els = (
        TextElement(id=1, text="x", bbox=BBox(0, 0, 2, 2)),
        TextElement(id=1, text="y", bbox=BBox(4, 4, 2, 2)),
    )
    with pytest.raises(BundleError, match="duplicate"):
        EquationBundle(image=RasterImage(pixels), elements=els)


def test_single_element_on_blank_image_loads():
    bundle = make_bundle([(1, "x", 10, 10, 5, 5)])
    text = dumps_bundle(bundle, encoding="pgm-inline")
    again = loads_bundle(text)
    assert len(again.elements) == 1
    assert again.elements[0].text == "x"


def test_overlapping_bboxes_are_permitted():
    bundle = make_bundle([(1, "a", 10, 10, 8, 8), (2, "b", 12, 12, 8, 8)])
    assert len(bundle.elements) == 2


def test_round_trip_png_and_pgm(fracexp):
    for encoding in ("png-base64", "pgm-inline"):
        again = loads_bundle(dumps_bundle(fracexp, encoding=encoding))
        assert again == fracexp


def test_load_bundle_file_round_trip(tmp_path, fracexp):
    path = tmp_path / "eq.json"
    save_bundle(fracexp, path)
    assert load_bundle(path) == fracexp
    assert load_bundle(path) == load_bundle(path)


def test_load_bundle_missing_file(tmp_path):
    with pytest.raises(BundleError, match="cannot read"):
        load_bundle(tmp_path / "nope.json")


def test_load_bundle_malformed_json():
    with pytest.raises(BundleError, match="JSON"):
        loads_bundle("{not json")


def test_load_bundle_bad_encoding(fracexp):
    obj = bundle_to_dict(fracexp, encoding="pgm-inline")
    obj["image"]["encoding"] = "bmp"
    with pytest.raises(BundleError, match="encoding"):
        loads_bundle(json.dumps(obj))


def test_fracexp_fixture_has_expected_elements(fracexp):
    assert [el.text for el in fracexp.elements] == ["y", "=", "x", "2", "4", "3"]


def test_normalized_position_center():
    bundle = make_bundle([(1, "x", 48, 23, 4, 4)], width=100, height=50)
    assert normalized_position(bundle.elements[0], bundle) == (50, 50)


def test_normalized_position_corner_case():
    bundle = make_bundle([(1, "x", 0, 0, 2, 2)], width=100, height=100)
    assert normalized_position(bundle.elements[0], bundle) == (1, 1)


def test_normalized_coords_at_right_edge():
    # formula evaluated by hand: center (300, 80) in a 300x160 image
    assert normalized_coords(300, 80, 300, 160) == (100, 50)


def test_normalized_position_rejects_foreign_element():
    bundle = make_bundle([(1, "x", 0, 0, 2, 2)])
    other = make_bundle([(1, "x", 4, 4, 2, 2)])
    with pytest.raises(KeyError):
        normalized_position(other.elements[0], bundle)


@given(
    left=st.integers(min_value=0, max_value=180),
    top=st.integers(min_value=0, max_value=80),
    shift=st.integers(min_value=1, max_value=10),
)
def test_normalized_position_monotone(left, top, shift):
    a = make_bundle([(1, "x", left, top, 10, 10)])
    b = make_bundle([(1, "x", min(left + shift, 190), min(top + shift, 90), 10, 10)])
    ha, va = normalized_position(a.elements[0], a)
    hb, vb = normalized_position(b.elements[0], b)
    assert hb >= ha and vb >= va


def test_pixels_are_immutable(fracexp):
    with pytest.raises(ValueError):
        fracexp.image.pixels[0, 0] = 0

import numpy as np
import pytest

from eqnav.bundle import BBox, EquationBundle, RasterImage, TextElement
from eqnav.dom import build_dom
from eqnav.regions import (
    directional_region,
    has_graphics,
    ink_bands,
    region_from_bbox,
    transition_region,
)
from eqnav.synthimg import HRule, synth_image
from conftest import make_bundle


def bundle_with_rules(boxes, rules, width=200, height=100):
    image = synth_image([HRule(y, x0, x1) for (y, x0, x1) in rules], width, height)
    elements = tuple(
        TextElement(id=i, text=t, bbox=BBox(l, tp, w, h)) for i, t, l, tp, w, h in boxes
    )
    return EquationBundle(image=image, elements=elements)


class TestDirectionalRegion:
    def test_blank_surroundings_give_none(self):
        bundle = make_bundle([(1, "x", 50, 40, 10, 10)])
        dom = build_dom(bundle)
        for direction in ("left", "up", "right", "down"):
            assert directional_region(bundle, dom, 1, direction) is None

    def test_rejects_unknown_focus_and_direction(self):
        bundle = make_bundle([(1, "x", 50, 40, 10, 10)])
        dom = build_dom(bundle)
        with pytest.raises(KeyError):
            directional_region(bundle, dom, 99, "up")
        with pytest.raises(ValueError):
            directional_region(bundle, dom, 1, "north")

    def test_up_region_keeps_focus_columns(self):
        # rule above the focus, wider than it: region clips to focus span
        bundle = bundle_with_rules(
            [(1, "x", 50, 40, 10, 10)], [(20, 0, 199)]
        )
        dom = build_dom(bundle)
        region = directional_region(bundle, dom, 1, "up")
        assert region is not None
        assert region.bbox.left == 50 and region.bbox.right == 60
        assert region.bbox.top == 0 and region.bbox.bottom == 40

    def test_up_region_stops_at_element_edge(self):
        bundle = bundle_with_rules(
            [(1, "x", 50, 40, 10, 10), (2, "y", 48, 5, 14, 10)], [(20, 0, 199)]
        )
        dom = build_dom(bundle)
        region = directional_region(bundle, dom, 1, "up")
        assert region.bbox.top == 15  # bottom edge of the element above

    def test_partial_overlap_still_stops_scan(self):
        bundle = bundle_with_rules(
            [(1, "x", 50, 40, 10, 10), (2, "y", 57, 5, 14, 10)], [(20, 0, 199)]
        )
        dom = build_dom(bundle)
        region = directional_region(bundle, dom, 1, "up")
        assert region.bbox.top == 15

    def test_sideways_region_grows_over_tall_ink(self):
        # vertical ink bar right of the focus, taller than it
        image_pixels = np.full((100, 200), 255, dtype=np.uint8)
        image_pixels[20:80, 90] = 0
        bundle = EquationBundle(
            image=RasterImage(image_pixels),
            elements=(TextElement(id=1, text="x", bbox=BBox(50, 40, 10, 10)),),
        )
        dom = build_dom(bundle)
        region = directional_region(bundle, dom, 1, "right")
        assert region is not None
        assert region.bbox.top == 20 and region.bbox.bottom == 80

    def test_sideways_growth_is_bounded(self):
        image_pixels = np.full((400, 200), 255, dtype=np.uint8)
        image_pixels[0:400, 90] = 0  # ink column spanning the whole image
        bundle = EquationBundle(
            image=RasterImage(image_pixels),
            elements=(TextElement(id=1, text="x", bbox=BBox(50, 195, 10, 10)),),
        )
        dom = build_dom(bundle)
        region = directional_region(bundle, dom, 1, "right")
        assert region.bbox.top >= 195 - 30
        assert region.bbox.bottom <= 205 + 30

    def test_region_never_includes_focus_pixels(self, corpus):
        for bundle in corpus.values():
            dom = build_dom(bundle)
            for el in bundle.elements:
                for direction in ("left", "up", "right", "down"):
                    region = directional_region(bundle, dom, el.id, direction)
                    if region is None:
                        continue
                    b = region.bbox
                    f = el.bbox
                    if direction == "up":
                        assert b.bottom <= f.top
                    elif direction == "down":
                        assert b.top >= f.bottom
                    elif direction == "left":
                        assert b.right <= f.left
                    else:
                        assert b.left >= f.right

    def test_vertical_regions_share_focus_span(self, corpus):
        for bundle in corpus.values():
            dom = build_dom(bundle)
            for el in bundle.elements:
                for direction in ("up", "down"):
                    region = directional_region(bundle, dom, el.id, direction)
                    if region is not None:
                        assert region.bbox.left == el.bbox.left
                        assert region.bbox.right == el.bbox.right


class TestTwoLinesFixture:
    def test_x_has_two_bands_above(self, twolines):
        dom = build_dom(twolines)
        x = next(el for el in twolines.elements if el.text == "x")
        region = directional_region(twolines, dom, x.id, "up")
        assert region is not None
        assert ink_bands(region, twolines) == 2

    def test_2_has_one_band_above(self, twolines):
        dom = build_dom(twolines)
        two = next(el for el in twolines.elements if el.text == "2")
        region = directional_region(twolines, dom, two.id, "up")
        assert region is not None
        assert ink_bands(region, twolines) == 1

    def test_graphics_sets(self, twolines):
        dom = build_dom(twolines)
        x = next(el for el in twolines.elements if el.text == "x")
        three = next(el for el in twolines.elements if el.text == "3")
        assert "up" in has_graphics(twolines, dom, x.id)
        assert "down" in has_graphics(twolines, dom, three.id)


class TestInkBands:
    def test_blank_region(self):
        bundle = make_bundle([(1, "x", 0, 0, 5, 5)])
        region = region_from_bbox(bundle, BBox(20, 20, 30, 30))
        assert ink_bands(region, bundle) == 0

    def test_single_rule(self):
        bundle = bundle_with_rules([(1, "x", 0, 0, 5, 5)], [(50, 10, 60)])
        region = region_from_bbox(bundle, BBox(10, 30, 60, 50))
        assert ink_bands(region, bundle) == 1

    def test_translation_invariance(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            rows = sorted(rng.choice(40, size=4, replace=False))
            rules = [(int(r) + 10, 20, 60) for r in rows]
            a = bundle_with_rules([(1, "x", 0, 0, 5, 5)], rules)
            shifted = [(y, 120, 160) for (y, _, _) in rules]
            b = bundle_with_rules([(1, "x", 0, 0, 5, 5)], shifted)
            ra = region_from_bbox(a, BBox(15, 5, 50, 60))
            rb = region_from_bbox(b, BBox(115, 5, 50, 60))
            assert ink_bands(ra, a) == ink_bands(rb, b)


class TestTransitionRegion:
    def test_adjacent_blank_gutter(self):
        bundle = make_bundle([(1, "x", 50, 40, 10, 10), (2, "y", 61, 40, 10, 10)])
        assert transition_region(bundle, 1, 2) is None

    def test_fracexp_denominator_to_equals_crosses_bar(self, fracexp):
        ids = {el.text: el.id for el in fracexp.elements}
        region = transition_region(fracexp, ids["3"], ids["="])
        assert region is not None
        assert ink_bands(region, fracexp) >= 1

    def test_no_ink_between_horizontal_neighbors(self):
        bundle = make_bundle([(1, "x", 40, 40, 10, 10), (2, "+", 70, 40, 10, 10)])
        assert transition_region(bundle, 1, 2) is None

    def test_requires_distinct_elements(self, fracexp):
        with pytest.raises(ValueError):
            transition_region(fracexp, 1, 1)

    def test_unknown_ids(self, fracexp):
        with pytest.raises(KeyError):
            transition_region(fracexp, 1, 999)

    def test_overlapping_boxes_give_none(self):
        bundle = make_bundle([(1, "a", 50, 40, 10, 10), (2, "b", 55, 42, 10, 10)])
        assert transition_region(bundle, 1, 2) is None


class TestHasGraphics:
    def test_matches_directional_region(self, corpus):
        for bundle in corpus.values():
            dom = build_dom(bundle)
            for el in bundle.elements:
                expected = {
                    d for d in ("left", "up", "right", "down")
                    if directional_region(bundle, dom, el.id, d) is not None
                }
                assert has_graphics(bundle, dom, el.id) == expected


def test_ink_count_matches_mask(fracexp):
    region = region_from_bbox(fracexp, BBox(0, 0, fracexp.image.width, fracexp.image.height))
    assert region.ink_count == int(fracexp.image.ink_mask().sum())

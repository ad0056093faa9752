import numpy as np
import pytest

from eqnav.bundle import BBox, center_distance
from eqnav.dom import (
    DegenerateDirectionError,
    Direction12,
    adjacency_listing,
    build_dom,
    classify_direction,
    initial_focus,
    line_of_sight,
    nearest_distance_map,
)
from eqnav.fixtures import STAGE_NAMES
from conftest import make_bundle

FRACEXP_EDGES = {
    frozenset(p)
    for p in [("y", "="), ("=", "x"), ("=", "3"), ("x", "2"),
              ("2", "4"), ("x", "3"), ("2", "3"), ("4", "3")]
}


def box_at(cx, cy, w=4, h=4):
    return BBox(int(cx - w / 2), int(cy - h / 2), w, h)


class TestClassifyDirection:
    def test_pure_horizontal(self):
        d = classify_direction(box_at(10, 50), box_at(20, 50))
        assert d is Direction12.RIGHT_CENTRE

    def test_right_up_outside_band(self):
        # dx=10, dy=-4: ratio 0.4 exceeds the 0.25 centre band
        d = classify_direction(box_at(10, 50), box_at(20, 46))
        assert d is Direction12.RIGHT_UP

    def test_pure_vertical(self):
        d = classify_direction(box_at(10, 50), box_at(10, 57))
        assert d is Direction12.DOWN_CENTRE

    def test_band_boundary_is_centre(self):
        # ratio exactly 0.25 stays centre
        d = classify_direction(box_at(20, 20, 2, 2), box_at(28, 22, 2, 2))
        assert d is Direction12.RIGHT_CENTRE

    def test_tie_prefers_horizontal(self):
        d = classify_direction(box_at(10, 50), box_at(20, 40))
        assert d.primary == "right"

    def test_degenerate(self):
        with pytest.raises(DegenerateDirectionError):
            classify_direction(box_at(10, 50), box_at(10, 50))

    def test_all_twelve_values_distinct(self):
        assert len({d.label for d in Direction12}) == 12


def brute_force_sight(a, b, bundle, samples=4001):
    """Oracle: dense sampling of the open segment against all other boxes."""
    ax, ay = a.bbox.center()
    bx, by = b.bbox.center()
    for other in bundle.elements:
        if other.id in (a.id, b.id):
            continue
        box = other.bbox
        for i in range(1, samples):
            t = i / samples
            x = ax + (bx - ax) * t
            y = ay + (by - ay) * t
            if box.left <= x <= box.right and box.top <= y <= box.bottom:
                return False
    return True


class TestLineOfSight:
    def test_two_elements_alone(self):
        bundle = make_bundle([(1, "a", 10, 10, 5, 5), (2, "b", 50, 10, 5, 5)])
        assert line_of_sight(bundle.elements[0], bundle.elements[1], bundle)

    def test_collinear_blocking(self):
        bundle = make_bundle([
            (1, "a", 10, 40, 6, 6),
            (2, "b", 50, 40, 6, 6),
            (3, "c", 100, 40, 6, 6),
        ])
        a, b, c = bundle.elements
        assert not line_of_sight(a, c, bundle)
        assert line_of_sight(a, b, bundle)

    def test_fracexp_y_to_x_blocked_by_equals(self, fracexp):
        by_text = {el.text: el for el in fracexp.elements}
        assert not line_of_sight(by_text["y"], by_text["x"], fracexp)

    def test_matches_brute_force_oracle_on_fixture(self, fracexp):
        for a in fracexp.elements:
            for b in fracexp.elements:
                if a.id >= b.id:
                    continue
                assert line_of_sight(a, b, fracexp) == brute_force_sight(a, b, fracexp)

    def test_matches_brute_force_oracle_on_random_boxes(self):
        rng = np.random.default_rng(7)
        for _ in range(30):
            boxes = []
            for i in range(5):
                l = int(rng.integers(0, 160))
                t = int(rng.integers(0, 70))
                boxes.append((i + 1, "a", l, t, int(rng.integers(3, 30)),
                              int(rng.integers(3, 20))))
            bundle = make_bundle(boxes)
            for a in bundle.elements:
                for b in bundle.elements:
                    if a.id >= b.id:
                        continue
                    assert line_of_sight(a, b, bundle) == brute_force_sight(a, b, bundle)


class TestBuildDom:
    def test_fracexp_exact_edge_set(self, fracexp):
        dom = build_dom(fracexp)
        texts = {el.id: el.text for el in fracexp.elements}
        edges = {frozenset((texts[a], texts[b])) for a, b in
                 (tuple(e) for e in dom.undirected_edges())}
        assert edges == FRACEXP_EDGES

    def test_single_element(self):
        bundle = make_bundle([(1, "x", 10, 10, 5, 5)])
        dom = build_dom(bundle)
        assert len(dom.nodes) == 1
        assert dom.nodes[1].slots == {}

    def test_equally_spaced_row(self):
        bundle = make_bundle([
            (1, "a", 10, 40, 10, 10),
            (2, "b", 40, 40, 10, 10),
            (3, "c", 70, 40, 10, 10),
        ])
        dom = build_dom(bundle)
        assert dom.nodes[1].slots == {Direction12.RIGHT_CENTRE: 2}
        assert dom.nodes[2].slots == {
            Direction12.RIGHT_CENTRE: 3,
            Direction12.LEFT_CENTRE: 1,
        }
        assert dom.nodes[3].slots == {Direction12.LEFT_CENTRE: 2}

    def test_slot_uniqueness(self, corpus):
        for bundle in corpus.values():
            dom = build_dom(bundle)
            for node in dom.nodes.values():
                assert len(node.slots) <= 12

    def test_every_edge_has_line_of_sight(self, corpus):
        for bundle in corpus.values():
            dom = build_dom(bundle)
            for node in dom.nodes.values():
                for target in node.slots.values():
                    assert line_of_sight(
                        bundle.element(node.element_id),
                        bundle.element(target),
                        bundle,
                    )

    def test_distance_priority_against_brute_force(self, corpus):
        for bundle in corpus.values():
            dom = build_dom(bundle)
            closest = nearest_distance_map(bundle)
            for node in dom.nodes.values():
                origin = bundle.element(node.element_id).bbox
                for direction, target in node.slots.items():
                    actual = center_distance(origin, bundle.element(target).bbox)
                    assert actual == pytest.approx(
                        closest[(node.element_id, direction)]
                    )

    def test_degenerate_pair_skipped(self):
        bundle = make_bundle([
            (1, "a", 10, 10, 10, 10),
            (2, "b", 10, 10, 10, 10),
            (3, "c", 50, 10, 10, 10),
        ])
        dom = build_dom(bundle)  # no exception; coincident pair contributes nothing
        assert 2 not in dom.nodes[1].slots.values()
        assert 1 not in dom.nodes[2].slots.values()

    def test_determinism(self, corpus):
        for bundle in corpus.values():
            first = adjacency_listing(build_dom(bundle), bundle)
            assert adjacency_listing(build_dom(bundle), bundle) == first

    def test_connected_over_stage_fixtures(self, corpus):
        for name in STAGE_NAMES:
            bundle = corpus[name]
            dom = build_dom(bundle)
            edges = dom.undirected_edges()
            neighbors: dict[int, set[int]] = {i: set() for i in dom.nodes}
            for e in edges:
                a, b = tuple(e)
                neighbors[a].add(b)
                neighbors[b].add(a)
            seen = {next(iter(dom.nodes))}
            stack = list(seen)
            while stack:
                for n in neighbors[stack.pop()]:
                    if n not in seen:
                        seen.add(n)
                        stack.append(n)
            assert seen == set(dom.nodes), f"{name} graph is disconnected"


class TestInitialFocus:
    def test_fracexp_topmost_is_exponent(self, fracexp):
        dom = build_dom(fracexp)
        assert fracexp.element(dom.initial_focus).text == "2"

    def test_single_baseline_leftmost(self):
        bundle = make_bundle([
            (5, "b", 40, 40, 10, 10),
            (9, "a", 10, 42, 10, 10),
        ])
        dom = build_dom(bundle)
        assert initial_focus(dom, bundle) == 9

    def test_tie_breaks_by_id(self):
        bundle = make_bundle([
            (5, "b", 10, 10, 10, 10),
            (3, "a", 10, 10, 10, 10),
        ])
        dom = build_dom(bundle)
        assert initial_focus(dom, bundle) == 3


def test_adjacency_listing_format(fracexp):
    dom = build_dom(fracexp)
    listing = adjacency_listing(dom, fracexp)
    lines = listing.strip().split("\n")
    assert len(lines) == len(fracexp.elements)
    assert lines[0].startswith('1 "y": ')
    assert "→" in lines[0]

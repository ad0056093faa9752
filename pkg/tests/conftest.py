import numpy as np
import pytest

from eqnav.bundle import BBox, EquationBundle, RasterImage, TextElement
from eqnav.fixtures import fixture_names, load_fixture


@pytest.fixture(scope="session")
def corpus():
    """Every shipped fixture bundle, loaded once."""
    return {name: load_fixture(name) for name in fixture_names()}


@pytest.fixture(scope="session")
def fracexp(corpus):
    return corpus["fracexp"]


@pytest.fixture(scope="session")
def twolines(corpus):
    return corpus["twolines"]


def make_bundle(boxes, width=200, height=100, ink=None):
    """Small synthetic bundle: boxes as (id, text, l, t, w, h), ink as (x, y) pixels."""
    pixels = np.full((height, width), 255, dtype=np.uint8)
    if ink:
        for x, y in ink:
            pixels[y, x] = 0
    elements = tuple(
        TextElement(id=i, text=text, bbox=BBox(l, t, w, h))
        for i, text, l, t, w, h in boxes
    )
    return EquationBundle(image=RasterImage(pixels), elements=elements)

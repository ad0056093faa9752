"""Equation bundle data model: raster image plus extracted text elements.

A bundle is the unit of input for the whole browser.  It is produced by an
external extraction step and shipped as a single JSON document; this module
loads, validates and re-serializes it, and provides the shared geometry
helpers used by the rest of the package.
"""

from __future__ import annotations

import base64
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

# Grayscale level at or below which a pixel counts as ink.  Source documents
# are dark-on-light; the sonifier plays ink, so the threshold is shared
# between loading, region extraction and synthesis.
INK_THRESHOLD = 128


class BundleError(ValueError):
    """Raised for unreadable, malformed or invalid bundle files."""


@dataclass(frozen=True)
class BBox:
    """Axis-aligned pixel rectangle, top-left origin, y grows downward."""

    left: int
    top: int
    width: int
    height: int

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise BundleError(f"bbox must have positive size, got {self}")
        if self.left < 0 or self.top < 0:
            raise BundleError(f"bbox must not have negative origin, got {self}")

    @property
    def right(self) -> int:
        return self.left + self.width

    @property
    def bottom(self) -> int:
        return self.top + self.height

    @property
    def cx(self) -> float:
        return self.left + self.width / 2.0

    @property
    def cy(self) -> float:
        return self.top + self.height / 2.0

    def center(self) -> tuple[float, float]:
        return (self.cx, self.cy)

    def contains_point(self, x: float, y: float) -> bool:
        return self.left <= x <= self.right and self.top <= y <= self.bottom

    def horizontal_overlap(self, other: "BBox") -> int:
        return min(self.right, other.right) - max(self.left, other.left)

    def vertical_overlap(self, other: "BBox") -> int:
        return min(self.bottom, other.bottom) - max(self.top, other.top)

    def to_list(self) -> list[int]:
        return [self.left, self.top, self.width, self.height]


@dataclass(frozen=True)
class TextElement:
    """One navigable glyph or string with its bounding rectangle."""

    id: int
    text: str
    bbox: BBox

    def __post_init__(self) -> None:
        if not self.text or not self.text.isprintable():
            raise BundleError(f"element {self.id} has empty or unprintable text")


class RasterImage:
    """8-bit grayscale raster, 0 = black ink, 255 = white background.

    The pixel array is frozen after construction so bundles can be shared
    across threads.
    """

    def __init__(self, pixels: np.ndarray):
        arr = np.asarray(pixels, dtype=np.uint8)
        if arr.ndim != 2:
            raise BundleError(f"raster must be 2-D, got shape {arr.shape}")
        arr = arr.copy()
        arr.flags.writeable = False
        self._pixels = arr

    @property
    def pixels(self) -> np.ndarray:
        return self._pixels

    @property
    def width(self) -> int:
        return self._pixels.shape[1]

    @property
    def height(self) -> int:
        return self._pixels.shape[0]

    def ink_mask(self) -> np.ndarray:
        return self._pixels <= INK_THRESHOLD

    def crop(self, bbox: BBox) -> np.ndarray:
        return self._pixels[bbox.top:bbox.bottom, bbox.left:bbox.right]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RasterImage):
            return NotImplemented
        return np.array_equal(self._pixels, other._pixels)

    def __hash__(self) -> int:  # pragma: no cover - identity hashing only
        return id(self)


@dataclass(frozen=True)
class EquationBundle:
    """A rasterized equation plus its ordered list of textual elements."""

    image: RasterImage
    elements: tuple[TextElement, ...]
    _by_id: dict[int, TextElement] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.elements:
            raise BundleError("bundle must contain at least one element")
        seen: dict[int, TextElement] = {}
        for el in self.elements:
            if el.id in seen:
                raise BundleError(f"duplicate element id {el.id}")
            b = el.bbox
            if b.right > self.image.width or b.bottom > self.image.height:
                raise BundleError(
                    f"element {el.id} bbox {b.to_list()} exceeds image "
                    f"bounds {self.image.width}x{self.image.height}"
                )
            seen[el.id] = el
        object.__setattr__(self, "_by_id", seen)

    def element(self, element_id: int) -> TextElement:
        try:
            return self._by_id[element_id]
        except KeyError:
            raise KeyError(f"no element with id {element_id}") from None

    def has_element(self, element_id: int) -> bool:
        return element_id in self._by_id

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EquationBundle):
            return NotImplemented
        return self.elements == other.elements and self.image == other.image


def normalized_coords(cx: float, cy: float, width: int, height: int) -> tuple[int, int]:
    """Scale a point to 0..100 coordinates within a width x height image."""
    return int(round(100.0 * cx / width)), int(round(100.0 * cy / height))


def normalized_position(element: TextElement, bundle: EquationBundle) -> tuple[int, int]:
    """Map an element's bbox center to 0..100 coordinates within the image."""
    if not bundle.has_element(element.id) or bundle.element(element.id) is not element:
        raise KeyError(f"element {element.id} does not belong to this bundle")
    return normalized_coords(
        element.bbox.cx, element.bbox.cy, bundle.image.width, bundle.image.height
    )


def _decode_image(obj: dict) -> RasterImage:
    for key in ("width", "height", "encoding", "data"):
        if key not in obj:
            raise BundleError(f"image record missing field {key!r}")
    width, height = obj["width"], obj["height"]
    encoding = obj["encoding"]
    if encoding == "png-base64":
        from PIL import Image

        raw = base64.b64decode(obj["data"])
        with Image.open(io.BytesIO(raw)) as im:
            arr = np.asarray(im.convert("L"), dtype=np.uint8)
    elif encoding == "pgm-inline":
        arr = _parse_pgm(obj["data"])
    else:
        raise BundleError(f"unknown image encoding {encoding!r}")
    if arr.shape != (height, width):
        raise BundleError(
            f"image data is {arr.shape[1]}x{arr.shape[0]} but header says {width}x{height}"
        )
    return RasterImage(arr)


def _parse_pgm(text: str) -> np.ndarray:
    tokens: list[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.split())
    if not tokens or tokens[0] != "P2":
        raise BundleError("pgm-inline data must be ASCII PGM (P2)")
    try:
        width, height, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
        values = [int(t) for t in tokens[4:]]
    except (IndexError, ValueError) as exc:
        raise BundleError(f"malformed PGM data: {exc}") from exc
    if maxval != 255:
        raise BundleError(f"PGM maxval must be 255, got {maxval}")
    if len(values) != width * height:
        raise BundleError(
            f"PGM pixel count {len(values)} does not match {width}x{height}"
        )
    return np.array(values, dtype=np.uint8).reshape(height, width)


def _encode_png(image: RasterImage) -> str:
    from PIL import Image

    im = Image.fromarray(np.asarray(image.pixels), mode="L")
    buf = io.BytesIO()
    im.save(buf, format="PNG", optimize=True)
    return base64.b64encode(buf.getvalue()).decode("ascii")


def bundle_from_dict(obj: dict) -> EquationBundle:
    if "image" not in obj or "elements" not in obj:
        raise BundleError("bundle must contain 'image' and 'elements' fields")
    image = _decode_image(obj["image"])
    elements = []
    for rec in obj["elements"]:
        try:
            bbox = BBox(*(int(v) for v in rec["bbox"]))
            elements.append(TextElement(id=int(rec["id"]), text=rec["text"], bbox=bbox))
        except (KeyError, TypeError) as exc:
            raise BundleError(f"malformed element record {rec!r}: {exc}") from exc
    return EquationBundle(image=image, elements=tuple(elements))


def bundle_to_dict(bundle: EquationBundle, encoding: str = "png-base64") -> dict:
    if encoding == "png-base64":
        data = _encode_png(bundle.image)
    elif encoding == "pgm-inline":
        rows = [" ".join(str(v) for v in row) for row in bundle.image.pixels]
        data = "P2\n{} {}\n255\n{}\n".format(bundle.image.width, bundle.image.height, "\n".join(rows))
    else:
        raise BundleError(f"unknown image encoding {encoding!r}")
    return {
        "image": {
            "width": bundle.image.width,
            "height": bundle.image.height,
            "encoding": encoding,
            "data": data,
        },
        "elements": [
            {"id": el.id, "text": el.text, "bbox": el.bbox.to_list()}
            for el in bundle.elements
        ],
    }


def loads_bundle(text: str) -> EquationBundle:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleError(f"bundle is not valid JSON: {exc}") from exc
    return bundle_from_dict(obj)


def dumps_bundle(bundle: EquationBundle, encoding: str = "png-base64") -> str:
    return json.dumps(bundle_to_dict(bundle, encoding=encoding), indent=1)


def load_bundle(path: str | Path) -> EquationBundle:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise BundleError(f"cannot read bundle file {path}: {exc}") from exc
    return loads_bundle(text)


def save_bundle(bundle: EquationBundle, path: str | Path, encoding: str = "png-base64") -> None:
    Path(path).write_text(dumps_bundle(bundle, encoding=encoding), encoding="utf-8")


def center_distance(a: BBox, b: BBox) -> float:
    return math.hypot(b.cx - a.cx, b.cy - a.cy)

"""The bundled equation corpus: two six-equation evaluation sets plus two
worked examples, each stored as a bundle file next to its reference
transcript.

Run ``python -m eqnav.fixtures`` to regenerate the data files in place.
"""

from __future__ import annotations

import sys
from importlib import resources
from pathlib import Path

from . import scoring
from .bundle import EquationBundle, load_bundle, save_bundle
from .typeset import typeset_transcript

# name -> (transcript, texts rendered as ink only)
FIXTURES: dict[str, tuple[str, frozenset[str]]] = {
    # Worked examples used throughout the test suite.
    "fracexp": ("y=\\frac{x^{2}+4}{3}", frozenset({"+"})),
    "twolines": ("y=\\frac{3}{\\sqrt{x}+2}", frozenset()),
    # First evaluation set (text mode).
    "stage1_1": ("y=\\frac{x}{2}+x^{2}", frozenset()),
    "stage1_2": ("y=\\sqrt{x}+x^{2}", frozenset()),
    "stage1_3": ("y=\\frac{2}{\\sqrt{x}}", frozenset()),
    "stage1_4": ("y=\\frac{\\sqrt{x}+x^{4}}{x-2}", frozenset()),
    "stage1_5": ("y=(\\frac{x}{2}+2)^{2}", frozenset()),
    "stage1_6": ("[2,4;2,4]\\times[1;2]", frozenset()),
    # Second evaluation set (text and graphical modes).
    "stage2_1": ("y=x^{2}+\\frac{2}{x}", frozenset()),
    "stage2_2": ("y=x^{3}+\\sqrt{x}", frozenset()),
    "stage2_3": ("y=\\frac{\\sqrt{x}}{2}", frozenset()),
    "stage2_4": ("y=(\\frac{x\\sqrt{x}}{x+2})^{5}", frozenset()),
    "stage2_5": ("y=(1+\\frac{2}{x})^{5}", frozenset()),
    "stage2_6": ("[1,2,3;2,3,4]\\times[1,2;2,3;3,4]", frozenset()),
}

STAGE_NAMES = tuple(n for n in FIXTURES if n.startswith("stage"))
STAGE1_NAMES = tuple(n for n in FIXTURES if n.startswith("stage1"))
STAGE2_NAMES = tuple(n for n in FIXTURES if n.startswith("stage2"))


def fixture_names() -> tuple[str, ...]:
    return tuple(FIXTURES)


def _data_dir():
    return resources.files("eqnav").joinpath("data/fixtures")


def fixture_path(name: str) -> Path:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}")
    return Path(str(_data_dir().joinpath(f"{name}.json")))


def load_fixture(name: str) -> EquationBundle:
    return load_bundle(fixture_path(name))


def reference_transcript(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}")
    path = Path(str(_data_dir().joinpath(f"{name}.txt")))
    return path.read_text(encoding="utf-8").strip()


def reference_tree(name: str) -> scoring.Sequence:
    return scoring.parse_transcript(reference_transcript(name))


def build_fixture(name: str) -> EquationBundle:
    """Typeset a fixture from its transcript (used for regeneration)."""
    transcript, ink_only = FIXTURES[name]
    return typeset_transcript(transcript, ink_only_texts=ink_only)


def regenerate(directory: str | Path | None = None) -> list[Path]:
    """Rebuild every fixture bundle and transcript file."""
    out_dir = Path(directory) if directory else Path(str(_data_dir()))
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for name, (transcript, _) in FIXTURES.items():
        bundle = build_fixture(name)
        bundle_path = out_dir / f"{name}.json"
        save_bundle(bundle, bundle_path)
        transcript_path = out_dir / f"{name}.txt"
        transcript_path.write_text(transcript + "\n", encoding="utf-8")
        written.extend([bundle_path, transcript_path])
    return written


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else None
    for path in regenerate(target):
        print(path)

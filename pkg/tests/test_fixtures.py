import pytest

from eqnav.fixtures import (
    FIXTURES,
    STAGE_NAMES,
    build_fixture,
    fixture_names,
    load_fixture,
    reference_tree,
)
from eqnav.scoring import parse_transcript


def test_corpus_has_twelve_stage_fixtures_plus_examples():
    names = fixture_names()
    assert len([n for n in names if n.startswith("stage")]) == 12
    assert "fracexp" in names and "twolines" in names


def test_all_bundles_load_and_are_300px_wide(corpus):
    for name, bundle in corpus.items():
        assert bundle.image.width == 300, name
        assert bundle.elements


def test_reference_transcripts_parse(corpus):
    for name in STAGE_NAMES:
        tree = reference_tree(name)
        assert tree.children


def test_fracexp_bundle_has_no_plus_element(corpus):
    texts = [el.text for el in corpus["fracexp"].elements]
    assert texts == ["y", "=", "x", "2", "4", "3"]
    # the plus sign is still drawn: more ink than the 6 glyphs alone
    assert corpus["fracexp"].image.ink_mask().sum() > 0


def test_regeneration_is_deterministic():
    for name in ("fracexp", "stage1_6"):
        assert build_fixture(name) == load_fixture(name)


def test_element_counts_match_transcripts():
    # every symbol in the transcript appears as an element, except ink-only ones
    from eqnav.scoring import Symbol, iter_nodes

    for name, (transcript, ink_only) in FIXTURES.items():
        tree = parse_transcript(transcript)
        symbols = [n.text for n in iter_nodes(tree) if isinstance(n, Symbol)
                   and n.text not in ink_only]
        bundle = load_fixture(name)
        assert sorted(el.text for el in bundle.elements) == sorted(symbols), name


def test_unknown_fixture_name():
    with pytest.raises(KeyError):
        load_fixture("stage9_9")

"""Grammar parser tests: golden corpus plus error and property coverage."""

import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colayout.catalog import Catalog, FurnitureSpec
from colayout.errors import MissingDeixis, MissingTarget, NoIntent, ParseError
from colayout.intent import Command, IntentKind, Parser, load_lexicon, parse

DATA = Path(__file__).parent / "data"


def load_corpus():
    lines = (DATA / "corpus.txt").read_text().splitlines()
    expected = json.loads((DATA / "corpus_expected.json").read_text())
    assert len(lines) == len(expected)
    return list(zip(lines, expected))


def command_from_entry(text, entry) -> Command:
    given = entry.get("given", {})
    return Command(
        text=text,
        pointer=tuple(given["pointer"]) if given.get("pointer") else None,
        stroke=tuple(tuple(p) for p in given["stroke"]) if given.get("stroke") else None,
        selection=tuple(given.get("selection", ())),
    )


def assert_matches(result, expect):
    intent = result.intent
    assert intent.kind.value == expect["kind"]
    flt = expect["filter"]
    assert intent.filter.category == flt["category"]
    assert intent.filter.style == flt["style"]
    assert intent.filter.material == flt["material"]
    if expect["location"] is None:
        assert intent.location is None
    else:
        assert intent.location == pytest.approx(tuple(expect["location"]))
    assert list(intent.targets) == expect["targets"]
    assert intent.label == expect["label"]
    assert list(result.ignored_terms) == expect["ignored"]
    assert result.confidence == expect["confidence"]


def test_corpus_exact_match(catalog):
    parser = Parser(load_lexicon(catalog))
    failures = []
    for text, entry in load_corpus():
        cmd = command_from_entry(text, entry)
        try:
            result = parser.parse(cmd)
            assert_matches(result, entry["expect"])
        except AssertionError as exc:
            failures.append(f"{text!r}: {exc}")
        except ParseError as exc:
            failures.append(f"{text!r}: unexpected {type(exc).__name__}: {exc}")
    assert not failures, "\n".join(failures)


def test_corpus_covers_all_seven_intents():
    kinds = {entry["expect"]["kind"] for _, entry in load_corpus()}
    assert kinds == {k.value for k in IntentKind}


def test_corpus_has_out_of_range_lines():
    flagged = [e for _, e in load_corpus() if e["expect"]["ignored"]]
    assert len(flagged) >= 5


def test_paper_style_utterances_present():
    texts = [t for t, _ in load_corpus()]
    assert "Generate a minimalist wooden chair here" in texts
    assert "Mark this area as a bed" in texts


def test_determinism(catalog):
    parser = Parser(load_lexicon(catalog))
    cmd = Command(text="generate a red wooden chair here", pointer=(1.0, 2.0))
    a = parser.parse(cmd)
    b = parser.parse(cmd)
    assert a == b


def test_no_verb_raises_no_intent(catalog):
    with pytest.raises(NoIntent):
        parse(Command(text="the blue chair over the rainbow"), catalog)


def test_repositioning_is_rejected(catalog):
    # move/select verbs are deliberately outside the grammar
    with pytest.raises(NoIntent):
        parse(Command(text="move the bed to the corner", selection=("bed#1",)), catalog)
    with pytest.raises(NoIntent):
        parse(Command(text="select the nightstand"), catalog)


def test_here_without_pointer_raises_missing_deixis(catalog):
    with pytest.raises(MissingDeixis):
        parse(Command(text="generate a chair here"), catalog)


def test_deletion_without_selection_raises_missing_target(catalog):
    with pytest.raises(MissingTarget):
        parse(Command(text="delete the chair"), catalog)


def test_deletion_with_pointer_binds_location(catalog):
    result = parse(Command(text="delete this", pointer=(0.5, 0.5)), catalog)
    assert result.intent.kind is IntentKind.DELETION
    assert result.intent.targets == ()
    assert result.intent.location == (0.5, 0.5)


def test_labelling_without_stroke_raises(catalog):
    with pytest.raises(MissingDeixis):
        parse(Command(text="mark this area as a bed"), catalog)


def test_labelling_of_selected_wireframe(catalog):
    result = parse(Command(text="label it as a desk", selection=("wf#3",)), catalog)
    assert result.intent.kind is IntentKind.WIREFRAME_LABELLING
    assert result.intent.wf_id == "wf#3"
    assert result.intent.label == "desk"


def test_generation_without_vocabulary_match_raises(catalog):
    with pytest.raises(NoIntent):
        parse(Command(text="create a thingamajig here", pointer=(1, 1)), catalog)


def test_style_material_collision_resolves_to_style_and_flags_fuzzy():
    specs = [
        FurnitureSpec("chair-1", "chair", "rustic", "wood", (0.5, 0.5, 0.9), "floor", "Chair"),
        FurnitureSpec("table-1", "table", "modern", "rustic", (1.2, 0.8, 0.75), "floor", "Table"),
    ]
    cat = Catalog(specs)
    result = parse(Command(text="create a rustic chair here", pointer=(1, 1)), cat)
    assert result.intent.filter.style == "rustic"
    assert result.intent.filter.material is None
    assert result.confidence == "fuzzy"


def test_multi_intent_takes_first_verb(catalog):
    result = parse(
        Command(text="delete this and generate a chair", selection=("bed#1",)), catalog
    )
    assert result.intent.kind is IntentKind.DELETION
    assert "generate" in result.ignored_terms or "chair" in result.ignored_terms


def test_vocabulary_soundness(catalog):
    parser = Parser(load_lexicon(catalog))
    for text, entry in load_corpus():
        cmd = command_from_entry(text, entry)
        result = parser.parse(cmd)
        flt = result.intent.filter
        if flt.category is not None:
            assert flt.category in catalog.categories
        if flt.style is not None:
            assert flt.style in catalog.styles
        if flt.material is not None:
            assert flt.material in catalog.materials


@settings(max_examples=200, deadline=None)
@given(
    st.text(
        alphabet=st.characters(min_codepoint=32, max_codepoint=126),
        min_size=1,
        max_size=80,
    )
)
def test_parser_total_over_arbitrary_text(text):
    # any input yields an intent or a typed parse error, never a crash
    from colayout.catalog import load_default_catalog

    catalog = load_default_catalog()
    parser = Parser(load_lexicon(catalog))
    try:
        parser.parse(Command(text=text, pointer=(1.0, 1.0)))
    except ParseError:
        pass

"""Multimodal command parsing: text fused with a pointed location or stroke.

The grammar parser is deterministic and offline: a verb lexicon selects the
intent kind, noun phrases are matched against the catalog category
vocabulary through a synonym table, and adjectives resolve to styles, then
materials.  Out-of-vocabulary descriptors (colors, shapes, relative sizes)
are never errors; they land in ``ignored_terms`` so the caller can tell the
user what was dropped.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .catalog import Catalog, CatalogFilter
from .errors import MissingDeixis, MissingTarget, NoIntent, SceneInvariantError


class IntentKind(str, Enum):
    OBJECT_GENERATION = "object_generation"
    OBJECT_REGENERATION = "object_regeneration"
    OBJECT_DUPLICATION = "object_duplication"
    SCENE_COMPLETION = "scene_completion"
    WIREFRAME_GENERATION = "wireframe_generation"
    WIREFRAME_LABELLING = "wireframe_labelling"
    DELETION = "deletion"


@dataclass(frozen=True)
class Command:
    """One user turn: an utterance plus at most one deictic payload."""

    text: str
    pointer: tuple[float, float] | None = None
    stroke: tuple[tuple[float, float], ...] | None = None
    selection: tuple[str, ...] = ()

    def __post_init__(self):
        if self.pointer is not None and self.stroke is not None:
            raise SceneInvariantError("a command carries either a pointer or a stroke, not both")
        if self.stroke is not None:
            object.__setattr__(
                self, "stroke", tuple((float(x), float(z)) for x, z in self.stroke)
            )
        if self.pointer is not None:
            object.__setattr__(self, "pointer", (float(self.pointer[0]), float(self.pointer[1])))
        object.__setattr__(self, "selection", tuple(self.selection))


@dataclass(frozen=True)
class Intent:
    kind: IntentKind
    filter: CatalogFilter = field(default_factory=CatalogFilter)
    location: tuple[float, float] | None = None
    stroke: tuple[tuple[float, float], ...] | None = None
    targets: tuple[str, ...] = ()
    label: str | None = None
    wf_id: str | None = None


@dataclass(frozen=True)
class ParseResult:
    intent: Intent
    ignored_terms: tuple[str, ...] = ()
    confidence: str = "exact"  # "exact" | "fuzzy"


GENERATION_VERBS = {"generate", "create", "make", "add", "put", "place", "suggest", "give"}
COMPLETION_VERBS = {"fill", "complete", "furnish", "finish", "populate"}
REGENERATION_VERBS = {"regenerate", "redo", "replace", "swap"}
DUPLICATION_VERBS = {"duplicate", "copy", "clone"}
LABEL_VERBS = {"mark", "label", "designate"}
DELETION_VERBS = {"delete", "remove", "erase", "discard"}

# nouns that make a generation verb mean "do the whole room"
ROOM_OBJECTS = {"room", "layout", "scene", "everything", "apartment", "interior"}
WIREFRAME_TOKENS = {"wireframe", "wireframes", "outline", "outlines"}

DEICTIC_POINT = {"here", "there"}
DEICTIC_AREA_PATTERNS = ("this area", "that area", "this spot", "this region", "this space")
DEICTIC_TARGET = {"this", "that", "these", "those", "it", "them"}

STOPWORDS = {
    "a", "an", "the", "me", "my", "please", "for", "of", "in", "on", "at",
    "to", "with", "and", "some", "new", "as", "into", "onto", "up", "out",
    "more", "another", "one", "all", "can", "you", "i", "want", "would",
    "like", "us", "we", "now", "then", "area", "spot", "region", "space",
    "item", "items", "model", "models", "piece", "pieces", "furniture",
    "object", "objects", "whole", "entire", "full", "design", "version",
    "style", "styled",
}


def _plural_variants(token: str) -> list[str]:
    out = [token]
    if token.endswith("es"):
        out.append(token[:-2])
    if token.endswith("s"):
        out.append(token[:-1])
    return out


class Lexicon:
    """Vocabulary plus synonym table bound to one catalog."""

    def __init__(self, catalog: Catalog, synonyms: dict):
        self.categories = set(catalog.categories)
        self.styles = set(catalog.styles)
        self.materials = set(catalog.materials)
        self.category_syn = dict(synonyms.get("categories", {}))
        self.style_syn = dict(synonyms.get("styles", {}))
        self.material_syn = dict(synonyms.get("materials", {}))
        # vocabulary members with an underscore match their spoken form
        for cat in self.categories:
            self.category_syn.setdefault(cat.replace("_", " "), cat)
        for sty in self.styles:
            self.style_syn.setdefault(sty.replace("_", " "), sty)
        for mat in self.materials:
            self.material_syn.setdefault(mat.replace("_", " "), mat)

    def lookup_category(self, phrase: str) -> str | None:
        for variant in _plural_variants(phrase):
            if variant in self.categories:
                return variant
            if variant in self.category_syn:
                return self.category_syn[variant]
        return None

    def lookup_style(self, phrase: str) -> str | None:
        if phrase in self.styles:
            return phrase
        return self.style_syn.get(phrase)

    def lookup_material(self, phrase: str) -> str | None:
        if phrase in self.materials:
            return phrase
        return self.material_syn.get(phrase)


def default_synonyms_path() -> Path:
    return Path(__file__).parent / "data" / "synonyms.json"


def load_lexicon(catalog: Catalog, synonyms_path: str | Path | None = None) -> Lexicon:
    path = Path(synonyms_path) if synonyms_path else default_synonyms_path()
    with open(path, "r", encoding="utf-8") as fh:
        return Lexicon(catalog, json.load(fh))


def _tokenize(text: str) -> list[str]:
    return re.findall(r"[a-z0-9_]+(?:'[a-z]+)?", text.lower())


def _find_verb(tokens: list[str]):
    """First verb hit decides the intent family; later verbs are ignored."""
    for i, tok in enumerate(tokens):
        for family, verbs in (
            ("deletion", DELETION_VERBS),
            ("duplication", DUPLICATION_VERBS),
            ("regeneration", REGENERATION_VERBS),
            ("label", LABEL_VERBS),
            ("completion", COMPLETION_VERBS),
            ("generation", GENERATION_VERBS),
        ):
            if tok in verbs:
                return i, family
    return None, None


class Parser:
    """Deterministic grammar parser; stateless and safe for concurrent use."""

    def __init__(self, lexicon: Lexicon):
        self.lexicon = lexicon

    def parse(self, command: Command) -> ParseResult:
        text = command.text.strip()
        if not text:
            raise NoIntent("empty command")
        tokens = _tokenize(text)
        verb_at, family = _find_verb(tokens)
        if family is None:
            raise NoIntent(f"no actionable verb in {command.text!r}", text=command.text)

        consumed = [False] * len(tokens)
        consumed[verb_at] = True
        fuzzy = False

        lowered = " ".join(tokens)
        has_area_deixis = any(p in lowered for p in DEICTIC_AREA_PATTERNS)

        # phrase-level vocabulary scan, longest match first (trigram, bigram, unigram)
        category = style = material = None
        for size in (3, 2, 1):
            i = 0
            while i + size <= len(tokens):
                if any(consumed[i : i + size]):
                    i += 1
                    continue
                phrase = " ".join(tokens[i : i + size])
                hit = False
                if category is None:
                    cat = self.lexicon.lookup_category(phrase)
                    if cat is not None:
                        category = cat
                        hit = True
                if not hit and size == 1 and tokens[i] in STOPWORDS:
                    i += 1
                    continue
                if not hit:
                    sty = self.lexicon.lookup_style(phrase)
                    mat = self.lexicon.lookup_material(phrase)
                    if sty is not None and style is None:
                        style = sty
                        hit = True
                        if mat is not None:
                            fuzzy = True  # token lives in both vocabularies
                    elif mat is not None and material is None:
                        material = mat
                        hit = True
                if hit:
                    for k in range(i, i + size):
                        consumed[k] = True
                    i += size
                else:
                    i += 1

        # deixis binding; structural nouns (room/layout/wireframe) are part of
        # the verb object, never leftover descriptors
        wants_point = any(
            t in DEICTIC_POINT and not consumed[i] for i, t in enumerate(tokens)
        ) or has_area_deixis
        for i, t in enumerate(tokens):
            if t in DEICTIC_POINT or t in DEICTIC_TARGET:
                consumed[i] = True
            if t in ROOM_OBJECTS or t in WIREFRAME_TOKENS:
                consumed[i] = True

        ignored = tuple(
            tokens[i]
            for i in range(len(tokens))
            if not consumed[i] and tokens[i] not in STOPWORDS
        )

        flt = CatalogFilter(category=category, style=style, material=material)
        intent = self._build_intent(command, family, flt, tokens, wants_point)
        if ignored and len(ignored) >= 3:
            fuzzy = True  # substantial unparsed remainder
        return ParseResult(
            intent=intent,
            ignored_terms=ignored,
            confidence="fuzzy" if fuzzy else "exact",
        )

    def _build_intent(
        self,
        command: Command,
        family: str,
        flt: CatalogFilter,
        tokens: list[str],
        wants_point: bool,
    ) -> Intent:
        if family == "deletion":
            return Intent(kind=IntentKind.DELETION, **self._targets(command, wants_point))
        if family == "duplication":
            return Intent(
                kind=IntentKind.OBJECT_DUPLICATION, **self._targets(command, wants_point)
            )
        if family == "regeneration":
            params = self._targets(command, wants_point)
            return Intent(kind=IntentKind.OBJECT_REGENERATION, filter=flt, **params)
        if family == "label":
            return self._label_intent(command, flt)
        if family == "completion":
            return Intent(kind=IntentKind.SCENE_COMPLETION)

        # generation family: the object of the verb decides the kind
        if any(t in WIREFRAME_TOKENS for t in tokens):
            return Intent(kind=IntentKind.WIREFRAME_GENERATION)
        if flt.category is None and any(t in ROOM_OBJECTS for t in tokens):
            return Intent(kind=IntentKind.SCENE_COMPLETION)
        if flt.is_empty():
            raise NoIntent(
                "nothing in the catalog vocabulary matches that request",
                text=command.text,
            )
        # location comes from the pointer and only the pointer, so callers can
        # rely on location-present <=> pointer-present
        location = None
        if command.pointer is not None:
            location = command.pointer
        elif wants_point:
            raise MissingDeixis(
                "the command says where, but no pointer was provided",
                text=command.text,
            )
        return Intent(kind=IntentKind.OBJECT_GENERATION, filter=flt, location=location)

    def _targets(self, command: Command, wants_point: bool) -> dict:
        if command.selection:
            return {"targets": command.selection}
        if command.pointer is not None:
            return {"targets": (), "location": command.pointer}
        if wants_point:
            raise MissingDeixis(
                "the command points at something, but no pointer was provided",
                text=command.text,
            )
        raise MissingTarget("nothing is selected and nothing was pointed at", text=command.text)

    def _label_intent(self, command: Command, flt: CatalogFilter) -> Intent:
        if flt.category is None:
            raise NoIntent("no catalog category to use as the label", text=command.text)
        if command.stroke:
            return Intent(
                kind=IntentKind.WIREFRAME_LABELLING, stroke=command.stroke, label=flt.category
            )
        wf_targets = [t for t in command.selection if t.startswith("wf")]
        if wf_targets:
            return Intent(
                kind=IntentKind.WIREFRAME_LABELLING, wf_id=wf_targets[0], label=flt.category
            )
        raise MissingDeixis(
            "labelling needs a drawn stroke or a selected wireframe", text=command.text
        )


def parse(command: Command, catalog: Catalog, synonyms_path: str | Path | None = None) -> ParseResult:
    """One-shot convenience wrapper around Parser."""
    return Parser(load_lexicon(catalog, synonyms_path)).parse(command)

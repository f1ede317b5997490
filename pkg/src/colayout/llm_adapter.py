"""Optional language-model parsing backend.

Posts the command to an external endpoint and expects the same result
shape the grammar parser produces.  Any failure (network, timeout, schema
violation) falls back to the grammar parser with the result flagged fuzzy,
so the adapter can never make parsing less reliable than the built-in
grammar.  At most ``max_in_flight`` external calls run concurrently.
"""

from __future__ import annotations

import json
import threading
import urllib.error
import urllib.request
from dataclasses import replace

from .catalog import Catalog, CatalogFilter
from .errors import BackendUnavailable, SchemaViolation
from .intent import Command, Intent, IntentKind, Parser, ParseResult, load_lexicon

DEFAULT_TIMEOUT = 5.0


class LLMParser:
    """parse() contract-compatible wrapper around an external NLU endpoint."""

    def __init__(
        self,
        endpoint: str,
        catalog: Catalog,
        timeout: float = DEFAULT_TIMEOUT,
        max_in_flight: int = 4,
        api_key: str | None = None,
    ):
        self.endpoint = endpoint
        self.catalog = catalog
        self.timeout = timeout
        self.api_key = api_key
        self._fallback = Parser(load_lexicon(catalog))
        self._gate = threading.Semaphore(max_in_flight)

    def parse(self, command: Command) -> ParseResult:
        try:
            reply = self._call(command)
            return self._decode(command, reply)
        except (BackendUnavailable, SchemaViolation):
            result = self._fallback.parse(command)
            return replace(result, confidence="fuzzy")

    # ------------------------------------------------------------ external

    def _call(self, command: Command) -> dict:
        payload = {
            "text": command.text,
            "has_pointer": command.pointer is not None,
            "has_stroke": command.stroke is not None,
            "selection": list(command.selection),
            "categories": list(self.catalog.categories),
            "styles": list(self.catalog.styles),
            "materials": list(self.catalog.materials),
        }
        request = urllib.request.Request(
            self.endpoint,
            data=json.dumps(payload).encode("utf-8"),
            headers={"Content-Type": "application/json"},
            method="POST",
        )
        if self.api_key:
            request.add_header("Authorization", f"Bearer {self.api_key}")
        with self._gate:
            try:
                with urllib.request.urlopen(request, timeout=self.timeout) as resp:
                    body = resp.read()
            except (urllib.error.URLError, TimeoutError, OSError) as exc:
                raise BackendUnavailable(f"language backend unreachable: {exc}") from exc
        try:
            return json.loads(body)
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"language backend reply is not JSON: {exc}") from exc

    # ------------------------------------------------------------ decoding

    def _decode(self, command: Command, doc: dict) -> ParseResult:
        if not isinstance(doc, dict):
            raise SchemaViolation("reply must be a JSON object")
        try:
            kind = IntentKind(doc["kind"])
        except (KeyError, ValueError) as exc:
            raise SchemaViolation(f"bad intent kind: {exc}") from exc
        flt_doc = doc.get("filter") or {}
        flt = CatalogFilter(
            category=flt_doc.get("category"),
            style=flt_doc.get("style"),
            material=flt_doc.get("material"),
        )
        if flt.category is not None and flt.category not in self.catalog.categories:
            raise SchemaViolation(f"category {flt.category!r} not in vocabulary")
        if flt.style is not None and flt.style not in self.catalog.styles:
            raise SchemaViolation(f"style {flt.style!r} not in vocabulary")
        if flt.material is not None and flt.material not in self.catalog.materials:
            raise SchemaViolation(f"material {flt.material!r} not in vocabulary")
        label = doc.get("label")
        if kind is IntentKind.WIREFRAME_LABELLING:
            if label not in self.catalog.categories:
                raise SchemaViolation(f"label {label!r} not in vocabulary")
            if command.stroke is None and not doc.get("wf_id"):
                raise SchemaViolation("labelling needs a stroke or wf_id")
        location = None
        if kind is IntentKind.OBJECT_GENERATION and command.pointer is not None:
            location = command.pointer
        intent = Intent(
            kind=kind,
            filter=flt,
            location=location,
            stroke=command.stroke if kind is IntentKind.WIREFRAME_LABELLING else None,
            targets=tuple(doc.get("targets") or command.selection),
            label=label,
            wf_id=doc.get("wf_id"),
        )
        ignored = tuple(str(t) for t in doc.get("ignored_terms", ()))
        return ParseResult(intent=intent, ignored_terms=ignored, confidence="exact")

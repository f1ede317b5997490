"""External parser adapter: contract equivalence and fallback paths."""

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from colayout.catalog import load_default_catalog
from colayout.intent import Command, IntentKind, Parser, load_lexicon
from colayout.llm_adapter import LLMParser

CATALOG = load_default_catalog()


class FakeNLU:
    def __init__(self, reply_fn):
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                length = int(self.headers.get("Content-Length", 0))
                request = json.loads(self.rfile.read(length)) if length else {}
                status, body = outer.reply_fn(request)
                data = body if isinstance(body, bytes) else json.dumps(body).encode()
                self.send_response(status)
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

            def log_message(self, *args):
                pass

        self.reply_fn = reply_fn
        self.httpd = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.port = self.httpd.server_address[1]
        threading.Thread(target=self.httpd.serve_forever, daemon=True).start()

    @property
    def url(self):
        return f"http://127.0.0.1:{self.port}/parse"

    def close(self):
        self.httpd.shutdown()
        self.httpd.server_close()


def test_well_formed_reply_matches_grammar_contract():
    def reply(request):
        return 200, {
            "kind": "object_generation",
            "filter": {"category": "chair", "style": "minimalist", "material": "wood"},
            "ignored_terms": [],
        }

    nlu = FakeNLU(reply)
    try:
        adapter = LLMParser(nlu.url, CATALOG)
        cmd = Command(text="Generate a minimalist wooden chair here", pointer=(1.2, 0.8))
        got = adapter.parse(cmd)
        want = Parser(load_lexicon(CATALOG)).parse(cmd)
        assert got.intent == want.intent
        assert got.confidence == "exact"
    finally:
        nlu.close()


def test_malformed_reply_falls_back_fuzzy():
    nlu = FakeNLU(lambda request: (200, b"garbage not json"))
    try:
        adapter = LLMParser(nlu.url, CATALOG)
        cmd = Command(text="create a wooden chair here", pointer=(1.0, 1.0))
        got = adapter.parse(cmd)
        assert got.intent.kind is IntentKind.OBJECT_GENERATION
        assert got.intent.filter.category == "chair"
        assert got.confidence == "fuzzy"
    finally:
        nlu.close()


def test_out_of_vocabulary_reply_falls_back():
    def reply(request):
        return 200, {"kind": "object_generation", "filter": {"category": "spaceship"}}

    nlu = FakeNLU(reply)
    try:
        adapter = LLMParser(nlu.url, CATALOG)
        got = adapter.parse(Command(text="add a couch here", pointer=(1.0, 1.0)))
        assert got.intent.filter.category == "sofa"  # grammar fallback
        assert got.confidence == "fuzzy"
    finally:
        nlu.close()


def test_timeout_falls_back():
    def reply(request):
        time.sleep(1.0)
        return 200, {"kind": "deletion"}

    nlu = FakeNLU(reply)
    try:
        adapter = LLMParser(nlu.url, CATALOG, timeout=0.2)
        got = adapter.parse(Command(text="delete this", selection=("bed#1",)))
        assert got.intent.kind is IntentKind.DELETION
        assert got.intent.targets == ("bed#1",)
        assert got.confidence == "fuzzy"
    finally:
        nlu.close()


def test_unreachable_endpoint_falls_back():
    adapter = LLMParser("http://127.0.0.1:1/parse", CATALOG, timeout=0.2)
    got = adapter.parse(Command(text="fill the room"))
    assert got.intent.kind is IntentKind.SCENE_COMPLETION
    assert got.confidence == "fuzzy"

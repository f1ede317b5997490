"""Batch and developer tooling.

Subcommands: generate (room -> furnished workspace document), populate
(wireframes -> furniture), validate (report + exit code), parse (command
corpus debugging), render (top-down SVG), serve (the HTTP service).  Every
subcommand is a thin wrapper over the library: its output is the library
result, serialized.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import protocol
from .catalog import load_catalog, default_catalog_path
from .errors import LayoutError
from .generator import (
    GenConfig,
    complete_scene,
    default_priors_path,
    load_priors,
    populate_wireframes,
)
from .intent import Command, Parser, load_lexicon
from .render import render_workspace_doc
from .validate import validate_layout
from .workspace import Change, Workspace


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_env(args):
    catalog = load_catalog(args.catalog)
    priors = load_priors(args.priors)
    priors.validate(catalog)
    return catalog, priors


def _workspace_from_doc(doc: dict) -> Workspace:
    return protocol.decode_workspace(doc)


def cmd_generate(args) -> int:
    catalog, priors = _load_env(args)
    room = protocol.decode_room(_read_json(args.room))
    config = GenConfig(seed=args.seed, respect_openings=args.respect_openings)
    result = complete_scene(room, [], catalog, priors, config)
    ws = Workspace("ws-1", room)
    ws.apply(Change(objects_added=result.objects))
    doc = protocol.encode_workspace(ws)
    _write_text(args.out, protocol.canonical_json(doc) + "\n")
    for w in result.warnings:
        print(f"warning: {w.category}: {w.message}", file=sys.stderr)
    return 0


def cmd_populate(args) -> int:
    catalog, _ = _load_env(args)
    ws = _workspace_from_doc(_read_json(args.workspace))
    config = GenConfig(seed=args.seed)
    visible = [wf for wf in ws.wireframes.values() if not wf.hidden]
    result = populate_wireframes(ws.room, visible, catalog, config, existing_ids=ws.all_ids())
    import dataclasses

    hidden = tuple(dataclasses.replace(wf, hidden=True) for wf in visible)
    ws.apply(Change(objects_added=result.objects, wireframes_updated=hidden))
    _write_text(args.out, protocol.canonical_json(protocol.encode_workspace(ws)) + "\n")
    for w in result.warnings:
        print(f"warning: {w.category}: {w.message}", file=sys.stderr)
    return 0


def cmd_validate(args) -> int:
    catalog, _ = _load_env(args)
    ws = _workspace_from_doc(_read_json(args.workspace))
    goals_doc = _read_json(args.goals) if args.goals else None
    from .service import _goals_from_doc

    report = validate_layout(
        ws.room, list(ws.objects.values()), catalog, _goals_from_doc(goals_doc)
    )
    doc = protocol.encode_report(report)
    if args.out:
        _write_text(args.out, protocol.canonical_json(doc) + "\n")
    width = max(len(c["check_id"]) for c in doc["checks"])
    for check in doc["checks"]:
        mark = "pass" if check["passed"] else "FAIL"
        line = f"{check['check_id']:<{width}}  {mark}"
        if check["details"]:
            line += "  " + "; ".join(check["details"])
        print(line)
    print(f"score: {doc['score']}/{len(doc['checks'])}")
    return 0 if doc["passed"] else 1


def cmd_parse(args) -> int:
    catalog, _ = _load_env(args)
    parser = Parser(load_lexicon(catalog))
    status = 0
    with (sys.stdin if args.corpus == "-" else open(args.corpus, "r", encoding="utf-8")) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("{"):
                ctx = json.loads(line)
                cmd = Command(
                    text=ctx.get("text", ""),
                    pointer=tuple(ctx["pointer"]) if ctx.get("pointer") else None,
                    stroke=tuple(tuple(p) for p in ctx["stroke"]) if ctx.get("stroke") else None,
                    selection=tuple(ctx.get("selection", ())),
                )
            else:
                cmd = Command(text=line)
            try:
                result = parser.parse(cmd)
                from .service import _encode_intent

                out = {
                    "text": cmd.text,
                    "intent": _encode_intent(result.intent),
                    "ignored_terms": list(result.ignored_terms),
                    "confidence": result.confidence,
                }
            except LayoutError as exc:
                out = {"text": cmd.text, "error": exc.code, "message": str(exc)}
                status = 1
            print(json.dumps(out))
    return status


def cmd_render(args) -> int:
    catalog, _ = _load_env(args)
    doc = _read_json(args.workspace)
    _write_text(args.out, render_workspace_doc(doc, catalog))
    return 0


def cmd_serve(args) -> int:
    catalog, priors = _load_env(args)
    from .generator import GenConfig as _GenConfig
    from .service import CoCreationService, make_server

    remote = None
    if args.backend:
        host, _, port = args.backend.partition(":")
        from .remote import RemoteBackend

        remote = RemoteBackend(host, int(port), catalog).generate
    llm = None
    if args.llm_endpoint:
        from .llm_adapter import LLMParser

        llm = LLMParser(args.llm_endpoint, catalog).parse
    service = CoCreationService(
        catalog,
        priors,
        gen_config=_GenConfig(seed=args.seed, respect_openings=args.respect_openings),
        persist_dir=args.persist,
        llm_parse=llm,
        remote_generate=remote,
    )
    server = make_server(service, host=args.host, port=args.port, ui_dir=args.ui)
    print(f"serving on http://{args.host}:{args.port}/v1 (events at /v1/events)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="colayout", description="Indoor layout co-creation engine."
    )
    parser.add_argument(
        "--catalog", default=str(default_catalog_path()), help="catalog JSON path"
    )
    parser.add_argument(
        "--priors", default=str(default_priors_path()), help="prior table JSON path"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="furnish a room from scratch")
    p.add_argument("--room", required=True, help="room JSON path (or -)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--respect-openings", action="store_true", dest="respect_openings")
    p.add_argument("--out", default=None, help="output workspace document (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("populate", help="turn wireframes into furniture")
    p.add_argument("--workspace", required=True, help="workspace document path (or -)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_populate)

    p = sub.add_parser("validate", help="run layout quality checks")
    p.add_argument("--workspace", required=True)
    p.add_argument("--goals", default=None, help="goals JSON path")
    p.add_argument("--out", default=None, help="also write the report JSON here")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("parse", help="parse a command corpus (text or JSONL)")
    p.add_argument("--corpus", required=True, help="file with one command per line (or -)")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("render", help="render a workspace to top-down SVG")
    p.add_argument("--workspace", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("serve", help="run the co-creation HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8700)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--respect-openings", action="store_true", dest="respect_openings")
    p.add_argument("--persist", default=None, help="directory for session documents")
    p.add_argument("--backend", default=None, help="remote generator host:port")
    p.add_argument("--llm-endpoint", default=None, help="external command parser URL")
    p.add_argument("--ui", default=None, help="directory with the built browser client")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LayoutError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc), "details": exc.details}),
              file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Socket adapter for an external layout-generation backend.

The scene is encoded as newline-delimited JSON ({room, objects} with each
object as {id, spec, position, rotation, scale}) and sent over a TCP
socket; the reply is one JSON line {objects: [...]}.  Returned objects are
re-validated with the same constraint checks the built-in sampler uses, so
an ill-behaved backend degrades into per-object warnings instead of
corrupting the scene.
"""

from __future__ import annotations

import json
import socket

from .catalog import Catalog
from .errors import BackendUnavailable, DecodeError, UnknownAttribute
from .generator import GenWarning
from .protocol import decode_object, encode_object, encode_room
from .scene import OVERLAP_TOLERANCE, Room, SceneObject, oriented_rect_footprint
from .geom import convex_clip_area
from .validate import bands_overlap, vertical_interval

DEFAULT_TIMEOUT = 5.0


class RemoteBackend:
    """Client for a remote generator speaking the JSON-lines protocol."""

    def __init__(self, host: str, port: int, catalog: Catalog, timeout: float = DEFAULT_TIMEOUT):
        self.host = host
        self.port = port
        self.catalog = catalog
        self.timeout = timeout

    def generate(
        self, room: Room, existing: list[SceneObject]
    ) -> tuple[list[SceneObject], list[GenWarning]]:
        payload = {
            "room": encode_room(room),
            "objects": [encode_object(o) for o in existing],
        }
        reply = self._roundtrip(json.dumps(payload) + "\n")
        try:
            doc = json.loads(reply)
        except json.JSONDecodeError as exc:
            raise DecodeError(f"backend reply is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict) or not isinstance(doc.get("objects"), list):
            raise DecodeError("backend reply must be an object with an 'objects' array")

        existing_ids = {o.instance_id for o in existing}
        accepted: list[SceneObject] = []
        warnings: list[GenWarning] = []
        for rec in doc["objects"]:
            try:
                obj = decode_object(rec)
            except Exception as exc:
                warnings.append(GenWarning("decode", "?", f"unreadable object record: {exc}"))
                continue
            if obj.instance_id in existing_ids:
                continue  # the backend echoed the prompt scene
            problem = self._invalid_reason(room, existing + accepted, obj)
            if problem:
                warnings.append(GenWarning("rejected", obj.spec_id, f"{obj.instance_id}: {problem}"))
                continue
            accepted.append(obj)
        return accepted, warnings

    def _invalid_reason(self, room: Room, scene: list[SceneObject], obj: SceneObject) -> str | None:
        try:
            spec = self.catalog.spec(obj.spec_id)
        except UnknownAttribute:
            return f"unknown spec {obj.spec_id!r}"
        corners = oriented_rect_footprint(obj, spec.footprint_dims)
        if not room.contains_rect(corners):
            return "outside the room"
        band = vertical_interval(spec, obj)
        for other in scene:
            other_spec = self.catalog.spec(other.spec_id)
            if not bands_overlap(band, vertical_interval(other_spec, other)):
                continue
            if convex_clip_area(
                corners, oriented_rect_footprint(other, other_spec.footprint_dims)
            ) > OVERLAP_TOLERANCE:
                return f"overlaps {other.instance_id}"
        return None

    def _roundtrip(self, message: str) -> str:
        try:
            with socket.create_connection((self.host, self.port), timeout=self.timeout) as sock:
                sock.sendall(message.encode("utf-8"))
                sock.shutdown(socket.SHUT_WR)
                chunks = []
                while True:
                    chunk = sock.recv(65536)
                    if not chunk:
                        break
                    chunks.append(chunk)
                    if b"\n" in chunk:
                        break
        except (OSError, socket.timeout) as exc:
            raise BackendUnavailable(
                f"backend {self.host}:{self.port} unreachable: {exc}"
            ) from exc
        return b"".join(chunks).decode("utf-8").strip()

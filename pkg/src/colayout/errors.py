"""Exception hierarchy shared across the engine.

Every error carries a stable machine-readable ``code`` so the service can
map failures onto its structured error envelope without inspecting types.
"""

from __future__ import annotations


class LayoutError(Exception):
    """Base class for all engine errors."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class SceneInvariantError(LayoutError):
    code = "invalid_scene"


class DegenerateStroke(LayoutError):
    code = "degenerate_stroke"


class SchemaError(LayoutError):
    code = "schema_error"


class UnknownAttribute(LayoutError):
    code = "unknown_attribute"


class PageOutOfRange(LayoutError):
    code = "page_out_of_range"


class ParseError(LayoutError):
    code = "parse_error"


class NoIntent(ParseError):
    code = "no_intent"


class MissingDeixis(ParseError):
    code = "missing_deixis"


class MissingTarget(ParseError):
    code = "missing_target"


class PriorError(LayoutError):
    code = "invalid_priors"


class PlacementExhausted(LayoutError):
    code = "placement_exhausted"


class NoCandidates(LayoutError):
    code = "no_candidates"


class NoSpecForLabel(LayoutError):
    code = "no_spec_for_label"


class BackendUnavailable(LayoutError):
    code = "backend_unavailable"


class DecodeError(LayoutError):
    code = "decode_error"


class SchemaViolation(LayoutError):
    code = "schema_violation"


class UnknownWorkspace(LayoutError):
    code = "unknown_workspace"


class UnknownInstance(LayoutError):
    code = "unknown_instance"


class OutOfBounds(LayoutError):
    code = "out_of_bounds"


class PasteBlocked(LayoutError):
    code = "paste_blocked"

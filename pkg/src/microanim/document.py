"""State tree for animations: a JSON-like document with path-addressed reads and writes.

A document is an object tree whose leaves are finite numbers, booleans or
text. Animations never mutate a document in place; every update returns a
new document sharing untouched branches with the old one, so documents are
safe to hold in frame snapshots and to share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

SEPARATOR = "."


class DocumentError(Exception):
    """Base class for document addressing and update failures."""


class PathSyntaxError(DocumentError):
    """Raised when a path string is empty or contains an empty segment."""


class PathNotFound(DocumentError):
    """Raised when a path does not resolve; names the first failing segment."""

    def __init__(self, segment: str, path: "PropertyPath"):
        self.segment = segment
        self.path = path
        super().__init__(f"path {path!s}: no property named {segment!r}")


class TypeMismatch(DocumentError):
    """Raised when a write or animated update would change a leaf's variant."""


def variant_of(value: Any) -> str:
    # bool first: bool is an int subclass
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, (int, float)):
        return "number"
    if isinstance(value, str):
        return "text"
    if isinstance(value, dict):
        return "object"
    raise ValueError(f"unsupported document value: {value!r}")


def normalize_value(value: Any) -> Any:
    """Validate a value and coerce numbers to finite floats.

    Rejects NaN and infinities, empty object keys, and anything outside the
    number/boolean/text/object universe (arrays in particular).
    """
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        out = float(value)
        if not math.isfinite(out):
            raise ValueError(f"document numbers must be finite, got {value!r}")
        return out
    if isinstance(value, str):
        return value
    if isinstance(value, dict):
        normalized = {}
        for key, child in value.items():
            if not isinstance(key, str) or key == "":
                raise ValueError(f"object keys must be non-empty strings, got {key!r}")
            normalized[key] = normalize_value(child)
        return normalized
    raise ValueError(f"unsupported document value: {value!r}")


@dataclass(frozen=True)
class PropertyPath:
    """Dot-separated address of one leaf in a document."""

    segments: tuple[str, ...]

    def __post_init__(self):
        if not self.segments:
            raise PathSyntaxError("property path needs at least one segment")
        for segment in self.segments:
            if not segment or SEPARATOR in segment:
                raise PathSyntaxError(f"bad path segment {segment!r}")

    def __str__(self) -> str:
        return SEPARATOR.join(self.segments)


def parse_path(text: str) -> PropertyPath:
    """Parse ``"a.b.c"`` into a property path. Empty segments are errors."""
    if not isinstance(text, str) or text == "":
        raise PathSyntaxError(f"empty property path: {text!r}")
    segments = text.split(SEPARATOR)
    if any(segment == "" for segment in segments):
        raise PathSyntaxError(f"empty segment in property path {text!r}")
    return PropertyPath(tuple(segments))


def as_path(path: "PropertyPath | str") -> PropertyPath:
    if isinstance(path, PropertyPath):
        return path
    return parse_path(path)


@dataclass(frozen=True)
class Document:
    """An immutable value tree. The root is always an object."""

    root: dict

    def __post_init__(self):
        if not isinstance(self.root, dict):
            raise ValueError("document root must be an object")
        object.__setattr__(self, "root", normalize_value(self.root))

    def as_dict(self) -> dict:
        """Deep copy of the tree as plain JSON-serializable Python values."""
        return json.loads(json.dumps(self.root))

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.root, **kwargs)

    @classmethod
    def from_json(cls, text: "str | bytes") -> "Document":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("document root must be a JSON object")
        return cls(data)


def resolve(doc: Document, path: "PropertyPath | str") -> Any:
    """Return the value stored at ``path``.

    Traversing through a non-object or a missing key raises PathNotFound
    naming the first segment that failed.
    """
    path = as_path(path)
    node: Any = doc.root
    for segment in path.segments:
        if not isinstance(node, dict) or segment not in node:
            raise PathNotFound(segment, path)
        node = node[segment]
    return node


def write(doc: Document, path: "PropertyPath | str", value: Any) -> Document:
    """Return a document with the leaf at ``path`` replaced by ``value``.

    The path must already resolve (writes never create structure) and the new
    value must have the same variant as the old one. All other leaves are
    untouched; unchanged branches are shared with the input document.
    """
    path = as_path(path)
    value = normalize_value(value)

    def rebuild(node: Any, index: int) -> Any:
        segment = path.segments[index]
        if not isinstance(node, dict) or segment not in node:
            raise PathNotFound(segment, path)
        old = node[segment]
        if index == len(path.segments) - 1:
            if variant_of(old) != variant_of(value):
                raise TypeMismatch(
                    f"path {path!s}: cannot write {variant_of(value)} over {variant_of(old)}"
                )
            replaced = value
        else:
            replaced = rebuild(old, index + 1)
        out = dict(node)
        out[segment] = replaced
        return out

    new_doc = object.__new__(Document)
    object.__setattr__(new_doc, "root", rebuild(doc.root, 0))
    return new_doc

"""Serialized animation scripts: the closed, file-friendly subset of the DSL.

Scripts are tagged JSON objects. The subset is deliberately closed: no bind
and no host functions, so every scriptable animation is at least
max-duration-inspectable. Conditions use a small predicate language
(compare a leaf against a literal, or read a boolean flag) that compiles to
an instantaneous read plus a pure comparison.

Relative-sequencing nodes are resolved while a scenario loads, so an
animation that cannot be measured fails before anything runs.
"""

from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass
from typing import Any

from . import schedule
from .document import Document
from .dsl import (
    Anim,
    Combiner,
    ResultKind,
    delay,
    get_value,
    if_then_else,
    linear_to,
    map2,
    parallel,
    pure,
    sequential,
    set_value,
)


class ParseError(Exception):
    """A scenario or script does not parse; message says what and where."""


GT = Combiner(operator.gt, ResultKind.NUMBER, ResultKind.NUMBER, ResultKind.BOOLEAN)
LT = Combiner(operator.lt, ResultKind.NUMBER, ResultKind.NUMBER, ResultKind.BOOLEAN)
EQ_NUM = Combiner(operator.eq, ResultKind.NUMBER, ResultKind.NUMBER, ResultKind.BOOLEAN)
EQ_BOOL = Combiner(operator.eq, ResultKind.BOOLEAN, ResultKind.BOOLEAN, ResultKind.BOOLEAN)


# --------------------------------------------------------------------------
# Script tree


@dataclass(frozen=True)
class CondNode:
    """Predicate over the document: compare a numeric leaf or read a flag."""

    op: str  # "gt" | "lt" | "eq" | "flag"
    path: str
    literal: Any = None


@dataclass(frozen=True)
class ScriptNode:
    pass


@dataclass(frozen=True)
class TweenNode(ScriptNode):
    path: str
    dur: float
    to: float


@dataclass(frozen=True)
class SetNode(ScriptNode):
    path: str
    value: Any


@dataclass(frozen=True)
class DelayNode(ScriptNode):
    dur: float


@dataclass(frozen=True)
class SeqNode(ScriptNode):
    items: tuple[ScriptNode, ...]


@dataclass(frozen=True)
class ParNode(ScriptNode):
    items: tuple[ScriptNode, ...]


@dataclass(frozen=True)
class IfNode(ScriptNode):
    cond: CondNode
    then_node: ScriptNode
    else_node: ScriptNode


@dataclass(frozen=True)
class RelSeqNode(ScriptNode):
    first: ScriptNode
    second: ScriptNode
    offset: float
    use_max: bool


# --------------------------------------------------------------------------
# Parsing


def _expect_number(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{what} must be a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise ParseError(f"{what} must be finite, got {value!r}")
    return out


def _expect_str(value: Any, what: str) -> str:
    if not isinstance(value, str) or not value:
        raise ParseError(f"{what} must be a non-empty string, got {value!r}")
    return value


def _single_tag(obj: Any, what: str) -> tuple[str, Any]:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ParseError(f"{what} must be a single-tag JSON object, got {obj!r}")
    return next(iter(obj.items()))


def parse_cond(obj: Any) -> CondNode:
    tag, body = _single_tag(obj, "condition")
    if tag == "flag":
        return CondNode("flag", _expect_str(body, "flag path"))
    if tag in ("gt", "lt", "eq"):
        if not isinstance(body, list) or len(body) != 2:
            raise ParseError(f"{tag!r} condition needs [path, literal], got {body!r}")
        path = _expect_str(body[0], f"{tag} path")
        literal = body[1]
        if isinstance(literal, bool):
            if tag != "eq":
                raise ParseError(f"{tag!r} literal must be a number, got {literal!r}")
        else:
            literal = _expect_number(literal, f"{tag} literal")
        return CondNode(tag, path, literal)
    raise ParseError(f"unknown condition tag {tag!r}")


def parse_script(obj: Any) -> ScriptNode:
    """Parse one decoded JSON value into a script node.

    Unknown tags, malformed bodies and empty seq/par lists are ParseErrors.
    """
    tag, body = _single_tag(obj, "animation node")
    if tag == "linearTo":
        if not isinstance(body, dict):
            raise ParseError(f"linearTo body must be an object, got {body!r}")
        missing = {"path", "for", "to"} - set(body)
        if missing or set(body) - {"path", "for", "to"}:
            raise ParseError(f"linearTo needs exactly path/for/to, got {sorted(body)}")
        return TweenNode(
            _expect_str(body["path"], "linearTo path"),
            _expect_number(body["for"], "linearTo duration"),
            _expect_number(body["to"], "linearTo target"),
        )
    if tag == "set":
        if not isinstance(body, dict) or set(body) != {"path", "value"}:
            raise ParseError(f"set needs exactly path/value, got {body!r}")
        value = body["value"]
        if not isinstance(value, (bool, str)):
            value = _expect_number(value, "set value")
        return SetNode(_expect_str(body["path"], "set path"), value)
    if tag == "delay":
        dur = _expect_number(body, "delay duration")
        if dur < 0:
            raise ParseError(f"delay duration must be >= 0, got {dur!r}")
        return DelayNode(dur)
    if tag in ("seq", "par"):
        if not isinstance(body, list) or not body:
            raise ParseError(f"{tag!r} needs a non-empty list of nodes")
        items = tuple(parse_script(item) for item in body)
        return SeqNode(items) if tag == "seq" else ParNode(items)
    if tag == "if":
        if not isinstance(body, dict) or set(body) != {"cond", "then", "else"}:
            raise ParseError(f"if needs exactly cond/then/else, got {body!r}")
        return IfNode(
            parse_cond(body["cond"]),
            parse_script(body["then"]),
            parse_script(body["else"]),
        )
    if tag in ("relSeq", "relMaxSeq"):
        if not isinstance(body, dict) or set(body) != {"first", "second", "offset"}:
            raise ParseError(f"{tag} needs exactly first/second/offset, got {body!r}")
        return RelSeqNode(
            parse_script(body["first"]),
            parse_script(body["second"]),
            _expect_number(body["offset"], f"{tag} offset"),
            use_max=(tag == "relMaxSeq"),
        )
    raise ParseError(f"unknown animation tag {tag!r}")


def script_to_jsonable(node: ScriptNode) -> dict:
    """Inverse of parse_script: emit the tagged-JSON form of a script node."""
    if isinstance(node, TweenNode):
        return {"linearTo": {"path": node.path, "for": node.dur, "to": node.to}}
    if isinstance(node, SetNode):
        return {"set": {"path": node.path, "value": node.value}}
    if isinstance(node, DelayNode):
        return {"delay": node.dur}
    if isinstance(node, SeqNode):
        return {"seq": [script_to_jsonable(item) for item in node.items]}
    if isinstance(node, ParNode):
        return {"par": [script_to_jsonable(item) for item in node.items]}
    if isinstance(node, IfNode):
        cond: dict[str, Any]
        if node.cond.op == "flag":
            cond = {"flag": node.cond.path}
        else:
            cond = {node.cond.op: [node.cond.path, node.cond.literal]}
        return {
            "if": {
                "cond": cond,
                "then": script_to_jsonable(node.then_node),
                "else": script_to_jsonable(node.else_node),
            }
        }
    if isinstance(node, RelSeqNode):
        tag = "relMaxSeq" if node.use_max else "relSeq"
        return {
            tag: {
                "first": script_to_jsonable(node.first),
                "second": script_to_jsonable(node.second),
                "offset": node.offset,
            }
        }
    raise TypeError(f"not a script node: {node!r}")


# --------------------------------------------------------------------------
# Compilation to animations


def compile_cond(cond: CondNode) -> Anim:
    if cond.op == "flag":
        return get_value(cond.path, ResultKind.BOOLEAN)
    if cond.op == "gt":
        return map2(GT, get_value(cond.path), pure(cond.literal))
    if cond.op == "lt":
        return map2(LT, get_value(cond.path), pure(cond.literal))
    if isinstance(cond.literal, bool):
        return map2(EQ_BOOL, get_value(cond.path, ResultKind.BOOLEAN), pure(cond.literal))
    return map2(EQ_NUM, get_value(cond.path), pure(cond.literal))


def compile_script(node: ScriptNode) -> Anim:
    """Build the animation a script node denotes.

    Relative-sequencing nodes are resolved here, so an InspectError or
    NegativeStart from the schedule module surfaces at compile time.
    """
    if isinstance(node, TweenNode):
        return linear_to(node.path, node.dur, node.to)
    if isinstance(node, SetNode):
        return set_value(node.path, node.value)
    if isinstance(node, DelayNode):
        return delay(node.dur)
    if isinstance(node, SeqNode):
        anims = [compile_script(item) for item in node.items]
        out = anims[0]
        for nxt in anims[1:]:
            out = sequential(out, nxt)
        return out
    if isinstance(node, ParNode):
        anims = [compile_script(item) for item in node.items]
        out = anims[0]
        for nxt in anims[1:]:
            out = parallel(out, nxt)
        return out
    if isinstance(node, IfNode):
        return if_then_else(
            compile_cond(node.cond),
            compile_script(node.then_node),
            compile_script(node.else_node),
        )
    if isinstance(node, RelSeqNode):
        first = compile_script(node.first)
        second = compile_script(node.second)
        if node.use_max:
            return schedule.rel_max_sequential(first, second, node.offset)
        return schedule.rel_sequential(first, second, node.offset)
    raise TypeError(f"not a script node: {node!r}")


# --------------------------------------------------------------------------
# Scenarios


@dataclass(frozen=True)
class Scenario:
    """An initial document plus a script, ready to run or inspect."""

    name: str
    description: str
    state: Document
    script: ScriptNode
    animation: Anim


def load_scenario(data: "str | bytes") -> Scenario:
    """Parse, kind-check and compile a scenario file.

    Raises ParseError for malformed JSON (with line/column) or unknown
    structure, document errors for a bad initial state, and InspectError /
    SchedulingError when a relative-sequencing node cannot be resolved.
    """
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise ParseError("scenario must be a JSON object")
    missing = {"state", "animation"} - set(raw)
    if missing:
        raise ParseError(f"scenario is missing {sorted(missing)}")
    name = raw.get("name", "")
    description = raw.get("description", "")
    if not isinstance(name, str) or not isinstance(description, str):
        raise ParseError("scenario name/description must be strings")
    if not isinstance(raw["state"], dict):
        raise ParseError("scenario state must be a JSON object")
    try:
        state = Document(raw["state"])
    except ValueError as exc:
        raise ParseError(f"bad scenario state: {exc}") from exc
    script = parse_script(raw["animation"])
    animation = compile_script(script)
    return Scenario(name, description, state, script, animation)


def scenario_to_jsonable(scenario: Scenario) -> dict:
    return {
        "name": scenario.name,
        "description": scenario.description,
        "state": scenario.state.as_dict(),
        "animation": script_to_jsonable(scenario.script),
    }

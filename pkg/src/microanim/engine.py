"""Delta-time stepping interpreter for animation expressions.

``step`` advances an animation by one frame's time delta against a document
and returns the next document plus either the unfinished remainder of the
animation or its final result. Finished animations also report how much of
the delta they left unused, which is what lets sequential composition hand
the tail of a frame to the next animation.

``run``/``run_fps`` fold ``step`` over a frame schedule and record a
snapshot per frame.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Iterable, Iterator

from . import document as doc_mod
from .dsl import (
    Anim,
    Bind,
    Custom,
    Delay,
    GetValue,
    IfThenElse,
    KindMismatch,
    LinearTo,
    Par2,
    Pure,
    ResultKind,
    Seq2,
    SetValue,
    check_result_value,
    seconds,
)
from .document import Document, TypeMismatch, resolve, write

# Timed ops complete once they are within this of their end. Frame schedules
# accumulate float dust (30 frames of 1/60 do not sum to exactly 0.5); without
# the snap an animation could outlive its computed duration by one frame.
TIME_EPS = 1e-9


class EngineError(Exception):
    """Base class for stepping failures."""


class NegativeDelta(EngineError):
    """Raised when a step is asked to advance by a negative time delta."""


class CustomOpContractError(EngineError):
    """Raised when a custom op's step behavior returns an invalid outcome."""


@dataclass(frozen=True)
class Done:
    """The animation finished and produced this result value."""

    value: Any


@dataclass(frozen=True)
class Remainder:
    """The animation used the whole delta; this much of it is left."""

    anim: Anim


@dataclass(frozen=True)
class StepOutcome:
    state: Document
    progress: "Done | Remainder"
    leftover: float | None

    @property
    def is_done(self) -> bool:
        return isinstance(self.progress, Done)


def _check_delta(dt: float) -> float:
    if isinstance(dt, bool) or not isinstance(dt, (int, float)):
        raise ValueError(f"time delta must be a number, got {dt!r}")
    dt = float(dt)
    if not math.isfinite(dt):
        raise ValueError(f"time delta must be finite, got {dt!r}")
    if dt < 0:
        raise NegativeDelta(f"time delta must be >= 0, got {dt!r}")
    return dt


def _read_number(doc: Document, path) -> float:
    value = resolve(doc, path)
    if isinstance(value, bool) or not isinstance(value, float):
        raise TypeMismatch(
            f"path {path!s}: expected a number leaf, found {doc_mod.variant_of(value)}"
        )
    return value


def _validate_custom(op, outcome: Any, dt: float) -> StepOutcome:
    def fail(reason: str):
        raise CustomOpContractError(f"custom op {op.name!r}: {reason}")

    if not isinstance(outcome, StepOutcome):
        fail(f"step behavior must return a StepOutcome, got {type(outcome).__name__}")
    if not isinstance(outcome.state, Document):
        fail("next state must be a Document")
    if isinstance(outcome.progress, Remainder):
        if not isinstance(outcome.progress.anim, Anim):
            fail("remainder must be an animation")
        if outcome.progress.anim.kind is not ResultKind.UNIT:
            fail("remainder must have unit kind")
        if outcome.leftover is not None:
            fail("a remainder consumes the whole delta; leftover must be absent")
    elif isinstance(outcome.progress, Done):
        if outcome.progress.value is not None:
            fail("result must be unit (None)")
        leftover = outcome.leftover
        if not isinstance(leftover, float) or not math.isfinite(leftover):
            fail("a finished op must report a finite leftover")
        if leftover < 0 or leftover > dt + TIME_EPS:
            fail(f"leftover {leftover!r} outside [0, {dt!r}]")
    else:
        fail("progress must be Done or Remainder")
    return outcome


def step(anim: Anim, doc: Document, dt: float) -> StepOutcome:
    """Advance ``anim`` by ``dt`` seconds against ``doc``.

    Returns the next document and either ``Remainder`` (the delta was fully
    consumed) or ``Done`` with the result and the unused part of the delta.
    """
    dt = _check_delta(dt)

    if isinstance(anim, LinearTo):
        cur = _read_number(doc, anim.path)
        if dt >= anim.dur - TIME_EPS:
            # assign the target exactly; interpolation never accumulates into it
            return StepOutcome(
                write(doc, anim.path, anim.target), Done(None), max(0.0, dt - anim.dur)
            )
        new = cur + (anim.target - cur) * (dt / anim.dur)
        return StepOutcome(
            write(doc, anim.path, new),
            Remainder(LinearTo(anim.path, anim.dur - dt, anim.target)),
            None,
        )

    if isinstance(anim, SetValue):
        return StepOutcome(write(doc, anim.path, anim.value), Done(None), dt)

    if isinstance(anim, GetValue):
        value = resolve(doc, anim.path)
        if anim.read_kind is ResultKind.NUMBER:
            if isinstance(value, bool) or not isinstance(value, float):
                raise TypeMismatch(
                    f"path {anim.path!s}: expected a number leaf, found "
                    f"{doc_mod.variant_of(value)}"
                )
        else:
            if not isinstance(value, bool):
                raise TypeMismatch(
                    f"path {anim.path!s}: expected a boolean leaf, found "
                    f"{doc_mod.variant_of(value)}"
                )
        return StepOutcome(doc, Done(value), dt)

    if isinstance(anim, Delay):
        if dt >= anim.dur - TIME_EPS:
            return StepOutcome(doc, Done(None), max(0.0, dt - anim.dur))
        return StepOutcome(doc, Remainder(Delay(anim.dur - dt)), None)

    if isinstance(anim, Pure):
        return StepOutcome(doc, Done(check_result_value(anim.value, anim.kind)), dt)

    if isinstance(anim, Seq2):
        first = step(anim.first, doc, dt)
        if not first.is_done:
            return StepOutcome(
                first.state, Remainder(Seq2(first.progress.anim, anim.second, anim.combine)), None
            )
        x = first.progress.value
        second = step(anim.second, first.state, first.leftover)
        if not second.is_done:
            return StepOutcome(
                second.state,
                Remainder(Seq2(Pure(x), second.progress.anim, anim.combine)),
                None,
            )
        combined = check_result_value(
            anim.combine.fn(x, second.progress.value), anim.combine.result
        )
        return StepOutcome(second.state, Done(combined), second.leftover)

    if isinstance(anim, Bind):
        first = step(anim.first, doc, dt)
        if not first.is_done:
            return StepOutcome(
                first.state,
                Remainder(Bind(first.progress.anim, anim.cont, anim.result_kind)),
                None,
            )
        nxt = anim.cont(first.progress.value)
        if not isinstance(nxt, Anim):
            raise TypeError("bind continuation must return an animation")
        if nxt.kind is not anim.result_kind:
            raise KindMismatch(
                f"bind continuation returned kind {nxt.kind.value}, "
                f"declared {anim.result_kind.value}"
            )
        return step(nxt, first.state, first.leftover)

    if isinstance(anim, Par2):
        # both branches see the full delta; state threads left then right
        left = step(anim.left, doc, dt)
        right = step(anim.right, left.state, dt)
        if left.is_done and right.is_done:
            combined = check_result_value(
                anim.combine.fn(left.progress.value, right.progress.value),
                anim.combine.result,
            )
            return StepOutcome(right.state, Done(combined), min(left.leftover, right.leftover))
        if left.is_done:
            rebuilt = Par2(Pure(left.progress.value), right.progress.anim, anim.combine)
        elif right.is_done:
            rebuilt = Par2(left.progress.anim, Pure(right.progress.value), anim.combine)
        else:
            rebuilt = Par2(left.progress.anim, right.progress.anim, anim.combine)
        return StepOutcome(right.state, Remainder(rebuilt), None)

    if isinstance(anim, IfThenElse):
        cond = step(anim.cond, doc, dt)
        if not cond.is_done:
            return StepOutcome(
                cond.state,
                Remainder(IfThenElse(cond.progress.anim, anim.then_branch, anim.else_branch)),
                None,
            )
        chosen = cond.progress.value
        if not isinstance(chosen, bool):
            raise TypeMismatch(f"condition must yield a boolean, got {chosen!r}")
        branch = anim.then_branch if chosen else anim.else_branch
        return step(branch, cond.state, cond.leftover)

    if isinstance(anim, Custom):
        outcome = anim.op.step_behavior(doc, dt)
        return _validate_custom(anim.op, outcome, dt)

    raise TypeError(f"not an animation node: {anim!r}")


# ---------------------------------------------------------------------------
# Frame loops


@dataclass(frozen=True)
class Frame:
    t: float
    state: Document


@dataclass(frozen=True)
class Completed:
    result: Any
    consumed: float


@dataclass(frozen=True)
class OutOfTime:
    remainder: Anim
    consumed: float


@dataclass(frozen=True)
class FrameTrace:
    frames: tuple[Frame, ...]
    terminal: "Completed | OutOfTime"

    @property
    def completed(self) -> bool:
        return isinstance(self.terminal, Completed)


def run(anim: Anim, doc: Document, frame_deltas: Iterable[float]) -> FrameTrace:
    """Fold ``step`` over the deltas, snapshotting state after each frame.

    Stops early once the animation finishes; leftover time inside that final
    frame is discarded. ``consumed`` in the terminal records how much
    animation time was actually used.
    """
    frames: list[Frame] = []
    t = 0.0
    consumed = 0.0
    current = anim
    for dt in frame_deltas:
        outcome = step(current, doc, dt)
        doc = outcome.state
        t += dt
        frames.append(Frame(t, doc))
        if outcome.is_done:
            consumed += dt - outcome.leftover
            return FrameTrace(tuple(frames), Completed(outcome.progress.value, consumed))
        consumed += dt
        current = outcome.progress.anim
    return FrameTrace(tuple(frames), OutOfTime(current, consumed))


def run_fps(anim: Anim, doc: Document, fps: float, max_time: float) -> FrameTrace:
    """Run with uniform deltas of ``1/fps`` until done or ``max_time`` elapses."""
    if isinstance(fps, bool) or not isinstance(fps, (int, float)) or not fps > 0:
        raise ValueError(f"fps must be a positive number, got {fps!r}")
    max_time = seconds(max_time)
    n_frames = int(math.floor(fps * max_time + TIME_EPS))
    dt = 1.0 / float(fps)
    return run(anim, doc, (dt for _ in range(n_frames)))


def _result_jsonable(value: Any) -> Any:
    return value  # None, float and bool are all JSON-native


def trace_lines(trace: FrameTrace) -> Iterator[str]:
    """Serialize a trace: one JSON object per frame, then a terminal line."""
    for frame in trace.frames:
        yield json.dumps({"t": frame.t, "state": frame.state.root})
    if isinstance(trace.terminal, Completed):
        yield json.dumps(
            {
                "done": True,
                "result": _result_jsonable(trace.terminal.result),
                "consumed": trace.terminal.consumed,
            }
        )
    else:
        yield json.dumps({"done": False, "result": None, "consumed": trace.terminal.consumed})

"""Animation expressions and the combinators that build them.

An animation is an immutable expression tree. Leaves either consume time
(linear tweens, delays) or act instantaneously (set, get, pure values).
Inner nodes compose: statically known sequencing and parallelism, a
conditional whose branches are statically known, and a dynamic bind whose
continuation is an opaque host function. The structural distinction matters:
static composition can be analyzed without running (see the analysis
module), bind cannot.

Every node carries a result kind (unit, number or boolean), checked at
construction so that combiners and conditions always receive values of the
kind they declare.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable

from .document import PropertyPath, as_path


class ResultKind(Enum):
    UNIT = "unit"
    NUMBER = "number"
    BOOLEAN = "boolean"


class KindMismatch(Exception):
    """Raised when composition would feed a value of the wrong kind somewhere."""


def seconds(value: float) -> float:
    """Validate a duration: a finite, non-negative number of seconds."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"duration must be a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out) or out < 0:
        raise ValueError(f"duration must be finite and >= 0, got {value!r}")
    return out


def finite(value: float) -> float:
    """Validate a tween target: a finite number."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"target must be a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise ValueError(f"target must be finite, got {value!r}")
    return out


def kind_of_value(value: Any) -> ResultKind:
    if value is None:
        return ResultKind.UNIT
    if isinstance(value, bool):
        return ResultKind.BOOLEAN
    if isinstance(value, (int, float)):
        return ResultKind.NUMBER
    raise KindMismatch(f"{value!r} is not a unit, number or boolean result")


def check_result_value(value: Any, kind: ResultKind) -> Any:
    """Normalize a result value against a declared kind.

    Unit collapses everything to None; numbers are coerced to finite floats;
    booleans must be actual bools.
    """
    if kind is ResultKind.UNIT:
        return None
    if kind is ResultKind.NUMBER:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise KindMismatch(f"expected a number result, got {value!r}")
        out = float(value)
        if not math.isfinite(out):
            raise ValueError(f"result numbers must be finite, got {value!r}")
        return out
    if not isinstance(value, bool):
        raise KindMismatch(f"expected a boolean result, got {value!r}")
    return value


@dataclass(frozen=True)
class Combiner:
    """A pure binary function on result values, with declared kinds.

    ``left``/``right`` name the kinds the function accepts (None accepts
    any kind, for combiners that ignore their inputs) and ``result`` the
    kind it produces. The function must not touch animation state.
    """

    fn: Callable[[Any, Any], Any]
    left: ResultKind | None
    right: ResultKind | None
    result: ResultKind


DISCARD = Combiner(lambda _a, _b: None, None, None, ResultKind.UNIT)


class Anim:
    """Base class for animation expression nodes. Nodes are immutable."""

    __slots__ = ()

    @property
    def kind(self) -> ResultKind:
        raise NotImplementedError


def _check_input(slot: str, declared: ResultKind | None, child: Anim) -> None:
    if declared is not None and child.kind is not declared:
        raise KindMismatch(
            f"{slot} operand has kind {child.kind.value}, combiner expects {declared.value}"
        )


@dataclass(frozen=True)
class LinearTo(Anim):
    """Tween one numeric leaf linearly toward a target over a duration."""

    path: PropertyPath
    dur: float
    target: float

    @property
    def kind(self) -> ResultKind:
        return ResultKind.UNIT


@dataclass(frozen=True)
class SetValue(Anim):
    """Instantaneously overwrite one leaf (same-variant writes only)."""

    path: PropertyPath
    value: Any

    @property
    def kind(self) -> ResultKind:
        return ResultKind.UNIT


@dataclass(frozen=True)
class GetValue(Anim):
    """Instantaneously read one leaf; yields its value as the result."""

    path: PropertyPath
    read_kind: ResultKind

    @property
    def kind(self) -> ResultKind:
        return self.read_kind


@dataclass(frozen=True)
class Delay(Anim):
    """Consume time without touching state."""

    dur: float

    @property
    def kind(self) -> ResultKind:
        return ResultKind.UNIT


@dataclass(frozen=True)
class Pure(Anim):
    """An already-available result; consumes no time."""

    value: Any

    @property
    def kind(self) -> ResultKind:
        return kind_of_value(self.value)


@dataclass(frozen=True)
class Seq2(Anim):
    """Run ``first`` then ``second``, combining both results."""

    first: Anim
    second: Anim
    combine: Combiner

    def __post_init__(self):
        _check_input("first", self.combine.left, self.first)
        _check_input("second", self.combine.right, self.second)

    @property
    def kind(self) -> ResultKind:
        return self.combine.result


@dataclass(frozen=True)
class Par2(Anim):
    """Run ``left`` and ``right`` over the same time, combining both results."""

    left: Anim
    right: Anim
    combine: Combiner

    def __post_init__(self):
        _check_input("left", self.combine.left, self.left)
        _check_input("right", self.combine.right, self.right)

    @property
    def kind(self) -> ResultKind:
        return self.combine.result


@dataclass(frozen=True)
class IfThenElse(Anim):
    """Run a boolean condition, then exactly one of two known branches."""

    cond: Anim
    then_branch: Anim
    else_branch: Anim

    def __post_init__(self):
        if self.cond.kind is not ResultKind.BOOLEAN:
            raise KindMismatch(
                f"condition must have boolean kind, got {self.cond.kind.value}"
            )
        if self.then_branch.kind is not self.else_branch.kind:
            raise KindMismatch(
                "branches must share one kind, got "
                f"{self.then_branch.kind.value} and {self.else_branch.kind.value}"
            )

    @property
    def kind(self) -> ResultKind:
        return self.then_branch.kind


@dataclass(frozen=True)
class Bind(Anim):
    """Sequence through an arbitrary continuation.

    Maximally expressive and statically opaque: duration analysis cannot see
    past a bind. ``result_kind`` declares the kind every continuation result
    must have; the stepper enforces it when the continuation runs.
    """

    first: Anim
    cont: Callable[[Any], Anim]
    result_kind: ResultKind

    @property
    def kind(self) -> ResultKind:
        return self.result_kind


@dataclass(frozen=True)
class CustomOp:
    """An extension operation with dual semantics.

    ``step_behavior`` is consulted by the stepper; it receives the current
    document and the frame delta and must return a valid step outcome.
    ``duration_meta``/``max_duration_meta`` are consulted by the analyzers;
    leaving them out makes the op opaque to the corresponding analysis.
    When only ``duration_meta`` is given, ``max_duration_meta`` defaults
    to it.
    """

    name: str
    step_behavior: Callable[[Any, float], Any]
    duration_meta: float | None = None
    max_duration_meta: float | None = None

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ValueError("custom op name must be a non-empty string")
        if not callable(self.step_behavior):
            raise ValueError("custom op step_behavior must be callable")
        if self.duration_meta is not None:
            object.__setattr__(self, "duration_meta", seconds(self.duration_meta))
        if self.max_duration_meta is None:
            object.__setattr__(self, "max_duration_meta", self.duration_meta)
        else:
            object.__setattr__(self, "max_duration_meta", seconds(self.max_duration_meta))


@dataclass(frozen=True)
class Custom(Anim):
    """Embed a custom operation in an expression tree."""

    op: CustomOp

    @property
    def kind(self) -> ResultKind:
        return ResultKind.UNIT


def children(anim: Anim) -> tuple[Anim, ...]:
    """Statically known children of a node, in a fixed order.

    Bind exposes only its first child: the continuation's tree does not
    exist until a value is available.
    """
    if isinstance(anim, Seq2):
        return (anim.first, anim.second)
    if isinstance(anim, Par2):
        return (anim.left, anim.right)
    if isinstance(anim, IfThenElse):
        return (anim.cond, anim.then_branch, anim.else_branch)
    if isinstance(anim, Bind):
        return (anim.first,)
    return ()


# ---------------------------------------------------------------------------
# Constructors


def linear_to(path: "PropertyPath | str", dur: float, to: float) -> Anim:
    """Tween the numeric leaf at ``path`` to ``to`` over ``dur`` seconds."""
    return LinearTo(as_path(path), seconds(dur), finite(to))


def set_value(path: "PropertyPath | str", value: Any) -> Anim:
    """Instantly set the leaf at ``path`` to a number, boolean or text value."""
    if isinstance(value, bool) or isinstance(value, str):
        leaf = value
    elif isinstance(value, (int, float)):
        leaf = float(value)
        if not math.isfinite(leaf):
            raise ValueError(f"set value must be finite, got {value!r}")
    else:
        raise ValueError(f"set value must be a number, boolean or text, got {value!r}")
    return SetValue(as_path(path), leaf)


def get_value(path: "PropertyPath | str", kind: ResultKind = ResultKind.NUMBER) -> Anim:
    """Instantly read the leaf at ``path``; ``kind`` declares what it holds."""
    if kind not in (ResultKind.NUMBER, ResultKind.BOOLEAN):
        raise KindMismatch("get_value reads number or boolean leaves")
    return GetValue(as_path(path), kind)


def delay(dur: float) -> Anim:
    """Consume ``dur`` seconds without changing any state."""
    return Delay(seconds(dur))


def pure(value: Any = None) -> Anim:
    """An animation that immediately yields ``value``."""
    if value is not None and not isinstance(value, bool):
        if isinstance(value, (int, float)):
            value = finite(value)
        else:
            raise KindMismatch(f"{value!r} is not a unit, number or boolean result")
    return Pure(value)


def map2(combine: Combiner, a: Anim, b: Anim) -> Anim:
    """Sequence ``a`` then ``b`` and combine their results."""
    return Seq2(a, b, combine)


def lift_p2(combine: Combiner, a: Anim, b: Anim) -> Anim:
    """Run ``a`` and ``b`` in parallel and combine their results."""
    return Par2(a, b, combine)


def sequential(a: Anim, b: Anim) -> Anim:
    """Run ``a`` to completion, then ``b``; both results are discarded."""
    return map2(DISCARD, a, b)


def parallel(a: Anim, b: Anim) -> Anim:
    """Run ``a`` and ``b`` over the same time; both results are discarded."""
    return lift_p2(DISCARD, a, b)


def bind(a: Anim, cont: Callable[[Any], Anim], kind: ResultKind = ResultKind.UNIT) -> Anim:
    """Feed ``a``'s result to ``cont`` and continue with the animation it builds.

    The resulting animation cannot be duration-analyzed; prefer the static
    combinators when the continuation does not truly depend on the value.
    """
    if not callable(cont):
        raise ValueError("bind continuation must be callable")
    return Bind(a, cont, kind)


def if_then_else(cond: Anim, then_branch: Anim, else_branch: Anim) -> Anim:
    """Run ``cond``, then whichever branch its boolean result selects."""
    return IfThenElse(cond, then_branch, else_branch)


def custom(op: CustomOp) -> Anim:
    """Embed a custom operation."""
    if not isinstance(op, CustomOp):
        raise ValueError("custom expects a CustomOp")
    return Custom(op)

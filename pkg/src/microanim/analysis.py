"""Static inspection of animations: duration and maximum duration.

Both analyzers fold over the expression tree without executing anything,
which is the point: a timeline tool can know how long an animation lasts
before a single frame runs. Constructs the fold cannot see through produce
an InspectError that names the offending node by its child-index path, so
callers can report exactly which part of a composition broke analyzability
(and, for conditionals, that max_duration would still work).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .dsl import (
    Anim,
    Bind,
    Custom,
    Delay,
    GetValue,
    IfThenElse,
    LinearTo,
    Par2,
    Pure,
    Seq2,
    SetValue,
)


class InspectErrorKind(Enum):
    DYNAMIC_BIND = "dynamic-bind"
    CONDITIONAL_IN_EXACT_MODE = "conditional-in-exact-mode"
    OPAQUE_CUSTOM_OP = "opaque-custom-op"


@dataclass
class InspectError(Exception):
    """An animation is not inspectable; points at the node that blocks it."""

    kind: InspectErrorKind
    node_path: tuple[int, ...]
    op_name: str | None = None

    def __post_init__(self):
        super().__init__(str(self))

    def __str__(self) -> str:
        where = "root" if not self.node_path else "/".join(str(i) for i in self.node_path)
        detail = f" ({self.op_name})" if self.op_name else ""
        return f"{self.kind.value}{detail} at node {where}"


def duration(anim: Anim) -> float:
    """Exact duration in seconds, without running the animation.

    Fails on conditionals (their branches may differ; use max_duration), on
    binds (the continuation is opaque) and on custom ops without duration
    metadata.
    """
    return _fold(anim, (), exact=True)


def max_duration(anim: Anim) -> float:
    """Upper bound on consumed time, without running the animation.

    Like duration, but a conditional costs its condition plus the longer of
    its two branches. Binds and metadata-free custom ops still fail.
    """
    return _fold(anim, (), exact=False)


def _fold(anim: Anim, path: tuple[int, ...], exact: bool) -> float:
    if isinstance(anim, (LinearTo, Delay)):
        return anim.dur
    if isinstance(anim, (SetValue, GetValue, Pure)):
        return 0.0
    if isinstance(anim, Seq2):
        return _fold(anim.first, path + (0,), exact) + _fold(anim.second, path + (1,), exact)
    if isinstance(anim, Par2):
        return max(_fold(anim.left, path + (0,), exact), _fold(anim.right, path + (1,), exact))
    if isinstance(anim, IfThenElse):
        if exact:
            raise InspectError(InspectErrorKind.CONDITIONAL_IN_EXACT_MODE, path)
        cond = _fold(anim.cond, path + (0,), exact)
        then_d = _fold(anim.then_branch, path + (1,), exact)
        else_d = _fold(anim.else_branch, path + (2,), exact)
        return cond + max(then_d, else_d)
    if isinstance(anim, Bind):
        raise InspectError(InspectErrorKind.DYNAMIC_BIND, path)
    if isinstance(anim, Custom):
        meta = anim.op.duration_meta if exact else anim.op.max_duration_meta
        if meta is None:
            raise InspectError(InspectErrorKind.OPAQUE_CUSTOM_OP, path, anim.op.name)
        return meta
    raise TypeError(f"not an animation node: {anim!r}")

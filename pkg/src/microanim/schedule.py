"""Relative sequencing: start one animation at a signed offset from the
computed end of another.

The join point comes from static inspection, never from running anything.
A negative offset makes the second animation overlap the first one's tail,
which is why the composition is parallel-with-delay rather than plain
sequencing: sequencing could only ever start the second animation after the
first has finished.
"""

from __future__ import annotations

import math

from .analysis import duration, max_duration
from .dsl import Anim, delay, parallel, sequential


class SchedulingError(Exception):
    """Base class for relative-sequencing failures."""


class NegativeStart(SchedulingError):
    """The requested offset would start the second animation before t=0."""

    def __init__(self, start: float):
        self.start = start
        super().__init__(f"second animation would start at {start!r} (before t=0)")


def _offset_seconds(offset: float) -> float:
    if isinstance(offset, bool) or not isinstance(offset, (int, float)):
        raise ValueError(f"offset must be a number, got {offset!r}")
    out = float(offset)
    if not math.isfinite(out):
        raise ValueError(f"offset must be finite, got {offset!r}")
    return out


def _compose_at(a: Anim, b: Anim, start: float) -> Anim:
    if start < 0:
        raise NegativeStart(start)
    return parallel(a, sequential(delay(start), b))


def rel_sequential(a: Anim, b: Anim, offset: float) -> Anim:
    """Compose ``a`` with ``b`` starting at ``duration(a) + offset``.

    A negative offset overlaps ``a``'s tail; a positive one leaves a gap.
    ``a`` must be duration-inspectable (InspectError propagates otherwise)
    and the start point must not fall before time zero.
    """
    start = duration(a) + _offset_seconds(offset)
    return _compose_at(a, b, start)


def rel_max_sequential(a: Anim, b: Anim, offset: float) -> Anim:
    """Like rel_sequential, but measures ``a`` by its maximum duration.

    This admits conditionals in ``a``: the second animation starts at the
    worst-case end, which is the only start point that can never cut a
    branch short.
    """
    start = max_duration(a) + _offset_seconds(offset)
    return _compose_at(a, b, start)

"""microanim: composable micro-animations over a JSON-like state tree.

Animations are immutable expression trees built from linear tweens,
instantaneous edits and reads, delays, and sequential / parallel /
conditional composition. A delta-time stepper advances them frame by
frame; static analyzers report (maximum) duration without running
anything; relative sequencing uses those analyzers to overlap timelines.
"""

from .analysis import InspectError, InspectErrorKind, duration, max_duration
from .document import (
    Document,
    DocumentError,
    PathNotFound,
    PathSyntaxError,
    PropertyPath,
    TypeMismatch,
    parse_path,
    resolve,
    write,
)
from .dsl import (
    Anim,
    Combiner,
    CustomOp,
    KindMismatch,
    ResultKind,
    bind,
    custom,
    delay,
    get_value,
    if_then_else,
    lift_p2,
    linear_to,
    map2,
    parallel,
    pure,
    sequential,
    set_value,
)
from .engine import (
    Completed,
    CustomOpContractError,
    Done,
    Frame,
    FrameTrace,
    NegativeDelta,
    OutOfTime,
    Remainder,
    StepOutcome,
    run,
    run_fps,
    step,
    trace_lines,
)
from .schedule import NegativeStart, SchedulingError, rel_max_sequential, rel_sequential
from .script import ParseError, Scenario, load_scenario

__all__ = [
    "Anim",
    "Combiner",
    "Completed",
    "CustomOp",
    "CustomOpContractError",
    "Document",
    "DocumentError",
    "Done",
    "Frame",
    "FrameTrace",
    "InspectError",
    "InspectErrorKind",
    "KindMismatch",
    "NegativeDelta",
    "NegativeStart",
    "OutOfTime",
    "ParseError",
    "PathNotFound",
    "PathSyntaxError",
    "PropertyPath",
    "Remainder",
    "ResultKind",
    "Scenario",
    "SchedulingError",
    "StepOutcome",
    "TypeMismatch",
    "bind",
    "custom",
    "delay",
    "duration",
    "get_value",
    "if_then_else",
    "lift_p2",
    "linear_to",
    "load_scenario",
    "map2",
    "max_duration",
    "parallel",
    "parse_path",
    "pure",
    "rel_max_sequential",
    "rel_sequential",
    "resolve",
    "run",
    "run_fps",
    "sequential",
    "set_value",
    "step",
    "trace_lines",
    "write",
]

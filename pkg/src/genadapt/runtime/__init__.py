from .engine import (
    DEFAULT_MAX_STEPS,
    AdaptationOutcome,
    Failed,
    Ignored,
    Metamorphosed,
    Runtime,
    RuntimeFailure,
    StateChanged,
    evaluate,
)
from .registry import (
    FeatureFailure,
    FeatureRegistry,
    TransitionRegistry,
    parse_stub_file,
)
from .script import Command, Session, parse_command, parse_script, run_script
from .trace import Trace, TraceRecord, render_value

__all__ = [
    "DEFAULT_MAX_STEPS",
    "AdaptationOutcome",
    "Command",
    "Failed",
    "FeatureFailure",
    "FeatureRegistry",
    "Ignored",
    "Metamorphosed",
    "Runtime",
    "RuntimeFailure",
    "Session",
    "StateChanged",
    "Trace",
    "TraceRecord",
    "TransitionRegistry",
    "evaluate",
    "parse_command",
    "parse_script",
    "parse_stub_file",
    "render_value",
    "run_script",
]

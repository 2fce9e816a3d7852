"""Genetic adaptation framework for self-adaptive software.

Parse ``.gaf`` sources with :func:`genadapt.dsl.parse_unit`, link them with
:func:`genadapt.dsl.link`, then drive instances through
:class:`genadapt.runtime.Runtime`.
"""

from .coherence import Closure, CoherenceError, apply_gaprog, explain, propagate, seed_lists
from .diagnostics import Diagnostic, DiagnosticError, Severity, SourceLocation
from .dsl import LinkedModel, SourceUnit, format_unit, link, parse_unit
from .model import validate_model
from .runtime import Runtime, Trace

__version__ = "0.1.0"

__all__ = [
    "Closure",
    "CoherenceError",
    "Diagnostic",
    "DiagnosticError",
    "LinkedModel",
    "Runtime",
    "Severity",
    "SourceLocation",
    "SourceUnit",
    "Trace",
    "apply_gaprog",
    "explain",
    "format_unit",
    "link",
    "parse_unit",
    "propagate",
    "seed_lists",
    "validate_model",
]

"""Lexing, parsing, linking and printing of ``.gaf`` sources."""

from .linker import ClauseKind, LinkedModel, link, link_items
from .parser import SourceUnit, parse_unit
from .printer import format_condition, format_unit

__all__ = [
    "ClauseKind",
    "LinkedModel",
    "SourceUnit",
    "format_condition",
    "format_unit",
    "link",
    "link_items",
    "parse_unit",
    "load_files",
]


def load_files(paths) -> tuple[list[SourceUnit], list]:
    """Read and parse ``paths``; returns the units and every parse diagnostic.

    ``OSError`` propagates to the caller.
    """
    from ..diagnostics import DiagnosticError

    units, diagnostics = [], []
    for path in paths:
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
        try:
            units.append(parse_unit(text, str(path)))
        except DiagnosticError as exc:
            diagnostics.extend(exc.diagnostics)
    return units, diagnostics

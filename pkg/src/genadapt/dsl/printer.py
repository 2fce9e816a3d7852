"""Canonical pretty-printer: one statement per line, four-space indents."""

from __future__ import annotations

from ..model import (
    Behavior,
    Comparison,
    Condition,
    Conjunction,
    Disjunction,
    Edge,
    EventsSection,
    FeaturesSection,
    GAProc,
    GAProg,
    Item,
    MetamorphosisProgram,
    Negation,
    Relation,
    RelationsSection,
    Section,
    SoftwareConfiguration,
    SoftwareDatabase,
)
from .lexer import quote

INDENT = "    "


def format_literal(value) -> str:
    return str(value) if isinstance(value, int) else quote(value)


def format_condition(cond: Condition) -> str:
    if isinstance(cond, Comparison):
        return f"out {cond.op} {format_literal(cond.value)}"
    if isinstance(cond, Negation):
        inner = format_condition(cond.operand)
        if isinstance(cond.operand, Comparison):
            return f"not {inner}"
        return f"not ({inner})"
    if isinstance(cond, Disjunction):
        parts = [
            f"({format_condition(c)})" if isinstance(c, Disjunction) else format_condition(c)
            for c in cond.operands
        ]
        return " or ".join(parts)
    parts = [
        f"({format_condition(c)})" if isinstance(c, (Disjunction, Conjunction)) else format_condition(c)
        for c in cond.operands
    ]
    return " and ".join(parts)


def format_relation(rel: Relation) -> str:
    return f"{rel}"


def format_edge(edge: Edge) -> str:
    guards = "".join(f"({format_condition(g)}) " for g in edge.guards)
    return f"{edge.source} - {guards}{edge.target};"


class _Writer:
    def __init__(self):
        self.lines: list[str] = []
        self.depth = 0

    def line(self, text: str = "") -> None:
        self.lines.append(INDENT * self.depth + text if text else "")

    def comments(self, comments) -> None:
        for c in comments:
            self.line("//" + c)

    def open(self, header: str, comments=()) -> None:
        self.comments(comments)
        self.line(header + " {")
        self.depth += 1

    def close(self) -> None:
        self.depth -= 1
        self.line("}")


def _database(w: _Writer, db: SoftwareDatabase) -> None:
    w.open(f"Database {db.name}", db.comments)
    for feat in db.features:
        w.comments(feat.comments)
        w.line(f"Feature {feat.name} : {feat.kind.value};")
    w.close()


def _section(w: _Writer, s: Section) -> None:
    if isinstance(s, FeaturesSection):
        w.open("Features", s.comments)
        w.line(", ".join(s.names) + ";")
    elif isinstance(s, EventsSection):
        w.open("Events", s.comments)
        w.line(", ".join(s.names) + ";")
    elif isinstance(s, RelationsSection):
        w.open("Relations", s.comments)
        for rel in s.relations:
            w.comments(rel.comments)
            w.line(format_relation(rel) + ";")
    elif isinstance(s, GAProg):
        w.open(f"GAProg {s.name}", s.comments)
        for clause in s.clauses:
            w.comments(clause.comments)
            w.line(f"{clause.mode.value}({', '.join(clause.features)});")
    elif isinstance(s, Behavior):
        w.open(f"Behavior {s.name}", s.comments)
        for edge in s.edges:
            w.comments(edge.comments)
            w.line(format_edge(edge))
    elif isinstance(s, GAProc):
        w.open(f"GAProc {s.name}", s.comments)
        for clause in s.clauses:
            w.comments(clause.comments)
            tail = f", {clause.behavior}" if clause.behavior is not None else ""
            w.line(f"(event = {clause.event}): {clause.target}{tail};")
    elif isinstance(s, MetamorphosisProgram):
        w.open(f"Metamorphosis_Program {s.name}", s.comments)
        w.line(f"Metamorphose to Configuration {s.target_configuration};")
        w.line(f"At the Adaptation State {s.from_state} to the Adaptation State {s.to_state};")
        w.line(f"Information transition ensured by {s.transition_kind.value} {s.transition_fn};")
    else:  # pragma: no cover - guarded by the Section union
        raise TypeError(f"not a section: {s!r}")
    w.close()


def _configuration(w: _Writer, cfg: SoftwareConfiguration) -> None:
    w.open(f"Configuration {cfg.name} on {cfg.database}", cfg.comments)
    for i, section in enumerate(cfg.sections):
        if i:
            w.line()
        _section(w, section)
    w.close()


def format_items(items: tuple[Item, ...] | list[Item]) -> str:
    w = _Writer()
    for i, item in enumerate(items):
        if i:
            w.line()
        if isinstance(item, SoftwareDatabase):
            _database(w, item)
        else:
            _configuration(w, item)
    return "\n".join(w.lines) + "\n" if w.lines else ""


def format_unit(unit) -> str:
    """Canonical source for ``unit``; parsing the result gives back the same items."""
    return format_items(unit.items)

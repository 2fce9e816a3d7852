"""Cross-unit linking: gathers items, validates them and indexes the result."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from ..diagnostics import Diagnostic, DiagnosticError, has_errors
from ..model import (
    GAProc,
    MetamorphosisProgram,
    ProcClause,
    SoftwareConfiguration,
    SoftwareDatabase,
    classify_clause,
    configuration_family,
    validate_model,
)
from .parser import SourceUnit


class ClauseKind(str, Enum):
    STATE = "state"
    METAMORPHOSIS = "metamorphosis"


@dataclass(frozen=True)
class LinkedModel:
    databases: dict[str, SoftwareDatabase]
    configurations: dict[str, SoftwareConfiguration]
    clause_kinds: dict[tuple[str, str, str], ClauseKind] = field(default_factory=dict)
    warnings: tuple[Diagnostic, ...] = ()

    def configuration(self, name: str) -> SoftwareConfiguration:
        try:
            return self.configurations[name]
        except KeyError:
            raise KeyError(f"configuration {name} is not loaded") from None

    def find_gaproc(self, name: str) -> tuple[SoftwareConfiguration, GAProc] | None:
        for cfg in self.configurations.values():
            proc = cfg.gaproc(name)
            if proc is not None:
                return cfg, proc
        return None

    def clause_kind(self, owner: str, proc: str, clause: ProcClause) -> ClauseKind:
        return self.clause_kinds[(owner, proc, clause.event)]

    def metamorphosis_targets(self, name: str) -> list[MetamorphosisProgram]:
        return [m for c in self.configurations.values() for m in c.metamorphoses if m.name == name]


def link_items(
    databases: Iterable[SoftwareDatabase], configurations: Iterable[SoftwareConfiguration]
) -> LinkedModel:
    databases = list(databases)
    configurations = list(configurations)
    diagnostics = validate_model(databases, configurations)
    if has_errors(diagnostics):
        raise DiagnosticError(diagnostics)
    cfgs = {c.name: c for c in configurations}
    kinds: dict[tuple[str, str, str], ClauseKind] = {}
    for cfg in configurations:
        family = configuration_family(cfg, cfgs)
        for proc in cfg.gaprocs:
            for clause in proc.clauses:
                (kind,) = classify_clause(clause, family)
                kinds[(cfg.name, proc.name, clause.event)] = ClauseKind(kind)
    return LinkedModel(
        {d.name: d for d in databases}, cfgs, kinds, tuple(diagnostics)
    )


def link(units: Iterable[SourceUnit]) -> LinkedModel:
    """Resolve every reference across ``units``.

    Raises :class:`DiagnosticError` when any error is found; warnings are kept
    on the returned model.
    """
    units = list(units)
    return link_items(
        (d for u in units for d in u.databases),
        (c for u in units for c in u.configurations),
    )

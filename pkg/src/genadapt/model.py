"""Domain types for software databases, configurations and instances.

Everything here is an immutable value once parsed, except
:class:`SoftwareInstance`, which the runtime mutates.  Source locations and
name locations are excluded from equality so two trees compare structurally.
"""

from __future__ import annotations

import copy
import re
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Union

from .diagnostics import NOWHERE, Diagnostic, SourceLocation, error, warning

CREATION_EVENT = "creation"

IDENTIFIER_RE = re.compile(r"[A-Za-z](?:[A-Za-z0-9_]|-(?=[A-Za-z0-9]))*")


def is_identifier(text: str) -> bool:
    return IDENTIFIER_RE.fullmatch(text) is not None


def _loc() -> SourceLocation:
    return field(default=NOWHERE, compare=False, repr=False)


def _locs() -> tuple:
    return field(default=(), compare=False, repr=False)


class FeatureKind(str, Enum):
    STATE = "state"
    DATA = "data"
    METHOD = "method"
    ADAPTER = "adapter"


class Mode(str, Enum):
    ENABLE = "Enable"
    DISABLE = "Disable"

    @property
    def other(self) -> "Mode":
        return Mode.DISABLE if self is Mode.ENABLE else Mode.ENABLE


class Verb(str, Enum):
    IMPLIES = "Implies"
    EXCLUDES = "Excludes"


class TransitionKind(str, Enum):
    FUNCTION = "function"
    PROCEDURE = "procedure"


# --------------------------------------------------------------------------
# Database (genome)


@dataclass(frozen=True)
class FeatureDecl:
    name: str
    kind: FeatureKind
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()


@dataclass(frozen=True)
class SoftwareDatabase:
    name: str
    features: tuple[FeatureDecl, ...] = ()
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.features)


# --------------------------------------------------------------------------
# Configuration sections (genotype)


@dataclass(frozen=True)
class FeaturesSection:
    names: tuple[str, ...]
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()
    name_locs: tuple[SourceLocation, ...] = _locs()


@dataclass(frozen=True)
class EventsSection:
    names: tuple[str, ...]
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()
    name_locs: tuple[SourceLocation, ...] = _locs()


@dataclass(frozen=True)
class Relation:
    trigger_mode: Mode
    trigger: str
    verb: Verb
    target_mode: Mode
    target: str
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()

    @property
    def key(self) -> tuple:
        return (self.trigger_mode, self.trigger, self.verb, self.target_mode, self.target)

    @property
    def mixed_mode(self) -> bool:
        return self.trigger_mode is not self.target_mode

    @property
    def produces(self) -> Mode:
        """The list the target lands in when the relation fires."""
        if self.verb is Verb.IMPLIES:
            return self.trigger_mode
        return self.trigger_mode.other

    def __str__(self) -> str:
        return (
            f"{self.trigger_mode.value}({self.trigger}) {self.verb.value} "
            f"{self.target_mode.value}({self.target})"
        )


@dataclass(frozen=True)
class RelationsSection:
    relations: tuple[Relation, ...]
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()


@dataclass(frozen=True)
class GAClause:
    mode: Mode
    features: tuple[str, ...]
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()
    feature_locs: tuple[SourceLocation, ...] = _locs()

    def located(self) -> Iterator[tuple[str, SourceLocation]]:
        for i, name in enumerate(self.features):
            yield name, self.feature_locs[i] if i < len(self.feature_locs) else self.loc


@dataclass(frozen=True)
class GAProg:
    name: str
    clauses: tuple[GAClause, ...] = ()
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()

    @property
    def enable_clauses(self) -> tuple[tuple[str, ...], ...]:
        return tuple(c.features for c in self.clauses if c.mode is Mode.ENABLE)

    @property
    def disable_clauses(self) -> tuple[tuple[str, ...], ...]:
        return tuple(c.features for c in self.clauses if c.mode is Mode.DISABLE)


# Guards over the previous feature's output.


@dataclass(frozen=True)
class Comparison:
    op: str
    value: Union[int, str]

    ORDERING = ("<", "<=", ">", ">=")
    OPERATORS = ("==", "!=", "<", "<=", ">", ">=")

    @property
    def ordering(self) -> bool:
        return self.op in self.ORDERING


@dataclass(frozen=True)
class Conjunction:
    operands: tuple["Condition", ...]


@dataclass(frozen=True)
class Disjunction:
    operands: tuple["Condition", ...]


@dataclass(frozen=True)
class Negation:
    operand: "Condition"


Condition = Union[Comparison, Conjunction, Disjunction, Negation]


def comparisons(cond: Condition) -> Iterator[Comparison]:
    if isinstance(cond, Comparison):
        yield cond
    elif isinstance(cond, Negation):
        yield from comparisons(cond.operand)
    else:
        for operand in cond.operands:
            yield from comparisons(operand)


@dataclass(frozen=True)
class Edge:
    source: str
    guards: tuple[Condition, ...]
    target: str
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()


@dataclass(frozen=True)
class Behavior:
    name: str
    edges: tuple[Edge, ...] = ()
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()

    @property
    def start(self) -> str:
        return self.edges[0].source

    @property
    def features(self) -> tuple[str, ...]:
        """Every feature mentioned by an edge, in first-mention order."""
        seen: dict[str, None] = {}
        for edge in self.edges:
            seen.setdefault(edge.source)
            seen.setdefault(edge.target)
        return tuple(seen)

    def outgoing(self, feature: str) -> Iterator[Edge]:
        return (e for e in self.edges if e.source == feature)


@dataclass(frozen=True)
class ProcClause:
    event: str
    target: str
    behavior: str | None = None
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()


@dataclass(frozen=True)
class GAProc:
    name: str
    clauses: tuple[ProcClause, ...] = ()
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()

    def clause_for(self, event: str) -> ProcClause | None:
        for clause in self.clauses:
            if clause.event == event:
                return clause
        return None


@dataclass(frozen=True)
class MetamorphosisProgram:
    name: str
    target_configuration: str
    from_state: str
    to_state: str
    transition_fn: str
    transition_kind: TransitionKind = TransitionKind.FUNCTION
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()


Section = Union[
    FeaturesSection, EventsSection, RelationsSection, GAProg, Behavior, GAProc, MetamorphosisProgram
]
Program = Union[GAProg, Behavior, GAProc, MetamorphosisProgram]


@dataclass(frozen=True)
class SoftwareConfiguration:
    """A configuration as written: sections keep their source order.

    The accessors flatten repeated sections, so two ``Features`` blocks act
    as one list.
    """

    name: str
    database: str
    sections: tuple[Section, ...] = ()
    comments: tuple[str, ...] = ()
    loc: SourceLocation = _loc()

    def _of(self, kind) -> Iterator:
        return (s for s in self.sections if isinstance(s, kind))

    @property
    def features(self) -> tuple[str, ...]:
        return tuple(n for s in self._of(FeaturesSection) for n in s.names)

    @property
    def expected_events(self) -> tuple[str, ...]:
        return tuple(n for s in self._of(EventsSection) for n in s.names)

    @property
    def relations(self) -> tuple[Relation, ...]:
        return tuple(r for s in self._of(RelationsSection) for r in s.relations)

    @property
    def gaprogs(self) -> tuple[GAProg, ...]:
        return tuple(self._of(GAProg))

    @property
    def behaviors(self) -> tuple[Behavior, ...]:
        return tuple(self._of(Behavior))

    @property
    def gaprocs(self) -> tuple[GAProc, ...]:
        return tuple(self._of(GAProc))

    @property
    def metamorphoses(self) -> tuple[MetamorphosisProgram, ...]:
        return tuple(self._of(MetamorphosisProgram))

    def gaprog(self, name: str) -> GAProg | None:
        return next((p for p in self.gaprogs if p.name == name), None)

    def behavior(self, name: str) -> Behavior | None:
        return next((p for p in self.behaviors if p.name == name), None)

    def gaproc(self, name: str) -> GAProc | None:
        return next((p for p in self.gaprocs if p.name == name), None)

    def metamorphosis(self, name: str) -> MetamorphosisProgram | None:
        return next((p for p in self.metamorphoses if p.name == name), None)


Item = Union[SoftwareDatabase, SoftwareConfiguration]


# --------------------------------------------------------------------------
# Instance (phenotype)

StoreValue = Union[int, str, list]


@dataclass
class SoftwareInstance:
    id: str
    database: str
    configuration: str
    lifecycle: str
    feature_state: dict[str, bool]
    current_state: str | None = None
    active_behavior: str | None = None
    store: dict[str, StoreValue] = field(default_factory=dict)
    # configuration that declares the lifecycle GAProc; fixed across metamorphosis
    lifecycle_owner: str | None = None

    @property
    def enabled(self) -> list[str]:
        return [f for f, on in self.feature_state.items() if on]

    def is_enabled(self, feature: str) -> bool:
        return self.feature_state.get(feature, False)

    def copy(self) -> "SoftwareInstance":
        return copy.deepcopy(self)


# --------------------------------------------------------------------------
# Validation


def configuration_family(
    start: SoftwareConfiguration, configurations: dict[str, SoftwareConfiguration]
) -> list[SoftwareConfiguration]:
    """``start`` plus every configuration reachable through metamorphosis targets."""
    family = [start]
    seen = {start.name}
    queue = deque([start])
    while queue:
        cfg = queue.popleft()
        for prog in cfg.metamorphoses:
            nxt = configurations.get(prog.target_configuration)
            if nxt is not None and nxt.name not in seen:
                seen.add(nxt.name)
                family.append(nxt)
                queue.append(nxt)
    return family


def classify_clause(
    clause: ProcClause, family: Iterable[SoftwareConfiguration]
) -> set[str]:
    """Kinds ("state" / "metamorphosis") the clause target takes across ``family``."""
    kinds = set()
    for cfg in family:
        if cfg.gaprog(clause.target) is not None:
            kinds.add("state")
        if cfg.metamorphosis(clause.target) is not None:
            kinds.add("metamorphosis")
    return kinds


class _Checker:
    def __init__(self, databases, configurations):
        self.databases = list(databases)
        self.configurations = list(configurations)
        self.diagnostics: list[Diagnostic] = []
        self.db_by_name: dict[str, SoftwareDatabase] = {}
        self.cfg_by_name: dict[str, SoftwareConfiguration] = {}

    def err(self, code, message, loc):
        self.diagnostics.append(error(code, message, loc))

    def warn(self, code, message, loc):
        self.diagnostics.append(warning(code, message, loc))

    def run(self) -> list[Diagnostic]:
        for db in self.databases:
            if db.name in self.db_by_name:
                self.err("duplicate-definition", f"database {db.name} is already defined", db.loc)
                continue
            self.db_by_name[db.name] = db
            seen: set[str] = set()
            for feat in db.features:
                if feat.name in seen:
                    self.err(
                        "duplicate-definition",
                        f"feature {feat.name} is declared twice in database {db.name}",
                        feat.loc,
                    )
                seen.add(feat.name)
        for cfg in self.configurations:
            if cfg.name in self.cfg_by_name:
                self.err(
                    "duplicate-definition", f"configuration {cfg.name} is already defined", cfg.loc
                )
                continue
            self.cfg_by_name[cfg.name] = cfg
        for cfg in self.cfg_by_name.values():
            self.check_configuration(cfg)
        return self.diagnostics

    def check_configuration(self, cfg: SoftwareConfiguration) -> None:
        db = self.db_by_name.get(cfg.database)
        if db is None:
            self.err("unknown-database", f"database {cfg.database} is not loaded", cfg.loc)
        db_features = set(db.feature_names) if db is not None else None

        features: set[str] = set()
        for section in cfg.sections:
            if isinstance(section, FeaturesSection):
                for i, name in enumerate(section.names):
                    loc = section.name_locs[i] if i < len(section.name_locs) else section.loc
                    if name in features:
                        self.err("duplicate-definition", f"feature {name} listed twice", loc)
                    elif db_features is not None and name not in db_features:
                        self.err(
                            "unknown-feature",
                            f"feature {name} is not declared in database {cfg.database}",
                            loc,
                        )
                    features.add(name)

        events: set[str] = set()
        for section in cfg.sections:
            if isinstance(section, EventsSection):
                for i, name in enumerate(section.names):
                    loc = section.name_locs[i] if i < len(section.name_locs) else section.loc
                    if name == CREATION_EVENT:
                        self.err("reserved-event", "creation is a reserved event name", loc)
                    elif name in events:
                        self.err("duplicate-definition", f"event {name} listed twice", loc)
                    events.add(name)

        programs: set[str] = set()
        for section in cfg.sections:
            if isinstance(section, (GAProg, Behavior, GAProc, MetamorphosisProgram)):
                if section.name in programs:
                    self.err(
                        "duplicate-definition",
                        f"{section.name} is already defined in configuration {cfg.name}",
                        section.loc,
                    )
                programs.add(section.name)

        self.check_relations(cfg, features)
        for prog in cfg.gaprogs:
            self.check_gaprog(prog, features)
        for beh in cfg.behaviors:
            self.check_behavior(beh, features)
        for proc in cfg.gaprocs:
            self.check_gaproc(cfg, proc, events)
        for meta in cfg.metamorphoses:
            self.check_metamorphosis(cfg, meta)

    def check_relations(self, cfg, features):
        seen: set[tuple] = set()
        for rel in cfg.relations:
            for name in (rel.trigger, rel.target):
                if name not in features:
                    self.err(
                        "unresolved-feature",
                        f"relation refers to {name}, which is not a feature of {cfg.name}",
                        rel.loc,
                    )
            if rel.mixed_mode:
                self.err("mixed-mode-relation", f"mixed-mode relation: {rel}", rel.loc)
            if rel.trigger == rel.target:
                self.err("self-relation", f"relation relates {rel.trigger} to itself", rel.loc)
            if rel.key in seen:
                self.err("duplicate-relation", f"duplicate relation: {rel}", rel.loc)
            seen.add(rel.key)

    def check_gaprog(self, prog: GAProg, features):
        enabled: set[str] = set()
        for clause in prog.clauses:
            if not clause.features:
                self.err("empty-clause", f"{clause.mode.value} clause lists no feature", clause.loc)
            for name, loc in clause.located():
                if name not in features:
                    self.err(
                        "unresolved-feature", f"GAProg {prog.name} refers to unknown feature {name}", loc
                    )
                if clause.mode is Mode.ENABLE:
                    enabled.add(name)
        reported: set[str] = set()
        for clause in prog.clauses:
            if clause.mode is not Mode.DISABLE:
                continue
            for name, loc in clause.located():
                if name in enabled and name not in reported:
                    reported.add(name)
                    self.err("seed-conflict", f"seed conflict: {name}", loc)

    def check_behavior(self, beh: Behavior, features):
        if not beh.edges:
            self.err("empty-behavior", f"behavior {beh.name} has no edge", beh.loc)
        for edge in beh.edges:
            for name in (edge.source, edge.target):
                if name not in features:
                    self.err(
                        "unresolved-feature",
                        f"behavior {beh.name} refers to unknown feature {name}",
                        edge.loc,
                    )
            for guard in edge.guards:
                for cmp in comparisons(guard):
                    if cmp.ordering and not isinstance(cmp.value, int):
                        self.err(
                            "ordering-on-string",
                            f"ordering comparison {cmp.op} needs an integer literal",
                            edge.loc,
                        )

    def check_gaproc(self, cfg, proc: GAProc, events):
        if not any(c.event == CREATION_EVENT for c in proc.clauses):
            self.err("missing-creation-clause", f"GAProc {proc.name} has no creation clause", proc.loc)
        family = configuration_family(cfg, self.cfg_by_name)
        seen: set[str] = set()
        for clause in proc.clauses:
            if clause.event in seen:
                self.err(
                    "duplicate-event",
                    f"GAProc {proc.name} handles event {clause.event} twice",
                    clause.loc,
                )
            seen.add(clause.event)
            if clause.event != CREATION_EVENT and clause.event not in events:
                self.warn(
                    "undeclared-event",
                    f"event {clause.event} is not among the expected events of {cfg.name}",
                    clause.loc,
                )
            kinds = classify_clause(clause, family)
            if not kinds:
                self.err(
                    "unresolved-target",
                    f"{clause.target} is neither a GAProg nor a metamorphosis program",
                    clause.loc,
                )
                continue
            if len(kinds) > 1:
                self.err(
                    "ambiguous-target",
                    f"{clause.target} names both a GAProg and a metamorphosis program",
                    clause.loc,
                )
                continue
            if clause.event == CREATION_EVENT and cfg.gaprog(clause.target) is None:
                self.err(
                    "unresolved-target",
                    f"creation clause must name a GAProg of {cfg.name}",
                    clause.loc,
                )
                continue
            if clause.behavior is not None:
                self.check_clause_behavior(clause, family, kinds.pop())

    def check_clause_behavior(self, clause, family, kind):
        landing = []
        for c in family:
            if kind == "state" and c.gaprog(clause.target) is not None:
                landing.append(c)
            elif kind == "metamorphosis":
                meta = c.metamorphosis(clause.target)
                if meta is not None and meta.target_configuration in self.cfg_by_name:
                    landing.append(self.cfg_by_name[meta.target_configuration])
        for c in landing:
            if c.behavior(clause.behavior) is None:
                self.err(
                    "unresolved-behavior",
                    f"behavior {clause.behavior} is not defined in {c.name}",
                    clause.loc,
                )
                return

    def check_metamorphosis(self, cfg, meta: MetamorphosisProgram):
        if cfg.gaprog(meta.from_state) is None:
            self.err(
                "unresolved-state", f"{meta.from_state} is not a GAProg of {cfg.name}", meta.loc
            )
        if meta.target_configuration == cfg.name:
            self.err(
                "self-metamorphosis",
                f"metamorphosis program {meta.name} targets its own configuration",
                meta.loc,
            )
            return
        target = self.cfg_by_name.get(meta.target_configuration)
        if target is None:
            self.err(
                "missing-configuration",
                f"configuration {meta.target_configuration} is not loaded",
                meta.loc,
            )
        elif target.gaprog(meta.to_state) is None:
            self.err(
                "unresolved-state",
                f"{meta.to_state} is not a GAProg of {target.name}",
                meta.loc,
            )


def validate_model(
    databases: Iterable[SoftwareDatabase], configurations: Iterable[SoftwareConfiguration]
) -> list[Diagnostic]:
    """Check every model invariant; an empty list means the model is well formed."""
    return _Checker(databases, configurations).run()

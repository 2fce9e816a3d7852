"""Recursive-descent parser for ``.gaf`` units.

The parser stops at the first syntax error.  Comments directly preceding a
database, configuration, section or statement are kept on that node so the
printer can put them back.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..diagnostics import DiagnosticError, SourceLocation, error
from ..model import (
    Behavior,
    Comparison,
    Condition,
    Conjunction,
    Disjunction,
    Edge,
    EventsSection,
    FeatureDecl,
    FeatureKind,
    FeaturesSection,
    GAClause,
    GAProc,
    GAProg,
    Item,
    MetamorphosisProgram,
    Mode,
    Negation,
    ProcClause,
    Relation,
    RelationsSection,
    Section,
    SoftwareConfiguration,
    SoftwareDatabase,
    TransitionKind,
    Verb,
)
from .lexer import COMMENT, EOF, IDENT, INTEGER, PUNCT, STRING, Token, tokenize


@dataclass(frozen=True)
class SourceUnit:
    path: str = field(compare=False)
    text: str = field(compare=False, repr=False)
    items: tuple[Item, ...]

    @property
    def databases(self) -> tuple[SoftwareDatabase, ...]:
        return tuple(i for i in self.items if isinstance(i, SoftwareDatabase))

    @property
    def configurations(self) -> tuple[SoftwareConfiguration, ...]:
        return tuple(i for i in self.items if isinstance(i, SoftwareConfiguration))


class _SyntaxError(Exception):
    def __init__(self, message: str, loc: SourceLocation):
        super().__init__(message)
        self.loc = loc


SECTION_KEYWORDS = (
    "Features",
    "Events",
    "Relations",
    "GAProg",
    "Behavior",
    "GAProc",
    "Metamorphosis_Program",
)


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens: list[Token] = []
        self.comments: list[tuple[str, ...]] = []
        pending: list[str] = []
        for tok in tokens:
            if tok.kind == COMMENT:
                pending.append(tok.value)
                continue
            self.tokens.append(tok)
            self.comments.append(tuple(pending))
            pending = []
        self.pos = 0

    # -- token helpers -----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def leading_comments(self) -> tuple[str, ...]:
        return self.comments[self.pos]

    def at(self, text: str) -> bool:
        return self.tok.kind in (IDENT, PUNCT) and self.tok.text == text

    def fail(self, expected: str):
        raise _SyntaxError(f"expected {expected}, found {self.tok}", self.tok.loc)

    def advance(self) -> Token:
        tok = self.tok
        if tok.kind != EOF:
            self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        return self.advance()

    def ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != IDENT:
            self.fail(what)
        return self.advance()

    def ident_list(self) -> tuple[tuple[str, ...], tuple[SourceLocation, ...]]:
        first = self.ident("feature name")
        names, locs = [first.value], [first.loc]
        while self.at(","):
            self.advance()
            tok = self.ident("identifier after ','")
            names.append(tok.value)
            locs.append(tok.loc)
        return tuple(names), tuple(locs)

    # -- items -------------------------------------------------------------

    def unit(self) -> tuple[Item, ...]:
        items = []
        while self.tok.kind != EOF:
            if self.at("Database"):
                items.append(self.database())
            elif self.at("Configuration"):
                items.append(self.configuration())
            else:
                self.fail("'Database' or 'Configuration'")
        return tuple(items)

    def database(self) -> SoftwareDatabase:
        comments, start = self.leading_comments(), self.expect("Database")
        name = self.ident("database name").value
        self.expect("{")
        features = []
        while not self.at("}"):
            features.append(self.feature_decl())
        self.expect("}")
        return SoftwareDatabase(name, tuple(features), comments, start.loc)

    def feature_decl(self) -> FeatureDecl:
        comments, start = self.leading_comments(), self.expect("Feature")
        name = self.ident("feature name").value
        self.expect(":")
        kind_tok = self.ident("feature kind")
        try:
            kind = FeatureKind(kind_tok.value)
        except ValueError:
            raise _SyntaxError(
                f"expected one of state, data, method, adapter, found {kind_tok}", kind_tok.loc
            ) from None
        self.expect(";")
        return FeatureDecl(name, kind, comments, start.loc)

    def configuration(self) -> SoftwareConfiguration:
        comments, start = self.leading_comments(), self.expect("Configuration")
        name = self.ident("configuration name").value
        self.expect("on")
        database = self.ident("database name").value
        self.expect("{")
        sections = []
        while not self.at("}"):
            sections.append(self.section())
        self.expect("}")
        return SoftwareConfiguration(name, database, tuple(sections), comments, start.loc)

    def section(self) -> Section:
        word = self.tok.text if self.tok.kind == IDENT else None
        handler = {
            "Features": self.features_section,
            "Events": self.events_section,
            "Relations": self.relations_section,
            "GAProg": self.gaprog,
            "Behavior": self.behavior,
            "GAProc": self.gaproc,
            "Metamorphosis_Program": self.metaprog,
        }.get(word)
        if handler is None:
            self.fail("a section (" + ", ".join(SECTION_KEYWORDS) + ") or '}'")
        return handler()

    # -- sections ----------------------------------------------------------

    def features_section(self) -> FeaturesSection:
        comments, start = self.leading_comments(), self.expect("Features")
        self.expect("{")
        names, locs = self.ident_list()
        self.expect(";")
        self.expect("}")
        return FeaturesSection(names, comments, start.loc, locs)

    def events_section(self) -> EventsSection:
        comments, start = self.leading_comments(), self.expect("Events")
        self.expect("{")
        names, locs = self.ident_list()
        self.expect(";")
        self.expect("}")
        return EventsSection(names, comments, start.loc, locs)

    def relations_section(self) -> RelationsSection:
        comments, start = self.leading_comments(), self.expect("Relations")
        self.expect("{")
        relations = []
        while not self.at("}"):
            relations.append(self.relation())
        self.expect("}")
        return RelationsSection(tuple(relations), comments, start.loc)

    def mode(self) -> Mode:
        if self.at("Enable"):
            self.advance()
            return Mode.ENABLE
        if self.at("Disable"):
            self.advance()
            return Mode.DISABLE
        self.fail("'Enable' or 'Disable'")

    def relation(self) -> Relation:
        comments, loc = self.leading_comments(), self.tok.loc
        trigger_mode = self.mode()
        self.expect("(")
        trigger = self.ident("feature name").value
        self.expect(")")
        if self.at("Implies"):
            verb = Verb.IMPLIES
        elif self.at("Excludes"):
            verb = Verb.EXCLUDES
        else:
            self.fail("'Implies' or 'Excludes'")
        self.advance()
        target_mode = self.mode()
        self.expect("(")
        target = self.ident("feature name").value
        self.expect(")")
        self.expect(";")
        return Relation(trigger_mode, trigger, verb, target_mode, target, comments, loc)

    def gaprog(self) -> GAProg:
        comments, start = self.leading_comments(), self.expect("GAProg")
        name = self.ident("GAProg name").value
        self.expect("{")
        clauses = []
        while not self.at("}"):
            clause_comments, loc = self.leading_comments(), self.tok.loc
            mode = self.mode()
            self.expect("(")
            names, locs = self.ident_list()
            self.expect(")")
            self.expect(";")
            clauses.append(GAClause(mode, names, clause_comments, loc, locs))
        self.expect("}")
        return GAProg(name, tuple(clauses), comments, start.loc)

    def gaproc(self) -> GAProc:
        comments, start = self.leading_comments(), self.expect("GAProc")
        name = self.ident("GAProc name").value
        self.expect("{")
        clauses = [self.proc_clause()]
        while not self.at("}"):
            clauses.append(self.proc_clause())
        self.expect("}")
        return GAProc(name, tuple(clauses), comments, start.loc)

    def proc_clause(self) -> ProcClause:
        comments, start = self.leading_comments(), self.expect("(")
        self.expect("event")
        self.expect("=")
        event = self.ident("event name").value
        self.expect(")")
        self.expect(":")
        target = self.ident("GAProg or metamorphosis program name").value
        behavior = None
        if self.at(","):
            self.advance()
            behavior = self.ident("behavior name").value
        self.expect(";")
        return ProcClause(event, target, behavior, comments, start.loc)

    def behavior(self) -> Behavior:
        comments, start = self.leading_comments(), self.expect("Behavior")
        name = self.ident("behavior name").value
        self.expect("{")
        edges = [self.edge()]
        while not self.at("}"):
            edges.append(self.edge())
        self.expect("}")
        return Behavior(name, tuple(edges), comments, start.loc)

    def edge(self) -> Edge:
        comments, loc = self.leading_comments(), self.tok.loc
        source = self.ident("feature name").value
        self.expect("-")
        guards = []
        while self.at("("):
            self.advance()
            guards.append(self.condition())
            self.expect(")")
        target = self.ident("feature name or '('").value
        self.expect(";")
        return Edge(source, tuple(guards), target, comments, loc)

    def condition(self) -> Condition:
        operands = [self.conjunction()]
        while self.at("or"):
            self.advance()
            operands.append(self.conjunction())
        return operands[0] if len(operands) == 1 else Disjunction(tuple(operands))

    def conjunction(self) -> Condition:
        operands = [self.negation()]
        while self.at("and"):
            self.advance()
            operands.append(self.negation())
        return operands[0] if len(operands) == 1 else Conjunction(tuple(operands))

    def negation(self) -> Condition:
        if self.at("not"):
            self.advance()
            return Negation(self.atom())
        return self.atom()

    def atom(self) -> Condition:
        if self.at("("):
            self.advance()
            cond = self.condition()
            self.expect(")")
            return cond
        self.expect("out")
        if self.tok.kind != PUNCT or self.tok.text not in Comparison.OPERATORS:
            self.fail("a comparison operator")
        op = self.advance().text
        if self.tok.kind not in (INTEGER, STRING):
            self.fail("an integer or string literal")
        return Comparison(op, self.advance().value)

    def metaprog(self) -> MetamorphosisProgram:
        comments, start = self.leading_comments(), self.expect("Metamorphosis_Program")
        name = self.ident("metamorphosis program name").value
        self.expect("{")
        for word in ("Metamorphose", "to", "Configuration"):
            self.expect(word)
        target = self.ident("configuration name").value
        self.expect(";")
        for word in ("At", "the", "Adaptation", "State"):
            self.expect(word)
        from_state = self.ident("GAProg name").value
        for word in ("to", "the", "Adaptation", "State"):
            self.expect(word)
        to_state = self.ident("GAProg name").value
        self.expect(";")
        for word in ("Information", "transition", "ensured", "by"):
            self.expect(word)
        if self.at("function"):
            kind = TransitionKind.FUNCTION
        elif self.at("procedure"):
            kind = TransitionKind.PROCEDURE
        else:
            self.fail("'function' or 'procedure'")
        self.advance()
        fn = self.ident("transition function name").value
        self.expect(";")
        self.expect("}")
        return MetamorphosisProgram(name, target, from_state, to_state, fn, kind, comments, start.loc)


def parse_unit(text: str, path: str = "<string>") -> SourceUnit:
    """Parse one source text.  Raises :class:`DiagnosticError` on any error."""
    tokens, diagnostics = tokenize(text, path)
    if diagnostics:
        raise DiagnosticError(diagnostics)
    parser = Parser(tokens)
    try:
        items = parser.unit()
    except _SyntaxError as exc:
        raise DiagnosticError([error("syntax-error", str(exc), exc.loc)]) from None
    return SourceUnit(path, text, items)

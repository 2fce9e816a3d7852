"""Event scripts: one command per line, ``#`` comment lines.

::

    create <instance> <database> <configuration> <gaproc>
    event <name>
    behave
    invoke <feature> [<integer>|"<string>"]
    store <key> = <integer>|"<string>"
    dump
"""

from __future__ import annotations

from dataclasses import dataclass

from ..coherence import CoherenceError
from ..diagnostics import DiagnosticError, SourceLocation, error
from ..dsl.lexer import EOF, IDENT, INTEGER, PUNCT, STRING, tokenize
from ..model import SoftwareInstance
from .engine import Failed, Runtime, RuntimeFailure

SCRIPT_VERBS = ("create", "event", "behave", "invoke", "store", "dump")
REPL_VERBS = SCRIPT_VERBS + ("state", "quit")


@dataclass(frozen=True)
class Command:
    verb: str
    args: tuple
    line: int = 0

    def __str__(self) -> str:
        return " ".join([self.verb, *map(str, self.args)])


def _syntax(message: str, loc: SourceLocation):
    return DiagnosticError([error("script-syntax", message, loc)])


def parse_command(text: str, path: str = "<script>", lineno: int = 1, verbs=SCRIPT_VERBS) -> Command | None:
    """Parse one line; ``None`` for blank and comment lines."""
    stripped = text.strip()
    if not stripped or stripped.startswith("#"):
        return None
    toks, diags = tokenize(text, path)
    if diags:
        d = diags[0]
        raise _syntax(d.message, SourceLocation(path, lineno, d.location.column))
    toks = [t for t in toks if t.kind != EOF]
    loc = SourceLocation(path, lineno, toks[0].loc.column)
    head = toks[0]
    if head.kind != IDENT or head.value not in verbs:
        raise _syntax(f"unknown command {head.text!r}", loc)
    rest = toks[1:]
    kinds = [t.kind for t in rest]
    verb = head.value

    def bad(usage: str):
        return _syntax(f"usage: {usage}", loc)

    if verb == "create":
        if kinds != [IDENT] * 4:
            raise bad("create <instance> <database> <configuration> <gaproc>")
        return Command(verb, tuple(t.value for t in rest), lineno)
    if verb == "event":
        if kinds != [IDENT]:
            raise bad("event <name>")
        return Command(verb, (rest[0].value,), lineno)
    if verb in ("behave", "dump", "state", "quit"):
        if rest:
            raise bad(verb)
        return Command(verb, (), lineno)
    if verb == "invoke":
        if kinds == [IDENT]:
            return Command(verb, (rest[0].value, None), lineno)
        if len(rest) == 2 and kinds[0] == IDENT and kinds[1] in (INTEGER, STRING):
            return Command(verb, (rest[0].value, rest[1].value), lineno)
        raise bad('invoke <feature> [<integer>|"<string>"]')
    # store
    if (
        len(rest) == 3
        and kinds[0] == IDENT
        and kinds[1] == PUNCT
        and rest[1].text == "="
        and kinds[2] in (INTEGER, STRING)
    ):
        return Command(verb, (rest[0].value, rest[2].value), lineno)
    raise bad('store <key> = <integer>|"<string>"')


def parse_script(text: str, path: str = "<script>") -> list[Command]:
    commands = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        cmd = parse_command(line, path, lineno)
        if cmd is not None:
            commands.append(cmd)
    return commands


class Session:
    """Holds the single scenario instance and executes commands against it."""

    def __init__(self, runtime: Runtime):
        self.runtime = runtime
        self.instance: SoftwareInstance | None = None

    @property
    def trace(self):
        return self.runtime.trace

    def execute(self, cmd: Command) -> bool:
        """Run ``cmd``; False when it failed (an ERROR record was written)."""
        try:
            return self._execute(cmd)
        except (RuntimeFailure, CoherenceError) as exc:
            self.trace.error(exc.code, exc.detail)
            return False

    def _execute(self, cmd: Command) -> bool:
        rt = self.runtime
        if cmd.verb == "create":
            if self.instance is not None:
                raise RuntimeFailure("instance-exists", self.instance.id)
            instance_id, database, configuration, gaproc = cmd.args
            self.instance = rt.create_instance(database, configuration, gaproc, instance_id)
            return True
        if cmd.verb == "quit":
            return True
        if self.instance is None:
            raise RuntimeFailure("no-instance", f"{cmd.verb} before create")
        if cmd.verb == "event":
            return not isinstance(rt.dispatch_event(self.instance, cmd.args[0]), Failed)
        if cmd.verb == "behave":
            rt.execute_behavior(self.instance)
        elif cmd.verb == "invoke":
            rt.invoke_feature(self.instance, *cmd.args)
        elif cmd.verb == "store":
            key, value = cmd.args
            self.instance.store[key] = value
        elif cmd.verb in ("dump", "state"):
            rt.snapshot(self.instance)
        else:  # pragma: no cover - parse_command only yields known verbs
            raise RuntimeFailure("unknown-command", cmd.verb)
        return True


def run_script(runtime: Runtime, commands: list[Command]) -> int:
    """Execute ``commands`` in order; stop at the first failure.  Returns 0 or 1."""
    session = Session(runtime)
    for cmd in commands:
        if not session.execute(cmd):
            return 1
    return 0

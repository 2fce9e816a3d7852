"""Feature handlers and transition functions.

Built-in list operations work on the ``items`` sequence of an instance
store, so the List corpus runs without host code.  Every other feature
falls back to a stub handler when stub mode is on.
"""

from __future__ import annotations

import copy
from typing import Any, Callable, Mapping, MutableMapping, Optional

Value = Any  # int | str | list
Handler = Callable[[MutableMapping[str, Value], Optional[Value]], Value]
TransitionFn = Callable[[Mapping[str, Value], MutableMapping[str, Value]], Optional[str]]

ITEMS = "items"
CURSOR = "cursor"


class FeatureFailure(Exception):
    """A handler could not complete (empty sequence, missing input...)."""


class UnboundFeature(LookupError):
    pass


def _items(store: MutableMapping[str, Value]) -> list:
    items = store.setdefault(ITEMS, [])
    if not isinstance(items, list):
        raise FeatureFailure(f"store key {ITEMS} does not hold a sequence")
    return items


def _need(value: Value | None, feature: str) -> Value:
    if value is None:
        raise FeatureFailure(f"{feature} needs an input value")
    return value


def put_at_end(store, value=None):
    _items(store).append(_need(value, "PutAtEnd"))
    return "ok"


def put_at_beg(store, value=None):
    _items(store).insert(0, _need(value, "PutAtBeg"))
    return "ok"


def get_from_beg(store, value=None):
    items = _items(store)
    if not items:
        raise FeatureFailure("GetFromBeg on an empty sequence")
    return items.pop(0)


def get_from_end(store, value=None):
    items = _items(store)
    if not items:
        raise FeatureFailure("GetFromEnd on an empty sequence")
    return items.pop()


def empty(store, value=None):
    return 1 if not _items(store) else 0


def _cursor(store) -> int:
    pos = store.get(CURSOR, 0)
    if not isinstance(pos, int):
        raise FeatureFailure(f"store key {CURSOR} must be an integer")
    return pos


def insert_at(store, value=None):
    """Insert the input at the position held by the ``cursor`` store key."""
    items = _items(store)
    pos = _cursor(store)
    if not 0 <= pos <= len(items):
        raise FeatureFailure(f"InsertAt position {pos} out of range")
    items.insert(pos, _need(value, "InsertAt"))
    return "ok"


def get_at(store, value=None):
    """Read (without removing) the element at the input index, or at ``cursor``."""
    items = _items(store)
    if value is None:
        pos = _cursor(store)
    elif isinstance(value, int):
        pos = value
    else:
        raise FeatureFailure("GetAt index must be an integer")
    if not 0 <= pos < len(items):
        raise FeatureFailure(f"GetAt index {pos} out of range")
    return items[pos]


BUILTIN_HANDLERS: dict[str, Handler] = {
    "PutAtEnd": put_at_end,
    "GetFromBeg": get_from_beg,
    "PutAtBeg": put_at_beg,
    "GetFromEnd": get_from_end,
    "Empty": empty,
    "InsertAt": insert_at,
    "GetAt": get_at,
}

STUB_OUTPUT = "ok"


def scripted(outputs: list[Value]) -> Handler:
    """Handler returning ``outputs`` in turn, repeating the last one."""
    if not outputs:
        raise ValueError("a scripted handler needs at least one output")
    calls = 0

    def handler(store, value=None):
        nonlocal calls
        out = outputs[min(calls, len(outputs) - 1)]
        calls += 1
        return copy.deepcopy(out)

    return handler


def constant(output: Value = STUB_OUTPUT) -> Handler:
    return lambda store, value=None: output


class FeatureRegistry:
    def __init__(
        self,
        bindings: Mapping[str, Handler] | None = None,
        *,
        builtins: bool = True,
        stub: bool = True,
    ):
        self.bindings: dict[str, Handler] = dict(BUILTIN_HANDLERS) if builtins else {}
        self.bindings.update(bindings or {})
        self.stub = stub

    def bind(self, feature: str, handler: Handler) -> None:
        self.bindings[feature] = handler

    def resolve(self, feature: str) -> Handler:
        handler = self.bindings.get(feature)
        if handler is not None:
            return handler
        if self.stub:
            return constant()
        raise UnboundFeature(feature)

    @classmethod
    def with_stubs(cls, stubs: Mapping[str, list[Value]]) -> "FeatureRegistry":
        return cls({name: scripted(list(outs)) for name, outs in stubs.items()})


# -- transition functions ----------------------------------------------------


def st_queue_to_dy_queue(source: Mapping[str, Value], target: MutableMapping[str, Value]) -> None:
    """Drain the static queue into the dynamic one, front first."""
    queue = {ITEMS: list(copy.deepcopy(source.get(ITEMS, [])))}
    target.setdefault(ITEMS, [])
    while not empty(queue):
        put_at_end(target, get_from_beg(queue))
    return None


def copy_all(source: Mapping[str, Value], target: MutableMapping[str, Value]) -> None:
    for key, value in source.items():
        target[key] = copy.deepcopy(value)
    return None


BUILTIN_TRANSITIONS: dict[str, TransitionFn] = {
    "StQueueToDyQueueTrans": st_queue_to_dy_queue,
    "CopyAll": copy_all,
}


class TransitionRegistry:
    def __init__(self, bindings: Mapping[str, TransitionFn] | None = None):
        self.bindings: dict[str, TransitionFn] = dict(BUILTIN_TRANSITIONS)
        self.bindings.update(bindings or {})

    def bind(self, name: str, fn: TransitionFn) -> None:
        self.bindings[name] = fn

    def get(self, name: str) -> TransitionFn | None:
        return self.bindings.get(name)


def parse_stub_file(text: str, path: str = "<stub>") -> dict[str, list[Value]]:
    """Read ``<feature> -> <literal>[, <literal>...]`` lines.  ``#`` starts a comment line."""
    from ..dsl.lexer import IDENT, INTEGER, PUNCT, STRING, tokenize
    from ..diagnostics import DiagnosticError, SourceLocation, error

    stubs: dict[str, list[Value]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, rest = raw.partition("->")
        name = name.strip()
        loc = SourceLocation(path, lineno, 1)
        if not sep or not name:
            raise DiagnosticError([error("stub-syntax", "expected '<feature> -> <literal>'", loc)])
        toks, diags = tokenize(rest, path)
        toks = [t for t in toks if t.kind != "EOF"]
        values: list[Value] = []
        expect_value = True
        for tok in toks:
            if expect_value and tok.kind in (INTEGER, STRING):
                values.append(tok.value)
            elif expect_value and tok.kind == IDENT:
                values.append(tok.value)
            elif not expect_value and tok.kind == PUNCT and tok.text == ",":
                pass
            else:
                raise DiagnosticError([error("stub-syntax", f"unexpected {tok} in stub line", loc)])
            expect_value = not expect_value
        if diags or not values or expect_value:
            raise DiagnosticError([error("stub-syntax", "expected a literal list after '->'", loc)])
        stubs[name] = values
    return stubs

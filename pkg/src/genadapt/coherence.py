"""The adaptation manager: enable/disable closure under adaptation relations.

A GAProg seeds an enabled list and a disabled list.  Relations then fire on
the *actions* taken while the lists are processed:

* ``Enable(a) Implies Enable(b)``   -- enabling a enables b
* ``Disable(a) Implies Disable(b)`` -- disabling a disables b
* ``Enable(a) Excludes Enable(b)``  -- enabling a disables b
* ``Disable(a) Excludes Disable(b)`` -- disabling a enables b

Each round drains the disabled worklist, then the enabled worklist, until
both are empty.  A feature reaching both lists is a coherence error.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .model import GAProg, Mode, Relation


@dataclass(frozen=True)
class Seed:
    mode: Mode
    clause: int | None = None

    def __str__(self) -> str:
        where = f" clause {self.clause}" if self.clause is not None else ""
        return f"seed {self.mode.value}{where}"


@dataclass(frozen=True)
class Derived:
    relation: Relation
    via: str

    def __str__(self) -> str:
        return str(self.relation)


Justification = Union[Seed, Derived]


@dataclass(frozen=True)
class Step:
    feature: str
    mode: Mode
    reason: Justification


def format_chain(chain: Sequence[Step], include_head: bool = True) -> str:
    """``b <= Enable(a) Implies Enable(b) <= a <= seed Enable clause 1``."""
    parts: list[str] = []
    for i, step in enumerate(chain):
        if i or include_head:
            parts.append(step.feature)
        parts.append(str(step.reason))
    return " <= ".join(parts)


@dataclass(frozen=True)
class Closure:
    enabled: tuple[str, ...]
    disabled: tuple[str, ...]
    derivations: Mapping[str, Justification]
    order: tuple[tuple[Mode, str], ...] = ()

    def status(self, feature: str) -> Mode | None:
        if feature in self.derivations:
            return Mode.ENABLE if feature in self.enabled else Mode.DISABLE
        return None


class CoherenceError(Exception):
    code = "coherence-conflict"

    def __init__(self, feature: str, enable_chain: tuple[Step, ...], disable_chain: tuple[Step, ...]):
        self.feature = feature
        self.enable_chain = enable_chain
        self.disable_chain = disable_chain
        super().__init__(self.detail)

    @property
    def detail(self) -> str:
        return (
            f"{self.feature} enable: {format_chain(self.enable_chain)}"
            f" ; disable: {format_chain(self.disable_chain)}"
        )


class NotInClosure(LookupError):
    code = "feature-not-in-closure"


def _ordered_union(groups: Iterable[Iterable[str]]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(f for group in groups for f in group))


def seed_lists(gaprog: GAProg) -> tuple[tuple[str, ...], tuple[str, ...]]:
    return _ordered_union(gaprog.enable_clauses), _ordered_union(gaprog.disable_clauses)


def seed_origins(gaprog: GAProg) -> dict[str, Seed]:
    """First clause (1-based) that seeds each feature."""
    origins: dict[str, Seed] = {}
    for i, clause in enumerate(gaprog.clauses, start=1):
        for name in clause.features:
            origins.setdefault(name, Seed(clause.mode, i))
    return origins


def _chain(derivations, lists, feature: str) -> tuple[Step, ...]:
    steps = []
    current = feature
    while True:
        reason = derivations[current]
        mode = Mode.ENABLE if current in lists[Mode.ENABLE] else Mode.DISABLE
        steps.append(Step(current, mode, reason))
        if isinstance(reason, Seed):
            return tuple(steps)
        current = reason.via


def _index(relations: Iterable[Relation]) -> dict[tuple[Mode, str], list[Relation]]:
    index: dict[tuple[Mode, str], list[Relation]] = {}
    for rel in relations:
        if rel.mixed_mode or rel.trigger == rel.target:
            raise ValueError(f"relation not accepted by the adaptation manager: {rel}")
        index.setdefault((rel.trigger_mode, rel.trigger), []).append(rel)
    return index


def propagate(
    enabled_seed: Sequence[str],
    disabled_seed: Sequence[str],
    relations: Iterable[Relation],
    *,
    origins: Mapping[str, Seed] | None = None,
    rng: random.Random | None = None,
) -> Closure:
    """Compute the closure of the two seed lists or raise :class:`CoherenceError`.

    With ``rng`` the next feature, the worklist it comes from and the relation
    scan order are drawn at random instead of the deterministic FIFO order.
    Membership of the result does not depend on the order.
    """
    index = _index(relations)
    origins = origins or {}
    lists: dict[Mode, dict[str, None]] = {Mode.ENABLE: {}, Mode.DISABLE: {}}
    derivations: dict[str, Justification] = {}
    pending: dict[Mode, deque[str]] = {Mode.ENABLE: deque(), Mode.DISABLE: deque()}

    def seed(name: str, mode: Mode) -> Seed:
        found = origins.get(name)
        return found if found is not None and found.mode is mode else Seed(mode)

    overlap = [f for f in enabled_seed if f in set(disabled_seed)]
    if overlap:
        f = overlap[0]
        raise CoherenceError(
            f, (Step(f, Mode.ENABLE, seed(f, Mode.ENABLE)),), (Step(f, Mode.DISABLE, seed(f, Mode.DISABLE)),)
        )

    def add(mode: Mode, name: str, reason: Justification) -> None:
        if name in lists[mode]:
            return
        if name in lists[mode.other]:
            head = Step(name, mode, reason)
            new_chain = (head,) if isinstance(reason, Seed) else (head,) + _chain(
                derivations, lists, reason.via
            )
            old_chain = _chain(derivations, lists, name)
            if mode is Mode.ENABLE:
                raise CoherenceError(name, new_chain, old_chain)
            raise CoherenceError(name, old_chain, new_chain)
        lists[mode][name] = None
        derivations[name] = reason
        pending[mode].append(name)

    for name in enabled_seed:
        add(Mode.ENABLE, name, seed(name, Mode.ENABLE))
    for name in disabled_seed:
        add(Mode.DISABLE, name, seed(name, Mode.DISABLE))

    order: list[tuple[Mode, str]] = []

    def process(mode: Mode, name: str) -> None:
        order.append((mode, name))
        rels = index.get((mode, name), ())
        if rng is not None:
            rels = list(rels)
            rng.shuffle(rels)
        for rel in rels:
            add(rel.produces, rel.target, Derived(rel, name))

    if rng is None:
        while pending[Mode.DISABLE] or pending[Mode.ENABLE]:
            for mode in (Mode.DISABLE, Mode.ENABLE):
                while pending[mode]:
                    process(mode, pending[mode].popleft())
    else:
        while pending[Mode.DISABLE] or pending[Mode.ENABLE]:
            mode = rng.choice([m for m in (Mode.DISABLE, Mode.ENABLE) if pending[m]])
            queue = pending[mode]
            i = rng.randrange(len(queue))
            name = queue[i]
            del queue[i]
            process(mode, name)

    enabled, disabled = tuple(lists[Mode.ENABLE]), tuple(lists[Mode.DISABLE])
    assert not set(enabled) & set(disabled)
    return Closure(enabled, disabled, derivations, tuple(order))


def apply_gaprog(
    state: Mapping[str, bool], gaprog: GAProg, relations: Iterable[Relation]
) -> tuple[dict[str, bool], Closure]:
    """Apply ``gaprog`` as a delta over ``state``; ``state`` itself is never modified."""
    enabled, disabled = seed_lists(gaprog)
    closure = propagate(enabled, disabled, relations, origins=seed_origins(gaprog))
    new_state = dict(state)
    for name in closure.disabled:
        if name not in new_state:
            raise ValueError(f"{name} is not a feature of this state")
        new_state[name] = False
    for name in closure.enabled:
        if name not in new_state:
            raise ValueError(f"{name} is not a feature of this state")
        new_state[name] = True
    return new_state, closure


def explain(closure: Closure, feature: str) -> tuple[Step, ...]:
    """Derivation chain from ``feature`` back to the seed clause that caused it."""
    if feature not in closure.derivations:
        raise NotInClosure(f"{feature} is not in the closure")
    lists = {Mode.ENABLE: set(closure.enabled), Mode.DISABLE: set(closure.disabled)}
    return _chain(closure.derivations, lists, feature)

"""Software-instance lifecycle: creation, event dispatch, behaviors, metamorphosis."""

from __future__ import annotations

import copy
from dataclasses import dataclass
from types import MappingProxyType
from typing import Union

from ..coherence import CoherenceError, apply_gaprog
from ..dsl.linker import ClauseKind, LinkedModel
from ..model import (
    CREATION_EVENT,
    Behavior,
    Comparison,
    Condition,
    Conjunction,
    Disjunction,
    MetamorphosisProgram,
    Negation,
    SoftwareConfiguration,
    SoftwareInstance,
)
from .registry import FeatureFailure, FeatureRegistry, TransitionRegistry, UnboundFeature
from .trace import Trace

DEFAULT_MAX_STEPS = 10_000


class RuntimeFailure(Exception):
    def __init__(self, code: str, detail: str):
        self.code = code
        self.detail = detail
        super().__init__(f"{code}: {detail}")


Failure = Union[CoherenceError, RuntimeFailure]


@dataclass(frozen=True)
class StateChanged:
    gaprog: str
    behavior: str | None


@dataclass(frozen=True)
class Metamorphosed:
    program: str
    configuration: str


@dataclass(frozen=True)
class Ignored:
    reason: str


@dataclass(frozen=True)
class Failed:
    error: Failure

    @property
    def code(self) -> str:
        return self.error.code


AdaptationOutcome = Union[StateChanged, Metamorphosed, Ignored, Failed]


def failure_detail(exc: Failure) -> str:
    return exc.detail


def evaluate(cond: Condition, out) -> bool:
    """Evaluate a guard against the previous feature's output."""
    if isinstance(cond, Comparison):
        if cond.ordering:
            if not isinstance(out, int) or not isinstance(cond.value, int):
                raise RuntimeFailure(
                    "guard-type-error", f"out {cond.op} {cond.value!r} on output {out!r}"
                )
            return {
                "<": out < cond.value,
                "<=": out <= cond.value,
                ">": out > cond.value,
                ">=": out >= cond.value,
            }[cond.op]
        same = type(out) is type(cond.value) and out == cond.value
        return same if cond.op == "==" else not same
    if isinstance(cond, Negation):
        return not evaluate(cond.operand, out)
    if isinstance(cond, Conjunction):
        return all(evaluate(c, out) for c in cond.operands)
    if isinstance(cond, Disjunction):
        return any(evaluate(c, out) for c in cond.operands)
    raise TypeError(f"not a condition: {cond!r}")


def _check_value(value, feature: str):
    if isinstance(value, bool) or not isinstance(value, (int, str, list)):
        raise RuntimeFailure("bad-output", f"{feature} returned {value!r}")
    return value


class Runtime:
    """Drives instances of a linked model and records everything in ``trace``."""

    def __init__(
        self,
        model: LinkedModel,
        features: FeatureRegistry | None = None,
        transitions: TransitionRegistry | None = None,
        trace: Trace | None = None,
        max_steps: int = DEFAULT_MAX_STEPS,
    ):
        if max_steps < 1:
            raise ValueError("max_steps must be positive")
        self.model = model
        self.features = features if features is not None else FeatureRegistry()
        self.transitions = transitions if transitions is not None else TransitionRegistry()
        self.trace = trace if trace is not None else Trace()
        self.max_steps = max_steps

    def _configuration(self, name: str) -> SoftwareConfiguration:
        cfg = self.model.configurations.get(name)
        if cfg is None:
            raise RuntimeFailure("unknown-configuration", name)
        return cfg

    # -- creation ----------------------------------------------------------

    def create_instance(
        self, database: str, configuration: str, gaproc: str, instance_id: str
    ) -> SoftwareInstance:
        cfg = self._configuration(configuration)
        if cfg.database != database:
            raise RuntimeFailure(
                "database-mismatch", f"{configuration} is defined on {cfg.database}, not {database}"
            )
        proc = cfg.gaproc(gaproc)
        if proc is None:
            raise RuntimeFailure("unknown-gaproc", f"{gaproc} is not a GAProc of {configuration}")
        clause = proc.clause_for(CREATION_EVENT)
        if clause is None:
            raise RuntimeFailure("missing-creation-clause", gaproc)
        gaprog = cfg.gaprog(clause.target)
        if gaprog is None:
            raise RuntimeFailure("target-not-in-configuration", clause.target)
        if clause.behavior is not None and cfg.behavior(clause.behavior) is None:
            raise RuntimeFailure("unknown-behavior", clause.behavior)

        initial = {f: False for f in cfg.features}
        assert not any(initial.values())
        state, closure = apply_gaprog(initial, gaprog, cfg.relations)

        instance = SoftwareInstance(
            id=instance_id,
            database=database,
            configuration=cfg.name,
            lifecycle=proc.name,
            feature_state=state,
            current_state=gaprog.name,
            active_behavior=clause.behavior,
            lifecycle_owner=cfg.name,
        )
        self.trace.create(instance_id, cfg.name, proc.name)
        self.trace.state(gaprog.name, clause.behavior)
        self.trace.actions(closure.order)
        return instance

    # -- events ------------------------------------------------------------

    def dispatch_event(self, instance: SoftwareInstance, event: str) -> AdaptationOutcome:
        self.trace.event(event)
        if event == CREATION_EVENT:
            self.trace.warn("creation-ignored", instance.id)
            return Ignored("the creation clause fires only when the instance is created")
        owner = self._configuration(instance.lifecycle_owner or instance.configuration)
        proc = owner.gaproc(instance.lifecycle)
        clause = proc.clause_for(event) if proc is not None else None
        if clause is None:
            self.trace.warn("unhandled-event", event)
            return Ignored(f"{instance.lifecycle} has no clause for {event}")

        cfg = self._configuration(instance.configuration)
        if event not in cfg.expected_events:
            self.trace.warn("unexpected-event", event)
        try:
            kind = self.model.clause_kind(owner.name, proc.name, clause)
        except KeyError:
            kind = ClauseKind.STATE if cfg.gaprog(clause.target) else ClauseKind.METAMORPHOSIS
        try:
            if kind is ClauseKind.STATE:
                return self._change_state(instance, cfg, clause.target, clause.behavior)
            program = cfg.metamorphosis(clause.target)
            if program is None:
                raise RuntimeFailure(
                    "target-not-in-configuration", f"{clause.target} is not defined in {cfg.name}"
                )
            return self._metamorphose(instance, program, clause.behavior)
        except (CoherenceError, RuntimeFailure) as exc:
            self.trace.error(exc.code, failure_detail(exc))
            return Failed(exc)

    def _change_state(self, instance, cfg, target: str, behavior: str | None) -> StateChanged:
        gaprog = cfg.gaprog(target)
        if gaprog is None:
            raise RuntimeFailure("target-not-in-configuration", f"{target} is not defined in {cfg.name}")
        if behavior is not None and cfg.behavior(behavior) is None:
            raise RuntimeFailure("unknown-behavior", f"{behavior} is not defined in {cfg.name}")
        state, closure = apply_gaprog(instance.feature_state, gaprog, cfg.relations)
        instance.feature_state = state
        instance.current_state = gaprog.name
        instance.active_behavior = behavior
        self.trace.state(gaprog.name, behavior)
        self.trace.actions(closure.order)
        return StateChanged(gaprog.name, behavior)

    # -- metamorphosis -----------------------------------------------------

    def metamorphose(
        self, instance: SoftwareInstance, program: MetamorphosisProgram, behavior: str | None = None
    ) -> AdaptationOutcome:
        try:
            return self._metamorphose(instance, program, behavior)
        except (CoherenceError, RuntimeFailure) as exc:
            self.trace.error(exc.code, failure_detail(exc))
            return Failed(exc)

    def _metamorphose(self, instance, program: MetamorphosisProgram, behavior) -> Metamorphosed:
        if instance.current_state != program.from_state:
            raise RuntimeFailure(
                "wrong-source-state",
                f"{program.name} starts from {program.from_state}, instance is in {instance.current_state}",
            )
        target = self.model.configurations.get(program.target_configuration)
        if target is None:
            raise RuntimeFailure("missing-configuration", program.target_configuration)
        fn = self.transitions.get(program.transition_fn)
        if fn is None:
            raise RuntimeFailure("unknown-transition-fn", program.transition_fn)
        gaprog = target.gaprog(program.to_state)
        if gaprog is None:
            raise RuntimeFailure("unresolved-state", f"{program.to_state} is not defined in {target.name}")
        if behavior is not None and target.behavior(behavior) is None:
            raise RuntimeFailure("unknown-behavior", f"{behavior} is not defined in {target.name}")

        fresh = {f: False for f in target.features}
        state, closure = apply_gaprog(fresh, gaprog, target.relations)
        store: dict = {}
        try:
            message = fn(MappingProxyType(copy.deepcopy(instance.store)), store)
        except FeatureFailure as exc:
            message = str(exc)
        if message:
            raise RuntimeFailure("transition-failed", f"{program.transition_fn}: {message}")

        instance.configuration = target.name
        instance.database = target.database
        instance.feature_state = state
        instance.current_state = gaprog.name
        instance.active_behavior = behavior
        instance.store = store
        self.trace.metamorphose(program.name, target.name)
        self.trace.state(gaprog.name, behavior)
        self.trace.actions(closure.order)
        return Metamorphosed(program.name, target.name)

    # -- execution ---------------------------------------------------------

    def _execute(self, instance: SoftwareInstance, feature: str, value=None):
        try:
            handler = self.features.resolve(feature)
        except UnboundFeature:
            raise RuntimeFailure("unbound-feature", feature) from None
        try:
            output = handler(instance.store, value)
        except FeatureFailure as exc:
            raise RuntimeFailure("feature-failed", f"{feature}: {exc}") from None
        output = _check_value(output, feature)
        self.trace.exec(feature, value, output)
        return output

    def invoke_feature(self, instance: SoftwareInstance, feature: str, value=None):
        if feature not in instance.feature_state:
            raise RuntimeFailure("unknown-feature", f"{feature} is not a feature of {instance.configuration}")
        if not instance.feature_state[feature]:
            raise RuntimeFailure("feature-disabled", feature)
        return self._execute(instance, feature, value)

    def active_behavior(self, instance: SoftwareInstance) -> Behavior:
        if instance.active_behavior is None:
            raise RuntimeFailure("no-active-behavior", instance.id)
        behavior = self._configuration(instance.configuration).behavior(instance.active_behavior)
        if behavior is None:
            raise RuntimeFailure("unknown-behavior", instance.active_behavior)
        return behavior

    def execute_behavior(self, instance: SoftwareInstance, max_steps: int | None = None) -> list:
        """Run the active behavior; returns the trace records it produced."""
        limit = self.max_steps if max_steps is None else max_steps
        if limit < 1:
            raise ValueError("max_steps must be positive")
        behavior = self.active_behavior(instance)
        for feature in behavior.features:
            if not instance.feature_state.get(feature, False):
                raise RuntimeFailure("behavior-feature-disabled", feature)

        mark = len(self.trace)
        current = behavior.start
        output = self._execute(instance, current)
        steps = 1
        while True:
            edge = next(
                (e for e in behavior.outgoing(current) if all(evaluate(g, output) for g in e.guards)),
                None,
            )
            if edge is None:
                break
            if steps >= limit:
                raise RuntimeFailure("step-limit-exceeded", f"{behavior.name} after {steps} steps")
            current = edge.target
            output = self._execute(instance, current)
            steps += 1
        return self.trace.records[mark:]

    def snapshot(self, instance: SoftwareInstance):
        return self.trace.snapshot(instance.enabled, instance.store)

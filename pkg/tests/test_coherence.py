import random

import pytest
from hypothesis import given, settings, strategies as st

from genadapt.coherence import (
    CoherenceError,
    Derived,
    NotInClosure,
    Seed,
    apply_gaprog,
    explain,
    format_chain,
    propagate,
    seed_lists,
)
from genadapt.model import GAClause, GAProg, Mode, Relation, Verb

from generators import random_relation_model, relation_tuples
from oracle import naive_closure

E, D = Mode.ENABLE, Mode.DISABLE


def rel(text):
    """``"Enable a Implies Enable b"`` -> Relation."""
    m1, a, verb, m2, b = text.split()
    return Relation(Mode(m1), a, Verb(verb), Mode(m2), b)


def prog(*clauses):
    return GAProg("P", tuple(GAClause(Mode(m), tuple(fs)) for m, fs in clauses))


def outcome(enabled, disabled, relations, **kw):
    try:
        c = propagate(enabled, disabled, relations, **kw)
    except CoherenceError:
        return "conflict"
    return frozenset(c.enabled), frozenset(c.disabled)


# seed_lists


def test_seed_lists_transcribes_clauses():
    assert seed_lists(prog(("Enable", "ab"), ("Disable", "c"))) == (("a", "b"), ("c",))


def test_seed_lists_empty():
    assert seed_lists(GAProg("P")) == ((), ())


def test_seed_lists_keeps_clause_order():
    assert seed_lists(prog(("Enable", "a"), ("Enable", "b"))) == (("a", "b"), ())


# propagate


def test_enable_implies_enable():
    c = propagate(["a"], [], [rel("Enable a Implies Enable b")])
    assert (c.enabled, c.disabled) == (("a", "b"), ())


def test_implied_feature_already_disabled_conflicts():
    with pytest.raises(CoherenceError) as info:
        propagate(["a"], ["b"], [rel("Enable a Implies Enable b")])
    err = info.value
    assert err.feature == "b"
    assert [s.feature for s in err.enable_chain] == ["b", "a"]
    assert [s.feature for s in err.disable_chain] == ["b"]
    assert isinstance(err.enable_chain[-1].reason, Seed)
    assert isinstance(err.disable_chain[-1].reason, Seed)


def test_disable_excludes_disable_enables_target():
    c = propagate([], ["a"], [rel("Disable a Excludes Disable b")])
    assert (c.enabled, c.disabled) == (("b",), ("a",))


def test_enable_excludes_enable_disables_target():
    c = propagate(["a"], [], [rel("Enable a Excludes Enable b")])
    assert (c.enabled, c.disabled) == (("a",), ("b",))


def test_disable_implies_disable():
    c = propagate([], ["a"], [rel("Disable a Implies Disable b"), rel("Disable b Implies Disable c")])
    assert c.disabled == ("a", "b", "c")


def test_seed_overlap_is_a_conflict():
    with pytest.raises(CoherenceError) as info:
        propagate(["a"], ["a"], [])
    assert info.value.feature == "a"


def test_disabled_worklist_drains_first():
    relations = [rel("Enable a Implies Enable x"), rel("Disable b Implies Disable y")]
    c = propagate(["a"], ["b"], relations)
    assert c.order == ((D, "b"), (D, "y"), (E, "a"), (E, "x"))


def test_relations_only_fire_on_actions():
    # enabling b does not re-trigger anything about a, which is not acted on
    c = propagate(["b"], [], [rel("Enable a Implies Enable c")])
    assert c.enabled == ("b",)


def test_mixed_relation_rejected():
    with pytest.raises(ValueError):
        propagate(["a"], [], [rel("Enable a Implies Disable b")])


def test_every_processed_feature_once():
    relations = [rel("Enable a Implies Enable b"), rel("Enable b Implies Enable a")]
    c = propagate(["a"], [], relations)
    assert c.order == ((E, "a"), (E, "b"))


# apply_gaprog


def test_empty_gaprog_keeps_state():
    state = {"a": False, "b": False}
    new, closure = apply_gaprog(state, GAProg("P"), [])
    assert new == state
    assert closure.enabled == closure.disabled == ()


def test_queue_to_stack_overrides():
    state = {"q": True, "s": False}
    new, _ = apply_gaprog(state, prog(("Enable", "s"), ("Disable", "q")), [])
    assert new == {"q": False, "s": True}
    assert state == {"q": True, "s": False}


def test_failed_application_leaves_state():
    state = {"a": False, "b": True}
    with pytest.raises(CoherenceError):
        apply_gaprog(state, prog(("Enable", "a"), ("Disable", "b")), [rel("Enable a Implies Enable b")])
    assert state == {"a": False, "b": True}


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_delta_semantics(seed):
    rng = random.Random(seed)
    features, relations, gaprog = random_relation_model(rng)
    state = {f: rng.random() < 0.5 for f in features}
    try:
        new, closure = apply_gaprog(state, gaprog, relations)
    except CoherenceError:
        return
    for f in features:
        if f in closure.enabled:
            assert new[f] is True
        elif f in closure.disabled:
            assert new[f] is False
        else:
            assert new[f] == state[f]


# explain


def test_explain_single_step():
    c = propagate(["a"], [], [rel("Enable a Implies Enable b")])
    chain = explain(c, "b")
    assert [s.feature for s in chain] == ["b", "a"]
    assert isinstance(chain[0].reason, Derived) and chain[0].reason.via == "a"
    assert chain[1].reason == Seed(E)
    assert format_chain(chain) == "b <= Enable(a) Implies Enable(b) <= a <= seed Enable"


def test_explain_seed():
    c = propagate(["a"], [], [rel("Enable a Implies Enable b")])
    assert explain(c, "a") == explain(c, "a")
    (step,) = explain(c, "a")
    assert step.reason == Seed(E)


def test_explain_unaffected_feature():
    c = propagate(["a"], [], [rel("Enable a Implies Enable b")])
    with pytest.raises(NotInClosure):
        explain(c, "z")


def test_apply_records_seed_clause_numbers():
    _, c = apply_gaprog({"a": False, "b": False}, prog(("Disable", "b"), ("Enable", "a")), [])
    assert c.derivations["a"] == Seed(E, 2)
    assert c.derivations["b"] == Seed(D, 1)


# properties


def check_soundness(closure, relations):
    en, dis = set(closure.enabled), set(closure.disabled)
    assert not en & dis
    for r in relations:
        source = en if r.trigger_mode is E else dis
        if r.trigger in source:
            dest = en if r.produces is E else dis
            assert r.target in dest, r


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_matches_oracle_and_is_sound(seed):
    features, relations, gaprog = random_relation_model(random.Random(seed))
    enabled, disabled = seed_lists(gaprog)
    expected = naive_closure(enabled, disabled, relation_tuples(relations))
    assert outcome(enabled, disabled, relations) == expected
    if expected != "conflict":
        closure = propagate(enabled, disabled, relations)
        check_soundness(closure, relations)
        assert len(closure.order) <= 2 * len(features)
        assert set(closure.derivations) == set(closure.enabled) | set(closure.disabled)
        for f in closure.derivations:
            assert isinstance(explain(closure, f)[-1].reason, Seed)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2**32), st.integers(min_value=0, max_value=2**32))
def test_order_does_not_change_membership(seed, order_seed):
    _, relations, gaprog = random_relation_model(random.Random(seed))
    enabled, disabled = seed_lists(gaprog)
    assert outcome(enabled, disabled, relations, rng=random.Random(order_seed)) == outcome(
        enabled, disabled, relations
    )


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_conflict_chains_end_in_seeds(seed):
    _, relations, gaprog = random_relation_model(random.Random(seed))
    try:
        propagate(*seed_lists(gaprog), relations)
    except CoherenceError as err:
        assert err.enable_chain != err.disable_chain
        assert isinstance(err.enable_chain[-1].reason, Seed)
        assert isinstance(err.disable_chain[-1].reason, Seed)
        assert err.enable_chain[0].mode is E and err.disable_chain[0].mode is D


def test_deterministic_including_derivations():
    _, relations, gaprog = random_relation_model(random.Random(7))
    a = propagate(*seed_lists(gaprog), relations)
    b = propagate(*seed_lists(gaprog), relations)
    assert a == b

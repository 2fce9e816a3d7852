"""Seeded random generators for models and source trees."""

import random
import string

from genadapt.model import (
    Behavior,
    Comparison,
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
    MetamorphosisProgram,
    Mode,
    Negation,
    ProcClause,
    Relation,
    RelationsSection,
    SoftwareConfiguration,
    SoftwareDatabase,
    TransitionKind,
    Verb,
)

# -- relation models ---------------------------------------------------------


def random_relation_model(rng: random.Random, max_features=8, max_relations=12):
    """Features, same-mode relations and a random GAProg over them."""
    n = rng.randint(1, max_features)
    features = [f"f{i}" for i in range(n)]
    relations = []
    seen = set()
    if n > 1:
        for _ in range(rng.randint(0, max_relations)):
            a, b = rng.sample(features, 2)
            mode = rng.choice([Mode.ENABLE, Mode.DISABLE])
            verb = rng.choice([Verb.IMPLIES, Verb.EXCLUDES])
            key = (mode, a, verb, mode, b)
            if key not in seen:
                seen.add(key)
                relations.append(Relation(mode, a, verb, mode, b))
    shuffled = features[:]
    rng.shuffle(shuffled)
    k = rng.randint(0, n)
    j = rng.randint(0, k)
    enable, disable = shuffled[:j], shuffled[j:k]
    clauses = []
    for mode, names in ((Mode.ENABLE, enable), (Mode.DISABLE, disable)):
        names = names[:]
        while names:
            cut = rng.randint(1, len(names))
            clauses.append(GAClause(mode, tuple(names[:cut])))
            names = names[cut:]
    rng.shuffle(clauses)
    return features, relations, GAProg("P", tuple(clauses))


def relation_tuples(relations):
    return [(r.trigger_mode.value, r.trigger, r.verb.value, r.target_mode.value, r.target) for r in relations]


# -- source trees ------------------------------------------------------------

KEYWORDISH = [
    "Enable", "Disable", "Implies", "Excludes", "Features", "Events", "Relations",
    "GAProg", "GAProc", "Behavior", "out", "and", "or", "not", "event", "creation",
    "to", "the", "State", "on", "Feature", "state", "data", "procedure", "Configuration",
]


def identifier(rng: random.Random) -> str:
    if rng.random() < 0.15:
        return rng.choice(KEYWORDISH)
    name = rng.choice(string.ascii_letters)
    for _ in range(rng.randint(0, 6)):
        roll = rng.random()
        if roll < 0.1:
            name += "-" + rng.choice(string.ascii_letters + string.digits)
        elif roll < 0.2:
            name += "_"
        else:
            name += rng.choice(string.ascii_letters + string.digits)
    return name


def names(rng, lo=1, hi=4):
    return tuple(identifier(rng) for _ in range(rng.randint(lo, hi)))


def comments(rng):
    if rng.random() < 0.7:
        return ()
    alphabet = string.ascii_letters + string.digits + " ./-*()\"'#"
    return tuple(
        "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 20)))
        for _ in range(rng.randint(1, 2))
    )


def literal(rng):
    if rng.random() < 0.5:
        return rng.randint(-1000, 1000)
    alphabet = string.ascii_letters + string.digits + ' _-"\\\n\t'
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 8)))


def condition(rng, depth=0):
    roll = rng.random()
    if depth >= 3 or roll < 0.45:
        return Comparison(rng.choice(Comparison.OPERATORS), literal(rng))
    if roll < 0.6:
        return Negation(condition(rng, depth + 1))
    operands = tuple(condition(rng, depth + 1) for _ in range(rng.randint(2, 3)))
    return Conjunction(operands) if roll < 0.8 else Disjunction(operands)


def section(rng):
    kind = rng.randrange(7)
    c = comments(rng)
    if kind == 0:
        return FeaturesSection(names(rng), c)
    if kind == 1:
        return EventsSection(names(rng), c)
    if kind == 2:
        return RelationsSection(
            tuple(
                Relation(
                    rng.choice(list(Mode)), identifier(rng), rng.choice(list(Verb)),
                    rng.choice(list(Mode)), identifier(rng), comments(rng),
                )
                for _ in range(rng.randint(0, 4))
            ),
            c,
        )
    if kind == 3:
        return GAProg(
            identifier(rng),
            tuple(GAClause(rng.choice(list(Mode)), names(rng), comments(rng)) for _ in range(rng.randint(0, 4))),
            c,
        )
    if kind == 4:
        edges = tuple(
            Edge(
                identifier(rng),
                tuple(condition(rng) for _ in range(rng.randint(0, 2))),
                identifier(rng),
                comments(rng),
            )
            for _ in range(rng.randint(1, 4))
        )
        return Behavior(identifier(rng), edges, c)
    if kind == 5:
        clauses = tuple(
            ProcClause(identifier(rng), identifier(rng), identifier(rng) if rng.random() < 0.6 else None, comments(rng))
            for _ in range(rng.randint(1, 4))
        )
        return GAProc(identifier(rng), clauses, c)
    return MetamorphosisProgram(
        identifier(rng), identifier(rng), identifier(rng), identifier(rng), identifier(rng),
        rng.choice(list(TransitionKind)), c,
    )


def random_items(rng: random.Random):
    items = []
    for _ in range(rng.randint(0, 3)):
        if rng.random() < 0.4:
            feats = tuple(
                FeatureDecl(identifier(rng), rng.choice(list(FeatureKind)), comments(rng))
                for _ in range(rng.randint(0, 4))
            )
            items.append(SoftwareDatabase(identifier(rng), feats, comments(rng)))
        else:
            sections = tuple(section(rng) for _ in range(rng.randint(0, 5)))
            items.append(SoftwareConfiguration(identifier(rng), identifier(rng), sections, comments(rng)))
    return tuple(items)

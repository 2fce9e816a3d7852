import pytest

from genadapt.dsl import link, parse_unit
from genadapt.diagnostics import DiagnosticError
from genadapt.model import validate_model

from conftest import LIST_SOURCES, load_model

DB = "Database D { Feature a : method; Feature b : method; Feature c : state; }\n"


def diagnose(config_body, extra=""):
    unit = parse_unit(DB + "Configuration C on D {\n" + config_body + "\n}\n" + extra, "m.gaf")
    return validate_model(unit.databases, unit.configurations)


def codes(diags, errors_only=True):
    return [d.code for d in diags if d.is_error or not errors_only]


BASE = "Features { a, b, c; }\nGAProg Init { Enable(c); }\nGAProc L { (event = creation): Init; }\n"


def test_list_corpus_is_clean(list_model):
    assert list_model.warnings == ()


def test_base_is_clean():
    assert diagnose(BASE) == []


def test_seed_conflict():
    diags = diagnose(BASE + "GAProg P { Enable(a); Disable(a); }")
    assert codes(diags) == ["seed-conflict"]
    assert diags[0].message == "seed conflict: a"
    assert (diags[0].location.line, diags[0].location.column) == (6, 31)


def test_mixed_mode_relation():
    diags = diagnose(BASE + "Relations { Enable(a) Implies Disable(b); }")
    assert codes(diags) == ["mixed-mode-relation"]


@pytest.mark.parametrize(
    "body, code",
    [
        ("Relations { Enable(a) Implies Enable(a); }", "self-relation"),
        ("Relations { Enable(a) Implies Enable(b); Enable(a) Implies Enable(b); }", "duplicate-relation"),
        ("Relations { Enable(a) Implies Enable(zz); }", "unresolved-feature"),
        ("GAProg P { Enable(zz); }", "unresolved-feature"),
        ("Behavior B { a - zz; }", "unresolved-feature"),
        ('Behavior B { a - (out < "x") b; }', "ordering-on-string"),
        ("GAProg Init { Enable(a); }", "duplicate-definition"),
        ("Behavior Init { a - b; }", "duplicate-definition"),
        ("Features { a; }", "duplicate-definition"),
        ("Events { e, e; }", "duplicate-definition"),
        ("Events { creation; }", "reserved-event"),
        ("GAProc Q { (event = e): Init; }", "missing-creation-clause"),
        ("GAProc Q { (event = creation): Init; (event = creation): Init; }", "duplicate-event"),
        ("GAProc Q { (event = creation): Nowhere; }", "unresolved-target"),
        ("GAProc Q { (event = creation): Init, Nobody; }", "unresolved-behavior"),
        ("Metamorphosis_Program M { Metamorphose to Configuration Far; "
         "At the Adaptation State Init to the Adaptation State X; "
         "Information transition ensured by function CopyAll; }", "missing-configuration"),
        ("Metamorphosis_Program M { Metamorphose to Configuration C; "
         "At the Adaptation State Init to the Adaptation State Init; "
         "Information transition ensured by function CopyAll; }", "self-metamorphosis"),
        ("Metamorphosis_Program M { Metamorphose to Configuration C2; "
         "At the Adaptation State Nope to the Adaptation State Init2; "
         "Information transition ensured by function CopyAll; }", "unresolved-state"),
    ],
)
def test_invariant_violations(body, code):
    other = "Configuration C2 on D { Features { a; } GAProg Init2 { Enable(a); } }\n"
    assert codes(diagnose(BASE + body, other)) == [code]


def test_feature_not_in_database():
    diags = diagnose("Features { a, zz; }\nGAProg Init { Enable(a); }\nGAProc L { (event = creation): Init; }")
    assert codes(diags) == ["unknown-feature"]
    assert diags[0].location.column == 15


def test_unknown_database():
    unit = parse_unit("Configuration C on Nope { }")
    assert codes(validate_model(unit.databases, unit.configurations)) == ["unknown-database"]


def test_duplicate_items_across_units():
    a = parse_unit(DB, "a.gaf")
    b = parse_unit(DB, "b.gaf")
    with pytest.raises(DiagnosticError) as info:
        link([a, b])
    (diag,) = info.value.diagnostics
    assert diag.code == "duplicate-definition"
    assert diag.location.file == "b.gaf"


def test_undeclared_event_is_a_warning():
    diags = diagnose(BASE + "GAProc Q { (event = creation): Init; (event = poke): Init; }")
    assert codes(diags) == []
    assert codes(diags, errors_only=False) == ["undeclared-event"]


def test_cross_configuration_targets_resolve():
    # eventj's DyStack lives in Dynamic_List, reached through StQueueToDyQueue
    model = load_model(LIST_SOURCES)
    assert model.clause_kinds[("Static_List", "StaticToDynamic", "eventj")].value == "state"


def test_metamorphosis_target_must_be_loaded():
    static_only = [p for p in LIST_SOURCES if "dynamic" not in p]
    from genadapt.dsl import load_files

    units, _ = load_files(static_only)
    with pytest.raises(DiagnosticError) as info:
        link(units)
    found = {d.code for d in info.value.diagnostics}
    assert "missing-configuration" in found
    assert "unresolved-target" in found


def test_validate_is_deterministic():
    body = BASE + "Relations { Enable(a) Implies Disable(b); Enable(zz) Implies Enable(a); }"
    assert diagnose(body) == diagnose(body)


def test_error_locations_inside_file():
    diags = diagnose(BASE + "GAProg P { Enable(a, zz); Disable(a); }")
    for d in diags:
        assert d.location.file == "m.gaf"
        assert 1 <= d.location.line <= 7

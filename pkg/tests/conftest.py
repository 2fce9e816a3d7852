from pathlib import Path

import pytest

from genadapt.dsl import link, load_files

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
LIST_DIR = CORPUS / "list"
FIXTURES = CORPUS / "fixtures"
LIST_SOURCES = sorted(str(p) for p in LIST_DIR.glob("*.gaf"))
ALL_SOURCES = sorted(str(p) for p in CORPUS.rglob("*.gaf"))


def load_model(paths):
    units, diagnostics = load_files(paths)
    assert not diagnostics, diagnostics
    return link(units)


@pytest.fixture(scope="session")
def list_model():
    return load_model(LIST_SOURCES)


@pytest.fixture(scope="session")
def conflict_model():
    return load_model([str(FIXTURES / "conflict.gaf")])


@pytest.fixture(scope="session")
def behavior_model():
    return load_model([str(FIXTURES / "behavior_disabled.gaf")])

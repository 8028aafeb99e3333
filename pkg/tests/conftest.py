import json
from pathlib import Path

import pytest

from sato4.corpus import Calibration, load_corpus

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture(scope="session")
def corpus(corpus_dir):
    return load_corpus(corpus_dir)


@pytest.fixture(scope="session")
def by_name(corpus):
    return {entry.name: entry for entry in corpus}


@pytest.fixture(scope="session")
def shipped_calibration(corpus_dir) -> Calibration:
    payload = json.loads((corpus_dir / "calibration.json").read_text())
    return Calibration.from_json(payload)

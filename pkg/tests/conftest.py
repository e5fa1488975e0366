import json
import random

import pytest

import presets
from automata import Alphabet
from config import load_config


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    monkeypatch.delenv("ENVIRONMENT", raising=False)
    monkeypatch.delenv("CAYLEY_CONFIG", raising=False)
    monkeypatch.delenv("CAYLEY_OUTPUT_DIR", raising=False)
    load_config.cache_clear()
    yield
    load_config.cache_clear()


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def ab():
    return Alphabet(("a", "b"))


@pytest.fixture(scope="session")
def z1():
    return presets.transducer("z1")


@pytest.fixture(scope="session")
def z2():
    return presets.transducer("z2")


@pytest.fixture(scope="session")
def f2():
    return presets.transducer("f2")


@pytest.fixture(scope="session")
def lamplighter():
    return presets.transducer("lamplighter")


@pytest.fixture
def write_config(tmp_path):
    """Write a config file whose development section overrides the given keys."""

    def write(**development):
        section = {
            "SEED": 7,
            "SAMPLES": 50,
            "THREADS": 1,
            "OUTPUT_DIR": str(tmp_path / "out"),
            "LOG_LEVEL": "WARNING",
            "BUDGETS": {"MAX_WORDS": 100000, "MAX_CANDIDATES": 100000, "LENGTH_CAP": 10},
            "MQTT": {"ENABLED": False},
        }
        section.update(development)
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"development": section, "production": dict(section, THREADS=3)}))
        return path

    return write

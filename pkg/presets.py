"""Built-in presentations paired with their oracle groups and codecs."""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from errors import ConfigError
from oracles import g2_group, lamplighter_S1_generators, oracle_free, oracle_wreath_Z2_over, oracle_zm
from presentations import (
    free_decode,
    free_encode,
    free_group_presentation,
    lamplighter_decode,
    lamplighter_encode,
    lamplighter_presentation,
    lamplighter_s1_presentation,
    zm_decode,
    zm_encode,
    zm_presentation,
)
from transducer import from_presentation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    build: Callable
    oracle: Callable
    encode: Callable
    decode: Callable


def _zm(m):
    return Preset(
        f"z{m}",
        f"ℤ^{m} with the standard generators and inverses" if m > 1 else "ℤ with generators ±1",
        lambda: zm_presentation(m),
        lambda: oracle_zm(m),
        zm_encode,
        lambda word: zm_decode(word, m),
    )


def _free(m):
    return Preset(
        f"f{m}",
        f"free group of rank {m} on reduced words",
        lambda: free_group_presentation(m),
        lambda: oracle_free(m),
        lambda element: free_encode(element, m),
        lambda word: free_decode(word, m),
    )


PRESETS = {
    p.name: p
    for p in [
        _zm(1),
        _zm(2),
        _zm(3),
        _free(2),
        _free(3),
        Preset(
            "lamplighter",
            "ℤ₂ ≀ ℤ with generators t, t⁻¹, h",
            lamplighter_presentation,
            lambda: oracle_wreath_Z2_over(oracle_zm(1)),
            lamplighter_encode,
            lamplighter_decode,
        ),
        Preset(
            "lamplighter-s1",
            "ℤ₂ ≀ ℤ with S₁ = {t, th, ht, hth} and inverses",
            lamplighter_s1_presentation,
            lambda: lamplighter_S1_generators(oracle_wreath_Z2_over(oracle_zm(1))),
            lamplighter_encode,
            lamplighter_decode,
        ),
    ]
}

DRIFT_GENERATORS = ("standard", "S1", "prop3")


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


@lru_cache(maxsize=None)
def presentation(name):
    logger.info("building presentation %s", name)
    return get_preset(name).build()


@lru_cache(maxsize=None)
def transducer(name):
    return from_presentation(presentation(name), check=False)


def oracle(name):
    return get_preset(name).oracle()


def drift_group(name, generators="standard"):
    """Oracle group for random walks: a preset or g2, under the named generating set."""
    if generators not in DRIFT_GENERATORS:
        raise ConfigError(f"unknown generating set {generators!r}")
    if name == "g2":
        if generators not in ("standard", "prop3"):
            raise ConfigError("g2 is walked with the Q ∪ Q⁻¹ generators only")
        return g2_group()
    group = oracle(name)
    if generators == "standard":
        return group
    if generators == "S1" and name in ("lamplighter", "lamplighter-s1"):
        return lamplighter_S1_generators(group)
    raise ConfigError(f"generating set {generators!r} is not available for {name!r}")

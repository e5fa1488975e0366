"""Class-𝒯 transducers, represented by the edge relations of a presentation.

A transducer translates an input word of the domain into one output word
per edge label, or rejects it.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

from automata import fan_out, length_difference_bound, unique_image
from errors import DomainError
from presentations import require_valid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TranslationResult:
    input: tuple
    outputs: tuple
    accepted: bool

    def as_dict(self, alphabet):
        return {
            "input": alphabet.render(self.input),
            "outputs": [alphabet.render(w) for w in self.outputs],
            "accepted": self.accepted,
        }


@dataclass(frozen=True)
class ClassTTransducer:
    presentation: object
    base: tuple
    overrun: int

    @property
    def labels(self):
        return self.presentation.labels

    @property
    def alphabet(self):
        return self.presentation.alphabet

    def accepts(self, word):
        return self.presentation.contains(word)

    @cached_property
    def joint(self):
        return fan_out(self.presentation.edges, self.presentation.domain)


def from_presentation(presentation, base=None, *, check=True):
    """Package a presentation with its base word and overrun constant.

    With ``check`` the presentation is validated first and an
    ``InvalidPresentationError`` carries the report when it fails.
    """
    if check:
        require_valid(presentation)
    base = presentation.base if base is None else tuple(base)
    if not presentation.contains(base):
        raise DomainError(f"base word {base} is not in the domain", word=base)
    c = max(length_difference_bound(edge) for edge in presentation.edges)
    logger.debug("transducer %s: %d labels, overrun %d", presentation.title, presentation.labels, c)
    return ClassTTransducer(presentation, base, c)


def translate(transducer, word):
    word = tuple(word)
    if not transducer.accepts(word):
        return TranslationResult(word, (), False)
    outputs = tuple(unique_image(edge, word) for edge in transducer.presentation.edges)
    return TranslationResult(word, outputs, True)


def joint_automaton(transducer):
    """(k+1)-tape automaton accepting x ⊗ y₁ ⊗ … ⊗ y_k exactly when T translates x into (y₁, …, y_k)."""
    return transducer.joint


def overrun(transducer):
    return transducer.overrun

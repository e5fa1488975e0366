import pytest

import presets
from automata import accepts, enumerate_words
from errors import DomainError, InvalidPresentationError
from presentations import GraphPresentation
from transducer import from_presentation, joint_automaton, overrun, translate


def test_translate_empty_word(z1):
    result = translate(z1, ())
    assert result.accepted
    assert result.outputs == (("p",), ("n",))
    assert result.as_dict(z1.alphabet) == {"input": "", "outputs": ["p", "n"], "accepted": True}


def test_translate_rejects_words_outside_the_domain(z1, f2):
    assert not translate(z1, ("p", "n")).accepted
    assert translate(z1, ("p", "n")).outputs == ()
    assert not translate(f2, ("s1", "S1")).accepted


def test_translate_free_group(f2):
    result = translate(f2, ("s1", "S2"))
    assert result.outputs == (("s1", "S2", "s1"), ("s1",), ("s1", "S2", "S1"), ("s1", "S2", "S2"))


@pytest.mark.parametrize("name", ["z1", "z2", "f2", "lamplighter"])
def test_overrun_is_one(name):
    assert overrun(presets.transducer(name)) == 1


def test_from_presentation_checks(z1):
    p = z1.presentation
    with pytest.raises(DomainError):
        from_presentation(p, base=("p", "n"))
    broken = GraphPresentation(p.domain, (p.edges[0], p.edges[0]), (1, 0), p.base)
    with pytest.raises(InvalidPresentationError):
        from_presentation(broken)
    assert from_presentation(broken, check=False).labels == 2


@pytest.mark.parametrize("name,length", [("z1", 6), ("f2", 4), ("lamplighter", 3)])
def test_joint_automaton_agrees_with_translate(name, length, rng):
    t = presets.transducer(name)
    joint = joint_automaton(t)
    assert joint.tapes == t.labels + 1
    domain_words = [w for (w,) in enumerate_words(t.presentation.domain, length)]
    symbols = t.alphabet.symbols
    for x in domain_words:
        outputs = translate(t, x).outputs
        assert accepts(joint, (x, *outputs))
        wrong = list(outputs)
        wrong[0] = wrong[0] + (rng.choice(symbols),)
        assert not accepts(joint, (x, *wrong))
    for _ in range(40):
        x = tuple(rng.choice(symbols) for _ in range(length + 2))
        result = translate(t, x)
        if result.accepted:
            assert accepts(joint, (x, *result.outputs))
        else:
            assert not accepts(t.presentation.domain, (x,))


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(presets.PRESETS))
def test_joint_round_trip_on_every_preset(name, rng):
    t = presets.transducer(name)
    joint = joint_automaton(t)
    for (x,) in enumerate_words(t.presentation.domain, 6):
        assert accepts(joint, (x, *translate(t, x).outputs))
    symbols = t.alphabet.symbols
    for _ in range(1000):
        x = tuple(rng.choice(symbols) for _ in range(rng.randint(7, 14)))
        result = translate(t, x)
        if result.accepted:
            assert accepts(joint, (x, *result.outputs))

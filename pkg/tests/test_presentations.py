import pytest

from automata import accepts, enumerate_words
from errors import DomainError, InvalidPresentationError, PresentationError
from oracles import WreathElement, oracle_free, oracle_wreath_Z2_over, oracle_zm
from presentations import (
    GraphPresentation,
    distances,
    fit_length_bounds,
    free_decode,
    free_encode,
    generator_products,
    isomorphic_to_oracle,
    lamplighter_decode,
    lamplighter_encode,
    require_valid,
    same_edges,
    validate,
    word_of,
    zm_decode,
    zm_encode,
)
from presets import PRESETS, get_preset, oracle, presentation


@pytest.mark.parametrize("name", ["z1", "z2", "z3", "f2", "f3", "lamplighter"])
def test_builtin_presentations_validate(name):
    report = validate(presentation(name))
    assert report.ok, report.failures()


@pytest.mark.slow
def test_lamplighter_s1_validates():
    assert validate(presentation("lamplighter-s1")).ok


def test_broken_inverse_pairing_is_reported():
    p = presentation("z1")
    broken = GraphPresentation(p.domain, (p.edges[0], p.edges[0]), (1, 0), p.base, ("a", "b"), "broken")
    report = validate(broken)
    assert not report.ok
    assert [c.name for c in report.failures()] == ["inverse[a~b]"]
    with pytest.raises(InvalidPresentationError) as caught:
        require_valid(broken)
    assert caught.value.report is not None


def test_inconsistent_presentations_are_rejected():
    f2 = presentation("f2")
    z1 = presentation("z1")
    assert z1.domain.alphabet != f2.domain.alphabet
    with pytest.raises(PresentationError):
        GraphPresentation(z1.domain, (f2.edges[0],))
    with pytest.raises(PresentationError):
        GraphPresentation(z1.domain, z1.edges, (0, 0))


def test_codecs_round_trip_on_samples():
    assert zm_encode((2, -1)) == ("p1", "p1", "n2")
    assert zm_decode(("p1", "p1", "n2"), 2) == (2, -1)
    assert free_encode((1, -2, -2), 2) == ("s1", "S2", "S2")
    assert free_decode(("s1", "S2", "S2"), 2) == (1, -2, -2)
    element = WreathElement((((-2,), 1), ((0,), 1)), (1,))
    word = lamplighter_encode(element)
    assert word == ("10.", "01+")
    assert lamplighter_decode(word) == element
    assert lamplighter_encode(WreathElement((), (0,))) == ("00+",)
    assert lamplighter_encode(WreathElement((), (-1,))) == ("00-",)


def test_word_of_follows_edges():
    z1 = presentation("z1")
    assert word_of(z1, (), [0, 0, 1]) == ("p",)
    assert word_of(z1, (), [1, 1, 1]) == ("n", "n", "n")
    with pytest.raises(DomainError):
        word_of(z1, ("p", "n"), [0])
    with pytest.raises(PresentationError):
        word_of(z1, (), [5])
    lamplighter = presentation("lamplighter")
    hth = word_of(lamplighter, lamplighter.base, [2, 0, 2])
    assert lamplighter_decode(hth) == WreathElement((((0,), 1), ((1,), 1)), (1,))


def test_lamplighter_moves_shrink_the_word():
    p = presentation("lamplighter")
    assert word_of(p, p.base, [0]) == ("00.", "00+")
    assert word_of(p, p.base, [0, 1]) == ("00+",)
    assert word_of(p, p.base, [1]) == ("00-",)
    assert word_of(p, p.base, [1, 1]) == ("00.", "00-")
    assert word_of(p, p.base, [1, 1, 0, 0]) == ("00+",)


@pytest.mark.parametrize("name", ["z1", "z2", "f2", "lamplighter"])
def test_isomorphic_to_oracle(name):
    result = isomorphic_to_oracle(presentation(name), oracle(name), 8)
    assert result.ok
    assert result.conflict is None
    encode = get_preset(name).encode
    for word, element in result.mapping.items():
        assert encode(element) == word


def test_isomorphism_conflict_is_reported():
    p = presentation("z2")
    crossed = GraphPresentation(p.domain, (p.edges[0], p.edges[0], p.edges[2], p.edges[2]), None, p.base)
    result = isomorphic_to_oracle(crossed, oracle_zm(2), 4)
    assert not result.ok
    word, label, image, element = result.conflict
    assert (word, label, image, element) == ((), 1, ("p1",), (0, 1))


def test_isomorphism_needs_matching_generator_counts():
    with pytest.raises(PresentationError):
        isomorphic_to_oracle(presentation("z1"), oracle_free(2), 3)


@pytest.mark.slow
def test_lamplighter_s1_presentation_matches_its_oracle():
    p = presentation("lamplighter-s1")
    group = oracle("lamplighter-s1")
    assert p.names == group.names
    assert isomorphic_to_oracle(p, group, 3).ok


def test_distances_and_length_bounds():
    p = presentation("lamplighter")
    depth = distances(p, 6)
    group = oracle_wreath_Z2_over(oracle_zm(1))
    for word, d in depth.items():
        assert group.length_rule(lamplighter_decode(word)) == d
    bounds = fit_length_bounds(p, 6)
    assert bounds.lower_slope > 0
    assert all(bounds.holds(d, len(w)) for w, d in depth.items())
    assert all(len(w) <= d + 1 for w, d in depth.items())


def test_same_edges_and_domain_membership():
    assert same_edges(presentation("z1"), presentation("z1"))
    assert not same_edges(presentation("z1"), presentation("z2"))
    domain = presentation("lamplighter").domain
    assert accepts(domain, (("00+",),))
    assert not accepts(domain, (("00+", "00."),))
    assert not accepts(domain, (("00+", "10-"),))
    assert all(len(w[0]) >= 1 for w in enumerate_words(domain, 2))


def test_presets_table():
    assert set(PRESETS) == {"z1", "z2", "z3", "f2", "f3", "lamplighter", "lamplighter-s1"}


@pytest.mark.parametrize("name", ["z1", "f2", "lamplighter"])
def test_single_label_products_keep_the_edges(name):
    p = presentation(name)
    q = generator_products(p, [(j,) for j in range(p.labels)], inverse=p.inverse)
    assert q.names == p.names
    assert same_edges(p, q)


def test_product_of_opposite_labels_is_the_identity():
    p = presentation("z1")
    q = generator_products(p, [(0, 1), (0, 0)])
    assert q.names == ("+e1-e1", "+e1+e1")
    for w in [(), ("p",), ("n", "n")]:
        assert word_of(q, w, [0]) == w
    assert word_of(q, ("n",), [1]) == ("p",)
    with pytest.raises(PresentationError):
        generator_products(p, [()])

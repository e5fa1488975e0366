import pytest

from errors import UnknownLengthError, UnsupportedGroupError, WrongOracleError
from oracles import (
    CyclicGroup,
    WreathElement,
    ball,
    bfs_length,
    g2_group,
    lamplighter_S1_generators,
    oracle_free,
    oracle_wreath_Z2_over,
    oracle_wreath_with_Z,
    oracle_zm,
    tape_counts,
    travel,
    word_length,
)


@pytest.fixture
def lamplighter():
    return oracle_wreath_Z2_over(oracle_zm(1))


def depths(group, radius):
    order, spheres = ball(group, radius)
    result, start = {}, 0
    for r, size in enumerate(spheres):
        for g in order[start : start + size]:
            result[g] = r
        start += size
    return result


def test_zm_arithmetic():
    z2 = oracle_zm(2)
    assert z2.names == ("+e1", "+e2", "-e1", "-e2")
    assert z2.evaluate([0, 0, 3, 2]) == (1, -1)
    assert z2.endpoint([0, 1, 1]) == (1, 2)
    assert z2.endpoint([]) == (0, 0)
    assert z2.range_size([0, 2, 0, 2]) == 2
    assert word_length(z2, (3, -4)) == 7


def test_free_group_arithmetic():
    f2 = oracle_free(2)
    assert f2.mul((1, 2), (-2, 1)) == (1, 1)
    assert f2.inv((1, -2)) == (2, -1)
    assert f2.endpoint([0, 1, 3, 2]) == ()
    assert f2.range_size([0, 2, 0, 2]) == 2
    assert word_length(f2, (1, -2, 1)) == 3


def test_lamplighter_arithmetic(lamplighter):
    assert lamplighter.names == ("t", "T", "h")
    assert lamplighter.inverse == (1, 0, 2)
    hth = lamplighter.evaluate([2, 0, 2])
    assert hth == WreathElement((((0,), 1), ((1,), 1)), (1,))
    assert lamplighter.mul(hth, lamplighter.inv(hth)) == lamplighter.identity
    assert lamplighter.endpoint([2, 0, 2]) == hth
    assert lamplighter.range_size([0, 0, 2, 1]) == 3
    assert word_length(lamplighter, hth) == 3


def test_travel():
    assert travel([], 0) == 0
    assert travel([3], 0) == 6
    assert travel([-2, 3], 3) == 2 + 5
    assert travel([-2, 3], -2) == 3 + 5


def test_lamplighter_length_matches_bfs(lamplighter):
    for g, d in depths(lamplighter, 6).items():
        assert word_length(lamplighter, g) == d
    g = lamplighter.evaluate([2, 0, 0, 2, 1])
    assert bfs_length(lamplighter, g) == word_length(lamplighter, g)


def test_s1_generators(lamplighter):
    s1 = lamplighter_S1_generators(lamplighter)
    assert s1.names == ("t", "th", "ht", "hth", "T", "hT", "Th", "hTh")
    assert s1.symmetric
    for j, i in enumerate(s1.inverse):
        assert s1.mul(s1.generators[j], s1.generators[i]) == s1.identity
    assert len(set(s1.generators)) == 8
    assert lamplighter.length_method == "closed"
    for g, d in depths(s1, 5).items():
        assert word_length(s1, g) == d
    with pytest.raises(WrongOracleError):
        lamplighter_S1_generators(oracle_zm(1))


@pytest.mark.slow
def test_closed_lengths_on_radius_8_balls(lamplighter):
    for g, d in depths(lamplighter, 8).items():
        assert word_length(lamplighter, g) == d
    s1 = lamplighter_S1_generators(lamplighter)
    for g, d in depths(s1, 8).items():
        assert word_length(s1, g) == d


def test_bfs_length_cap(lamplighter):
    far = lamplighter.evaluate([0] * 9)
    with pytest.raises(UnknownLengthError):
        bfs_length(lamplighter, far, cap=4)
    assert bfs_length(oracle_zm(2), (2, -3)) == 5


def test_ball_sizes():
    assert sum(ball(oracle_zm(1), 5)[1]) == 11
    assert ball(oracle_free(2), 2)[1] == [1, 4, 12]
    assert sum(ball(oracle_zm(2), 3)[1]) == 2 * 9 + 2 * 3 + 1


def test_wreath_product_limits():
    with pytest.raises(UnsupportedGroupError):
        oracle_wreath_Z2_over(oracle_zm(3))
    with pytest.raises(UnsupportedGroupError):
        oracle_wreath_Z2_over(oracle_free(2))
    z2_over_z2 = oracle_wreath_Z2_over(oracle_zm(2))
    assert len(z2_over_z2.generators) == 5
    assert z2_over_z2.length_rule is None
    assert z2_over_z2.range_size([0, 1, 2, 3]) == 4


def test_cyclic_lamps_over_z():
    group = oracle_wreath_with_Z(CyclicGroup(3))
    assert group.names == ("t", "T", "h", "H")
    g = group.evaluate([2, 2, 0, 3])
    assert g.support == (((0,), 2), ((1,), 2))
    assert group.symmetric


def test_g2_generating_set():
    g2 = g2_group()
    assert len(g2.generators) == 162
    assert len(set(g2.generators)) == 162
    assert g2.symmetric
    assert g2.length_method == "estimate"
    assert word_length(g2, g2.identity) == 0
    assert all(word_length(g2, g) >= 1 for g in g2.generators)
    assert tape_counts(3) == [8, 162, 2 * 163**2]

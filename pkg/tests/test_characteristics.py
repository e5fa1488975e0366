from fractions import Fraction

import pytest

import presets
from characteristics import (
    ImageGraph,
    avg_length_exact,
    avg_length_mc,
    ball_family,
    boundary,
    folner_exact,
    folner_ratio,
    folner_upper,
    growth,
    interval_family,
    rectangle_family,
)
from errors import BudgetExceededError, DomainError, EmptySetError, FolnerNotFoundError
from oracles import ball, word_length
from walks import simple_walk_mean_abs


def test_growth_of_z1(z1):
    record = growth(z1, 20)
    assert record.values == [2 * n + 1 for n in range(21)]
    assert record.frontier_sizes == [n + 1 for n in range(21)]
    assert record.ball(1) == [(), ("p",), ("n",)]


def test_growth_of_z2(z2):
    assert growth(z2, 8).values == [2 * n * n + 2 * n + 1 for n in range(9)]


def test_growth_of_f2(f2):
    assert growth(f2, 6).values == [2 * 3**n - 1 for n in range(7)]


def test_growth_of_lamplighter_matches_oracle_balls(lamplighter):
    _, spheres = ball(presets.oracle("lamplighter"), 7)
    expected = [sum(spheres[: n + 1]) for n in range(8)]
    assert growth(lamplighter, 7).values == expected


def test_growth_rejects_base_outside_domain(z1):
    with pytest.raises(DomainError):
        growth(z1, 3, base=("p", "n"))


def test_growth_stops_at_word_budget(f2):
    assert growth(f2, 2, max_words=17).values == [1, 5, 17]
    with pytest.raises(BudgetExceededError) as caught:
        growth(f2, 10, max_words=20)
    assert caught.value.partial.values == [1, 5, 17]
    assert caught.value.partial.frontier_sizes == [1, 4, 13]
    with pytest.raises(BudgetExceededError):
        list(ball_family(f2, 10, max_words=20))


@pytest.mark.slow
def test_growth_acceptance_scale(z1, z2, f2, lamplighter):
    assert growth(z1, 50).values[50] == 101
    assert growth(z2, 30).values == [2 * n * n + 2 * n + 1 for n in range(31)]
    assert growth(f2, 12).values == [2 * 3**n - 1 for n in range(13)]
    _, spheres = ball(presets.oracle("lamplighter"), 12)
    assert growth(lamplighter, 12).values == [sum(spheres[: n + 1]) for n in range(13)]


def test_boundary_of_a_ball(z1):
    words = growth(z1, 5).ball(5)
    assert len(words) == 11
    assert boundary(z1, words) == [("p",) * 5, ("n",) * 5]
    assert folner_ratio(z1, words) == Fraction(2, 11)
    with pytest.raises(EmptySetError):
        folner_ratio(z1, [])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_folner_exact_for_z1(z1, n):
    report = folner_exact(z1, Fraction(1, n), size_budget=12, radius_budget=15)
    assert report.size == 2 * n + 1
    assert report.exact
    assert report.ratio < Fraction(1, n)


def test_folner_exact_budget(z1):
    with pytest.raises(FolnerNotFoundError):
        folner_exact(z1, Fraction(1, 4), size_budget=8, radius_budget=15)
    with pytest.raises(BudgetExceededError):
        folner_exact(z1, Fraction(1, 4), size_budget=12, radius_budget=15, max_candidates=20)


def test_folner_upper_with_intervals(z1):
    report = folner_upper(z1, interval_family(z1, 30), Fraction(1, 5), name="intervals")
    assert report.size == 11
    assert report.ratio == Fraction(2, 11)
    assert not report.exact


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_intervals_match_exact_search(z1, n):
    upper = folner_upper(z1, interval_family(z1, 30), Fraction(1, n))
    assert upper.size == folner_exact(z1, Fraction(1, n), 12, 15).size


def test_free_group_has_no_small_folner_sets(f2):
    with pytest.raises(FolnerNotFoundError):
        folner_upper(f2, ball_family(f2, 6), Fraction(1, 10), name="balls")


@pytest.mark.slow
def test_free_group_balls_to_radius_8(f2):
    with pytest.raises(FolnerNotFoundError):
        folner_upper(f2, ball_family(f2, 8), Fraction(1, 10), name="balls")


def test_lamplighter_rectangles(lamplighter):
    report = folner_upper(lamplighter, rectangle_family(lamplighter, 6), Fraction(1, 2), name="rectangles")
    assert report.size == 160
    assert report.ratio == Fraction(64, 160)


def test_avg_length_exact_for_z1(z1):
    records = avg_length_exact(z1, 12)
    assert [r.value for r in records[:4]] == [0, 1, 1, Fraction(3, 2)]
    for r in records:
        assert r.value == simple_walk_mean_abs(r.n)
        assert r.total_mass == 2**r.n


@pytest.mark.slow
def test_avg_length_exact_for_z1_to_24(z1):
    for r in avg_length_exact(z1, 24):
        assert r.value == simple_walk_mean_abs(r.n)


def test_avg_length_exact_for_f2(f2):
    records = avg_length_exact(f2, 3)
    assert records[1].value == 1
    assert records[2].value == Fraction(3, 2)
    assert records[3].value == Fraction(36 * 3 + 28 * 1, 64)


def mean_walk_lengths(group, n_max):
    """Exact mean of ℓ_S over all label sequences of each length up to n_max."""
    k = len(group.generators)
    counts = {group.identity: 1}
    means = [Fraction(0)]
    for n in range(1, n_max + 1):
        nxt = {}
        for g, c in counts.items():
            for j in range(k):
                y = group.step(g, j)
                nxt[y] = nxt.get(y, 0) + c
        counts = nxt
        means.append(Fraction(sum(c * word_length(group, g) for g, c in counts.items()), k**n))
    return means


@pytest.mark.parametrize("name, n_max", [("z1", 10), ("f2", 6), ("lamplighter", 8)])
def test_avg_length_is_bounded_by_walk_length(name, n_max):
    t = presets.transducer(name)
    means = mean_walk_lengths(presets.oracle(name), n_max)
    for r in avg_length_exact(t, n_max):
        assert r.value <= t.overrun * means[r.n] + len(t.base)


def test_avg_length_budget_keeps_partial_rows(z1):
    with pytest.raises(BudgetExceededError) as caught:
        avg_length_exact(z1, 5, max_words=2)
    assert [r.n for r in caught.value.partial] == [0, 1]


def test_avg_length_mc_is_reproducible(z1):
    first = avg_length_mc(z1, 8, 400, seed=3)
    assert avg_length_mc(z1, 8, 400, seed=3) == first
    assert avg_length_mc(z1, 8, 400, seed=3, threads=4).mean == first.mean
    assert avg_length_mc(z1, 8, 400, seed=4).mean != first.mean


def test_avg_length_mc_close_to_exact(z1):
    estimate = avg_length_mc(z1, 8, 4000, seed=1)
    assert abs(estimate.mean - float(simple_walk_mean_abs(8))) <= 4 * estimate.stderr


@pytest.mark.slow
@pytest.mark.parametrize("n", [8, 12])
def test_avg_length_mc_acceptance(z1, n):
    estimate = avg_length_mc(z1, n, 100_000, seed=1, threads=4)
    assert abs(estimate.mean - float(simple_walk_mean_abs(n))) <= 4 * estimate.stderr


def test_image_graph_memoizes(z1):
    graph = ImageGraph(z1)
    assert graph.follow((), [0, 0, 1]) == ("p",)
    assert () in graph.outputs_of
    with pytest.raises(DomainError):
        graph.outputs(("p", "n"))

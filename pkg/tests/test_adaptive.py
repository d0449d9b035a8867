import pytest

from spreadgame import (ad_infect, generate_random_tree, generate_regular_tree,
                        jordan_centers, regular_tree_counts)

from conftest import path_network
from oracles import adj_of, oracle_ball


def test_path_example():
    net = path_network(10)
    out = ad_infect(net, 0, t=4, d_s=2, seed=1)
    assert out.center == 2
    assert out.infected == frozenset(range(5))


def test_regular_tree_ball_count():
    for r in (3, 4):
        net = generate_regular_tree(r, 6)
        want = (r * (r - 1) ** 3 - 2) // (r - 2)
        assert want == regular_tree_counts(r, 3, 0)[0]
        for d_s in (1, 2, 3):
            out = ad_infect(net, 0, t=6, d_s=d_s, seed=7)
            assert out.size == want


def test_infected_is_ball_around_center():
    net = generate_random_tree(500, {2, 3}, seed=3)
    out = ad_infect(net, 0, t=6, d_s=2, seed=9)
    assert set(out.infected) == oracle_ball(adj_of(net), out.center, 3)


def test_deterministic_center():
    net = generate_random_tree(500, {2, 3}, seed=3)
    first = ad_infect(net, 0, t=6, d_s=3, seed=42).center
    assert all(ad_infect(net, 0, t=6, d_s=3, seed=42).center == first
               for _ in range(3))


def test_full_ball_center_is_jordan_center():
    net = generate_regular_tree(3, 8)
    out = ad_infect(net, 0, t=6, d_s=2, seed=5)
    assert jordan_centers(net, out.infected) == {out.center}
    assert out.achieved_margin == 2


def test_validation():
    net = path_network(10)
    with pytest.raises(ValueError):
        ad_infect(net, 0, t=5, d_s=1, seed=0)  # odd horizon
    with pytest.raises(ValueError):
        ad_infect(net, 0, t=4, d_s=3, seed=0)  # margin beyond half horizon
    with pytest.raises(ValueError):
        ad_infect(net, 9, t=4, d_s=0, seed=0)  # margin below one
    net2 = path_network(2)
    with pytest.raises(ValueError):
        ad_infect(net2, 0, t=4, d_s=2, seed=0)  # no node that far out

import io
import random
from fractions import Fraction

import pytest

from spreadgame import (InfectionStrategy, RateBounds, bfs_spanning_tree,
                        generate_random_tree, horizon_hops, max_rate_strategy,
                        path_infection_time, read_strategy_csv, simulate,
                        write_outcome_csv, write_strategy_csv)

from conftest import path_network
from oracles import adj_of, oracle_ball, oracle_horizon


def unit_bounds():
    return RateBounds([1])


def test_rate_bounds_validation():
    with pytest.raises(ValueError):
        RateBounds([])
    with pytest.raises(ValueError):
        RateBounds([1, 0])
    with pytest.raises(ValueError):
        RateBounds([Fraction(-1, 2)])


def test_rate_bounds_tail_extension():
    b = RateBounds([1, Fraction(1, 2)])
    assert b.at(0) == 1
    assert b.at(1) == b.at(7) == Fraction(1, 2)
    assert b.time_to_depth(3) == 1 + 2 + 2


def test_horizon_unit_rates():
    assert horizon_hops(unit_bounds(), Fraction(7, 2)) == 3
    assert horizon_hops(unit_bounds(), Fraction(7, 2)) == oracle_horizon([1], Fraction(7, 2))


def test_horizon_mixed_rates():
    b = RateBounds([1, Fraction(1, 2)])
    assert horizon_hops(b, 3) == 2
    assert oracle_horizon([1, Fraction(1, 2)], 3) == 2


def test_horizon_zero_time():
    assert horizon_hops(unit_bounds(), 0) == 0


def test_horizon_negative_time():
    with pytest.raises(ValueError):
        horizon_hops(unit_bounds(), -1)


def test_horizon_random_vs_oracle():
    rng = random.Random(1)
    for _ in range(50):
        bounds_list = [Fraction(rng.randint(1, 4), rng.randint(1, 4))
                       for _ in range(rng.randint(1, 4))]
        t = Fraction(rng.randint(0, 40), rng.randint(1, 5))
        assert horizon_hops(RateBounds(bounds_list), t) == oracle_horizon(bounds_list, t)


def test_path_time_unit_rates(path5):
    tree = bfs_spanning_tree(path5, 0)
    strat = max_rate_strategy(tree, unit_bounds())
    assert path_infection_time(strat, 3) == 3


def test_path_time_mixed_rates(path5):
    tree = bfs_spanning_tree(path5, 0)
    b = RateBounds([1, Fraction(1, 2)])
    strat = max_rate_strategy(tree, b)
    assert path_infection_time(strat, 2) == 3  # 1 + 2


def test_path_time_source_is_zero(path5):
    tree = bfs_spanning_tree(path5, 0)
    strat = max_rate_strategy(tree, unit_bounds())
    assert path_infection_time(strat, 0) == 0


def test_path_time_uninfectable_edge(path5):
    tree = bfs_spanning_tree(path5, 0)
    strat = max_rate_strategy(tree, unit_bounds())
    strat.rates[(1, 2)] = Fraction(0)
    assert path_infection_time(strat, 2) is None
    assert path_infection_time(strat, 1) == 1


def test_path_time_unknown_node(path5):
    tree = bfs_spanning_tree(path5, 0)
    strat = max_rate_strategy(tree, unit_bounds())
    with pytest.raises(ValueError):
        path_infection_time(strat, 99)


def test_strategy_requires_all_edges(path5):
    tree = bfs_spanning_tree(path5, 0)
    with pytest.raises(ValueError):
        InfectionStrategy(net=path5, tree=tree, source=0,
                          rates={(0, 1): Fraction(1)})


def test_simulate_path_prefix(path5):
    tree = bfs_spanning_tree(path5, 0)
    out = simulate(max_rate_strategy(tree, unit_bounds()), 2, unit_bounds())
    assert out.infected == frozenset({0, 1, 2})
    assert out.infection_edges == ((0, 1), (1, 2))


def test_simulate_max_rate_matches_hop_ball():
    for seed in range(15):
        net = generate_random_tree(60, {2, 3}, seed)
        tree = bfs_spanning_tree(net, 0)
        b = RateBounds([1, Fraction(1, 2), Fraction(1, 3)])
        t = Fraction(seed % 5 + 1)
        out = simulate(max_rate_strategy(tree, b), t, b)
        radius = horizon_hops(b, t)
        assert set(out.infected) == oracle_ball(adj_of(net), 0, radius)


def test_simulate_single_path_margin_is_half_horizon():
    # one full-rate path of length 4, every other edge disabled
    net = generate_random_tree(200, {2, 3}, seed=3)
    tree = bfs_spanning_tree(net, 0)
    target = next(v for v in tree.order if tree.depth[v] == 4)
    chain = set()
    v = target
    while v != 0:
        chain.add((tree.parent[v], v))
        v = tree.parent[v]
    rates = {e: (Fraction(1) if e in chain else Fraction(0)) for e in tree.edges()}
    strat = InfectionStrategy(net=net, tree=tree, source=0, rates=rates)
    out = simulate(strat, 4, unit_bounds())
    assert len(out.infected) == 5
    assert out.safety_margin == 2  # half the traveled hops


def test_simulate_monotone_in_time():
    net = generate_random_tree(80, {2, 3}, seed=6)
    tree = bfs_spanning_tree(net, 0)
    strat = max_rate_strategy(tree, unit_bounds())
    prev = frozenset()
    for t in (0, 1, Fraction(3, 2), 2, 3, 5):
        cur = simulate(strat, t, unit_bounds()).infected
        assert prev <= cur
        prev = cur


def test_simulate_exact_boundary_inclusion(path5):
    tree = bfs_spanning_tree(path5, 0)
    b = RateBounds([Fraction(1, 3)])
    strat = max_rate_strategy(tree, b)
    out = simulate(strat, 6, b)
    # node 2 infected at exactly t=6
    assert out.times[2] == 6
    assert 2 in out.infected and 3 not in out.infected


def test_simulate_rejects_rate_above_bound(path5):
    tree = bfs_spanning_tree(path5, 0)
    strat = max_rate_strategy(tree, unit_bounds())
    strat.rates[(0, 1)] = Fraction(2)
    with pytest.raises(ValueError):
        simulate(strat, 1, unit_bounds())


def test_infection_graph_connected_and_contains_source():
    for seed in range(10):
        net = generate_random_tree(70, {2, 3}, seed)
        tree = bfs_spanning_tree(net, 0)
        out = simulate(max_rate_strategy(tree, unit_bounds()), 3, unit_bounds())
        nodes = {0}
        for (u, v) in out.infection_edges:
            assert u in nodes  # parent already seen: connected, rooted at source
            nodes.add(v)
        assert nodes == set(out.infected)


def test_strategy_csv_roundtrip(path5):
    tree = bfs_spanning_tree(path5, 0)
    strat = max_rate_strategy(tree, RateBounds([1, Fraction(2, 3)]))
    strat.rates[(2, 3)] = Fraction(0)
    buf = io.StringIO()
    write_strategy_csv(strat, buf)
    again = read_strategy_csv(tree, io.StringIO(buf.getvalue()))
    assert again.rates == strat.rates


def test_outcome_csv_rows(path5):
    tree = bfs_spanning_tree(path5, 0)
    strat = max_rate_strategy(tree, unit_bounds())
    strat.rates[(2, 3)] = Fraction(0)
    out = simulate(strat, 10, unit_bounds())
    buf = io.StringIO()
    write_outcome_csv(out, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "node,time_num,time_den,infected"
    assert lines[1] == "0,0,1,1"
    assert lines[4] == "3,,,0"  # beyond the disabled edge

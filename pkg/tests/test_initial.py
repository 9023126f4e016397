import random
from itertools import permutations
from statistics import median

import pytest

from steinermap import (
    Hypergraph,
    InfeasibleBalance,
    SteinerTable,
    TargetGraph,
    evaluate_connectivity_metric,
    evaluate_steiner_metric,
    greedy_opmp,
    initial_kway_partition,
    initial_mapping,
    is_balanced,
    kl_refine,
)
from steinermap.initial import OpmpInstance, map_partition
from steinermap.instances import random_hypergraph, random_target
from steinermap.oracle import brute_force_mapping


def two_cliques(size):
    nets = [[a, b] for a in range(size) for b in range(a + 1, size)]
    nets += [[a + size, b + size] for a, b in nets]
    nets.append([0, size])
    return Hypergraph(nets, 2 * size)


def test_partition_of_n_equals_k_is_a_bijection():
    hg = random_hypergraph(6, 8, random.Random(1))
    parts = initial_kway_partition(hg, 6, 0.03, rng=random.Random(0))
    assert sorted(parts) == list(range(6))


def test_partition_cuts_only_the_bridge():
    hg = two_cliques(4)
    hits = 0
    for seed in range(20):
        parts = initial_kway_partition(hg, 2, 0.03, rng=random.Random(seed))
        assert is_balanced(hg, parts, 2, 0.03)
        hits += evaluate_connectivity_metric(hg, parts) == 1
    assert hits >= 18


def test_partition_rejects_overweight_nodes():
    hg = Hypergraph([[0, 1, 2]], 3, [5, 1, 1])
    with pytest.raises(InfeasibleBalance):
        initial_kway_partition(hg, 2, 0.03)


def test_greedy_on_two_blocks():
    target = TargetGraph(2, [(0, 1, 7)])
    inst = OpmpInstance.from_partition(Hypergraph([[0, 1]], 2, None, [3]), [0, 1], 2)
    table = SteinerTable(target)
    for seed in (0, 1):
        placement = greedy_opmp(inst, target, table, seed)
        assert sorted(placement) == [0, 1]
        assert inst.cost(placement, table) == 21


def test_greedy_puts_heavy_pair_on_cheap_edge(p3):
    hg = Hypergraph([[0, 1], [1, 2]], 3, None, [10, 1])
    inst = OpmpInstance.from_partition(hg, [0, 1, 2], 3)
    table = SteinerTable(p3)
    costs = [inst.cost(greedy_opmp(inst, p3, table, s), table) for s in range(3)]
    # exhaustive optimum over all 3! placements, frozen
    assert min(inst.cost(list(p), table) for p in permutations(range(3))) == 12
    assert min(costs) == 12
    assert min(costs) <= costs[0]


def test_greedy_is_a_bijection_with_unreached_blocks():
    hg = Hypergraph([[0, 1]], 5)
    inst = OpmpInstance.from_partition(hg, [0, 1, 2, 3, 4], 5)
    target = random_target(5, rng=random.Random(0))
    assert sorted(greedy_opmp(inst, target, SteinerTable(target), 0)) == list(range(5))


def test_kl_keeps_an_optimal_placement(p3):
    hg = Hypergraph([[0, 1], [1, 2]], 3, None, [10, 1])
    inst = OpmpInstance.from_partition(hg, [0, 1, 2], 3)
    table = SteinerTable(p3)
    assert inst.cost(kl_refine(inst, [0, 1, 2], table), table) == 12


def test_kl_reaches_optimum_on_four_cycles():
    rng = random.Random(12)
    hits = 0
    for _ in range(50):
        w = [rng.randint(1, 10) for _ in range(4)]
        cycle = TargetGraph(4, [(0, 1, w[0]), (1, 2, w[1]), (2, 3, w[2]), (3, 0, w[3])])
        table = SteinerTable(cycle)
        hg = random_hypergraph(8, 10, rng, net_weights=(1, 9))
        inst = OpmpInstance.from_partition(hg, [v % 4 for v in range(8)], 4)
        costs = {p: inst.cost(list(p), table) for p in permutations(range(4))}
        worst = max(costs, key=costs.get)
        out = kl_refine(inst, list(worst), table)
        assert sorted(out) == [0, 1, 2, 3]
        assert inst.cost(out, table) <= costs[worst]
        hits += inst.cost(out, table) == min(costs.values())
    assert hits >= 40


def test_initial_mapping_close_to_optimum():
    rng = random.Random(21)
    ratios = []
    for _ in range(3):
        target = random_target(4, rng=rng)
        hg = random_hypergraph(8, 10, rng, net_weights=(1, 5))
        table = SteinerTable(target)
        blocks = initial_mapping(hg, target, table, 0.03, rng=random.Random(0))
        assert is_balanced(hg, blocks, 4, 0.03)
        _, opt = brute_force_mapping(hg, target, 0.03)
        ratios.append(evaluate_steiner_metric(hg, table, blocks) / opt)
    assert median(ratios) <= 1.3


def test_more_seeds_never_hurt():
    rng = random.Random(5)
    target = random_target(6, rng=rng)
    table = SteinerTable(target)
    hg = random_hypergraph(30, 40, rng)
    parts = initial_kway_partition(hg, 6, 0.03, rng=random.Random(1))
    one = map_partition(hg, parts, target, table, random.Random(2), greedy_seeds=1)
    every = map_partition(hg, parts, target, table, random.Random(2), greedy_seeds=6)
    assert evaluate_steiner_metric(hg, table, every) <= evaluate_steiner_metric(hg, table, one)

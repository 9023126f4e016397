import random
from itertools import permutations

import pytest

from steinermap import Hypergraph, SteinerTable, TargetGraph, TooLarge, complete_target
from steinermap.instances import random_hypergraph, random_target
from steinermap.mapping import evaluate_connectivity_metric, evaluate_steiner_metric
from steinermap.oracle import (
    ReferenceDistance,
    brute_force_mapping,
    brute_force_steiner,
    floyd_warshall,
    independent_objective,
    kruskal_weight,
)


def test_steiner_examples(p3):
    assert brute_force_steiner(p3, [0, 2]) == 3
    square = TargetGraph(4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])
    assert brute_force_steiner(square, range(4)) == 3
    star = TargetGraph(4, [(0, 1, 1), (0, 2, 2), (0, 3, 3)])
    assert brute_force_steiner(star, [1, 2, 3]) == 6
    assert brute_force_steiner(star, [2]) == 0


def test_steiner_bound():
    with pytest.raises(TooLarge):
        brute_force_steiner(complete_target(13), [0, 1])


def test_local_shortest_paths_and_tree(p3):
    d = floyd_warshall(3, p3.edges)
    assert d[0][2] == 3
    assert kruskal_weight([0, 1, 2], d) == 3


def test_topology_enumeration_agrees_with_supersets():
    rng = random.Random(8)
    for _ in range(10):
        target = random_target(9, rng=rng)
        small = ReferenceDistance(target)
        d = small.d
        from steinermap.oracle import _steiner_by_topology

        for _ in range(10):
            ts = sorted(rng.sample(range(9), rng.randint(2, 4)))
            assert _steiner_by_topology(d, ts) == small(ts)


def test_brute_force_mapping_examples(p3):
    hg = Hypergraph([[0, 1], [1, 2]], 3, None, [10, 1])
    blocks, opt = brute_force_mapping(hg, p3, epsilon=0.0)
    assert opt == 12
    single = Hypergraph([], 1)
    assert brute_force_mapping(single, p3)[1] == 0
    with pytest.raises(TooLarge):
        brute_force_mapping(random_hypergraph(20, 10), complete_target(4))


def test_brute_force_mapping_symmetry():
    # the 4-cycle is invariant under rotations; so is the optimum
    cycle = TargetGraph(4, [(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 0, 3)])
    hg = random_hypergraph(7, 9, random.Random(3))
    _, opt = brute_force_mapping(hg, cycle, epsilon=0.5)
    rotated = TargetGraph(4, [((u + 1) % 4, (v + 1) % 4, w) for u, v, w in cycle.edges])
    assert brute_force_mapping(hg, rotated, epsilon=0.5)[1] == opt


def test_brute_force_mapping_is_optimal_among_permutations():
    target = random_target(4, rng=random.Random(2))
    hg = random_hypergraph(4, 6, random.Random(5), net_weights=(1, 5))
    _, opt = brute_force_mapping(hg, target, epsilon=0.0)
    table = SteinerTable(target, 4)
    assert opt == min(evaluate_steiner_metric(hg, table, list(p)) for p in permutations(range(4)))


def test_independent_objective_matches_evaluator():
    rng = random.Random(11)
    for _ in range(50):
        k = rng.randint(2, 7)
        target = random_target(k, rng=rng)
        hg = random_hypergraph(rng.randint(3, 15), rng.randint(2, 15), rng, net_weights=(1, 6))
        blocks = [rng.randrange(k) for _ in range(hg.num_nodes)]
        assert independent_objective(hg, target, blocks) == evaluate_steiner_metric(hg, SteinerTable(target, k), blocks)


def test_independent_objective_trivia():
    hg = random_hypergraph(8, 10, random.Random(1))
    target = complete_target(4)
    assert independent_objective(hg, target, [2] * 8) == 0
    blocks = [v % 4 for v in range(8)]
    assert independent_objective(hg, target, blocks) == evaluate_connectivity_metric(hg, blocks)

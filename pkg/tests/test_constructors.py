"""Constructors: chain/boundary stages, mergers, sorters, padding.

Structural count expectations were frozen from independent enumeration of
the constructions; correctness is cross-checked by the verification module.
"""

import pytest

from sortnet.constructors import (alg1_merge, alg2_merge, alg3_sorter,
                                  batcher_merge, batcher_sorter,
                                  boundary_stage, chain_stage, padded_sorter)
from sortnet.costs import latency_ours, sorters_ours
from sortnet.model import simulate, structural_metrics, validate_network
from sortnet.verify import verify_merger_zero_one, verify_network_exhaustive


def _runs(n, m):
    return [tuple(range(j * m, (j + 1) * m)) for j in range(n)]


def test_chain_stage_offset_zero_is_columns():
    stage = chain_stage(_runs(3, 3), 0)
    assert stage == ((0, 3, 6), (1, 4, 7), (2, 5, 8))


def test_chain_stage_offset_one():
    stage = chain_stage(_runs(2, 3), 1)
    # position t of run 0 links to position t-1 of run 1
    assert stage == ((1, 3), (2, 4))


def test_chain_stage_offset_one_three_runs():
    # diagonals: (r0[1], r1[0]), (r0[2], r1[1], r2[0]), (r1[2], r2[1])
    stage = chain_stage(_runs(3, 3), 1)
    assert stage == ((1, 3), (2, 4, 6), (5, 7))


def test_chain_stage_groups_are_disjoint():
    for offset in range(3):
        stage = chain_stage(_runs(4, 7), offset)
        flat = [w for g in stage for w in g]
        assert len(flat) == len(set(flat))


def test_chain_stage_rejects_bad_offset():
    with pytest.raises(ValueError):
        chain_stage(_runs(2, 3), 3)
    with pytest.raises(ValueError):
        chain_stage(_runs(2, 3), -1)


def test_boundary_stage_odd():
    stage = boundary_stage(_runs(3, 5))
    # top (m+1)/2 positions of run j, bottom (m-1)/2 of run j+1
    assert stage == ((3, 4, 5, 6), (8, 9, 10, 11))


def test_boundary_stage_pairs():
    assert boundary_stage(_runs(3, 2)) == ((1, 2), (3, 4))
    with pytest.raises(ValueError):
        boundary_stage(_runs(2, 4))


def test_alg1_structure():
    res = alg1_merge(_runs(3, 3))
    m = structural_metrics(res.network())
    assert (m["sorter_count"], m["stage_count"]) == (8, 3)
    assert res.output_run == tuple(range(9))
    assert res.family == "alg1-merger"
    res = alg1_merge(_runs(3, 7))
    m = structural_metrics(res.network())
    assert (m["sorter_count"], m["stage_count"]) == (30, 5)


def test_alg1_max_sorter_size():
    for n, m in [(3, 5), (5, 7), (2, 13), (7, 5)]:
        res = alg1_merge(_runs(n, m))
        biggest = max(len(g) for st in res.stages for g in st)
        assert biggest <= max(n, m - 1)


def test_alg1_rejects_bad_lengths():
    with pytest.raises(ValueError, match="odd"):
        alg1_merge(_runs(3, 4))
    with pytest.raises(ValueError, match="prime"):
        alg1_merge(_runs(3, 9))
    # force generates the composite-length network anyway
    res = alg1_merge(_runs(3, 9), force=True)
    assert len(res.stages) == 6


def test_alg1_short_runs():
    # more runs than their length: columns first, then the column
    # transversals are merged, and the output ascends column-major
    res = alg1_merge(_runs(5, 3))
    m = structural_metrics(res.network())
    assert (m["sorter_count"], m["stage_count"]) == (15, 4)
    assert res.stages[0] == (
        (0, 3, 6, 9, 12), (1, 4, 7, 10, 13), (2, 5, 8, 11, 14))
    assert res.output_run == (
        0, 3, 6, 9, 12, 1, 4, 7, 10, 13, 2, 5, 8, 11, 14)
    assert verify_merger_zero_one(res).ok


def test_alg1_short_runs_validation():
    with pytest.raises(ValueError, match="even number of runs"):
        alg1_merge(_runs(4, 3))
    with pytest.raises(ValueError, match="run count must be prime"):
        alg1_merge(_runs(9, 3))
    forced = alg1_merge(_runs(9, 3), force=True)
    assert forced.output_run[:3] == (0, 3, 6)


def test_alg1_mutation_breaks_merge():
    base = alg1_merge(_runs(3, 3))
    assert verify_merger_zero_one(base).ok
    flat = [(si, gi) for si, st in enumerate(base.stages)
            for gi in range(len(st))]
    for si, gi in flat:
        stages = [list(st) for st in base.stages]
        del stages[si][gi]
        mutated = base.__class__(
            stages=tuple(tuple(st) for st in stages),
            input_runs=base.input_runs, output_run=base.output_run,
            family=base.family, n=base.n, m=base.m, p=base.p, checks=())
        assert not verify_merger_zero_one(mutated).ok, (si, gi)


def test_alg2_structure():
    res = alg2_merge(_runs(3, 9), 3, 3)
    assert [len(st) for st in res.stages] == [9, 9, 6, 9, 8]
    assert res.output_run == tuple(range(27))
    assert max(len(g) for st in res.stages for g in st) <= 3
    assert res.family == "alg2-merger"
    assert len(res.checks) == 4  # 3 strided level-1 merges + 1 level-2


def test_alg2_validates_arguments():
    with pytest.raises(ValueError, match="n must be prime"):
        alg2_merge(_runs(4, 4), 4, 2)
    with pytest.raises(ValueError):
        alg2_merge(_runs(3, 9), 3, 2)  # run length must be n**(p-1)
    with pytest.raises(ValueError):
        alg2_merge(_runs(2, 9), 3, 3)  # wrong run count


def test_alg2_binary_delegates_to_batcher():
    res = alg2_merge(_runs(2, 4), 2, 3)
    assert res.family == "batcher-merger"
    assert sum(len(st) for st in res.stages) == 9


def test_alg3_structure_matches_formulas():
    for n in (3, 5):
        for p in (1, 2, 3):
            net = alg3_sorter(n, p)
            assert validate_network(net) == []
            m = structural_metrics(net)
            assert m["stage_count"] == latency_ours(n, p), (n, p)
            assert m["sorter_count"] == sorters_ours(n, p), (n, p)
            assert m["max_sorter_size"] <= n


def test_alg3_known_counts():
    m = structural_metrics(alg3_sorter(3, 2))
    assert (m["stage_count"], m["sorter_count"], m["gate_count"],
            m["buffer_count"]) == (4, 11, 29, 7)
    m = structural_metrics(alg3_sorter(3, 3))
    assert (m["stage_count"], m["sorter_count"], m["gate_count"]) == \
        (9, 74, 188)


def test_alg3_rejects_composite():
    with pytest.raises(ValueError, match="n must be prime"):
        alg3_sorter(9, 2)
    with pytest.raises(ValueError):
        alg3_sorter(3, 0)


def test_alg3_binary_is_batcher():
    net = alg3_sorter(2, 3)
    assert net.meta.family == "batcher-sorter"
    assert structural_metrics(net)["sorter_count"] == 19


def test_batcher_sorter_counts():
    for N, (comps, stages) in {2: (1, 1), 4: (5, 3), 8: (19, 6),
                               16: (63, 10)}.items():
        net = batcher_sorter(N)
        m = structural_metrics(net)
        assert (m["sorter_count"], m["stage_count"]) == (comps, stages), N
        assert m["max_sorter_size"] == 2
        assert validate_network(net) == []


def test_batcher_sorter_non_power_of_two():
    for N in (3, 5, 6, 7, 12):
        net = batcher_sorter(N)
        assert net.wire_count == N
        assert validate_network(net) == []
        assert verify_network_exhaustive(net).ok


def test_batcher_merge_structure():
    res = batcher_merge((0, 1, 2, 3), (4, 5, 6, 7))
    assert len(res.stages) == 3
    assert sum(len(st) for st in res.stages) == 9
    assert res.output_run == tuple(range(8))
    assert verify_merger_zero_one(res).ok


def test_batcher_merge_validates():
    with pytest.raises(ValueError):
        batcher_merge((0, 1, 2), (3, 4, 5))
    with pytest.raises(ValueError):
        batcher_merge((0, 1), (1, 2))


def test_merger_network_meta():
    net = alg2_merge(_runs(3, 3), 3, 2).network()
    assert net.meta.family == "alg2-merger"
    assert (net.meta.n, net.meta.m, net.meta.p) == (3, 3, 2)
    assert validate_network(net) == []


def test_padded_sorter_plan_and_sorting():
    net, plan = padded_sorter(1000, 20)
    assert (plan.p, plan.n_prime, plan.padded_N) == (3, 11, 1331)
    assert net.wire_count == 1331
    assert net.meta.family == "padded"
    assert net.meta.padded_from == 1000
    assert len(net.stages) == latency_ours(11, 3)
    assert validate_network(net) == []


def test_padded_sorter_sorts_with_sentinels():
    net, plan = padded_sorter(5, 3)
    assert (plan.p, plan.n_prime) == (2, 3)
    pad = net.wire_count - 5
    assert pad == 4
    vals = (3, 1, 4, 1, 5) + (6,) * pad
    out = simulate(net, vals)
    assert out[:5] == (1, 1, 3, 4, 5)
    assert set(out[5:]) == {6}


def test_padded_sorter_objectives():
    net, plan = padded_sorter(32, 20, "gates")
    assert plan.objective == "gates-ours"
    assert plan.objective_value == 192
    with pytest.raises(ValueError):
        padded_sorter(32, 20, "latency")

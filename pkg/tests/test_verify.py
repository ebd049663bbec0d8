"""Verification oracles: zero-one sweeps, exhaustive and random network
checks, and per-stage invariant checks, including failure detection."""

import json

import pytest

from sortnet.constructors import alg1_merge, alg2_merge, batcher_sorter
from sortnet.model import Meta, make_network
from sortnet.verify import (VerifyReport, check_stage_invariants,
                            verify_merger_zero_one,
                            verify_network_exhaustive, verify_network_random)


def _runs(n, m):
    return [tuple(range(j * m, (j + 1) * m)) for j in range(n)]


def _drop_sorter(res, si, gi):
    stages = [list(st) for st in res.stages]
    del stages[si][gi]
    return res.__class__(
        stages=tuple(tuple(st) for st in stages), input_runs=res.input_runs,
        output_run=res.output_run, family=res.family, n=res.n, m=res.m,
        p=res.p, checks=res.checks)


def test_zero_one_pass_counts_cases():
    rep = verify_merger_zero_one(alg1_merge(_runs(3, 3)))
    assert rep.ok
    assert rep.cases_run == 4 ** 3
    assert rep.exhaustive and rep.seed is None
    assert rep.failures == ()


def test_zero_one_detects_broken_merger():
    broken = _drop_sorter(alg1_merge(_runs(3, 3)), 0, 0)
    rep = verify_merger_zero_one(broken)
    assert not rep.ok
    assert 0 < rep.failure_count <= rep.cases_run
    assert 0 < len(rep.failures) <= 10
    for case in rep.failures:
        assert len(case) == 3 and all(0 <= z <= 3 for z in case)


def test_zero_one_validates_n_m():
    res = alg1_merge(_runs(3, 5))
    assert verify_merger_zero_one(res, n=3, m=5).ok
    with pytest.raises(ValueError):
        verify_merger_zero_one(res, n=4)
    with pytest.raises(ValueError):
        verify_merger_zero_one(res, m=3)


def test_zero_one_budget_and_sampling():
    res = alg2_merge(_runs(3, 9), 3, 3)
    with pytest.raises(ValueError, match="budget"):
        verify_merger_zero_one(res, budget=100)
    rep = verify_merger_zero_one(res, budget=100, allow_sampling=True,
                                 samples=500, seed=42)
    assert rep.ok and not rep.exhaustive and rep.seed == 42
    # corner patterns ride along with the random sample
    assert rep.cases_run == 500 + 2 ** 3
    again = verify_merger_zero_one(res, budget=100, allow_sampling=True,
                                   samples=500, seed=42)
    assert again.cases_run == rep.cases_run
    assert again.failures == rep.failures


def test_report_json():
    rep = verify_merger_zero_one(alg1_merge(_runs(2, 3)))
    data = json.loads(rep.to_json())
    assert data["ok"] is True
    assert data["cases_run"] == 16
    assert data["exhaustive"] is True


def test_exhaustive_network_pass():
    net = batcher_sorter(6)
    rep = verify_network_exhaustive(net)
    assert rep.ok and rep.cases_run == 64 and rep.exhaustive


def test_exhaustive_network_detects_unsorted():
    # two wires, no stages: input (w0=1, w1=0) stays unsorted
    net = make_network(2, [], Meta(family="batcher-sorter", n=2, p=1))
    rep = verify_network_exhaustive(net)
    assert rep.failure_count == 1
    assert rep.failures == ((1, 0),)


def test_exhaustive_network_detects_dropped_comparator():
    net = batcher_sorter(8)
    stages = [list(st) for st in net.stages]
    del stages[2][0]
    broken = make_network(8, stages, net.meta)
    rep = verify_network_exhaustive(broken)
    assert not rep.ok
    assert all(len(bits) == 8 for bits in rep.failures)


def test_exhaustive_network_wire_cap():
    net = make_network(31, [], Meta(family="batcher-sorter", n=2, p=5))
    with pytest.raises(ValueError, match="cap"):
        verify_network_exhaustive(net)


def test_exhaustive_single_wire():
    net = make_network(1, [], Meta(family="batcher-sorter", n=2, p=0))
    rep = verify_network_exhaustive(net)
    assert rep.ok and rep.cases_run == 2


def test_random_network_pass_and_determinism():
    net = batcher_sorter(12)
    rep1 = verify_network_random(net, samples=300, seed=5)
    rep2 = verify_network_random(net, samples=300, seed=5)
    assert rep1.ok and rep2.ok
    assert rep1.cases_run == 300 and rep1.seed == 5
    assert rep1.failures == rep2.failures


def test_random_network_detects_unsorted():
    net = make_network(4, [[(0, 1)]],
                       Meta(family="batcher-sorter", n=2, p=2))
    rep = verify_network_random(net, samples=200, seed=1)
    assert not rep.ok
    assert rep.failures and all(len(v) == 4 for v in rep.failures)


def test_stage_invariants_pass():
    rep = check_stage_invariants(alg1_merge(_runs(3, 5)))
    assert rep.ok and rep.cases_run == 6 ** 3
    assert rep.failure_kinds == ()
    rep = check_stage_invariants(alg2_merge(_runs(3, 9), 3, 3))
    assert rep.ok and rep.cases_run == 1000


def test_stage_invariants_flag_violations():
    res = alg2_merge(_runs(3, 9), 3, 3)
    broken = _drop_sorter(res, 0, 0)  # keeps the original check metadata
    rep = check_stage_invariants(broken)
    assert not rep.ok
    assert len(rep.failures) == len(rep.failure_kinds)
    assert set(rep.failure_kinds) <= {"list-order", "count-monotone",
                                      "dirty-window", "output-order"}
    assert rep.failure_kinds


def test_stage_invariants_sampling():
    res = alg2_merge(_runs(3, 9), 3, 3)
    rep = check_stage_invariants(res, budget=10, allow_sampling=True,
                                 samples=200, seed=9)
    assert rep.ok and not rep.exhaustive and rep.seed == 9


def test_report_ok_property():
    rep = VerifyReport(10, 0, (), True, None, 0.0)
    assert rep.ok
    rep = VerifyReport(10, 1, ((0, 1),), True, None, 0.0)
    assert not rep.ok

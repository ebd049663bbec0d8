"""Network constructors: spaced-sorter mergers, the recursive multiway
merger, the full n^p sorter, Batcher odd-even networks, and padded sorters
for arbitrary input counts.

Coordinates: a run is an ordered wire sequence; position k of a sorted list
lives on run[k]. All wire indices are 0-based. Inside the builders, (j, t)
means position t of run j.
"""

from __future__ import annotations

from dataclasses import dataclass

from .costs import is_prime, plan_search, Plan
from .model import Meta, Network, SorterGroup, Stage, make_network

Run = tuple[int, ...]


@dataclass(frozen=True)
class LevelCheck:
    """Invariant metadata for one merge level of a merger.

    lists holds the level's constituent runs; over snapshots start..end
    (0 = input, k = after stage k) each list stays individually sorted on
    every sorted-0/1 input. For level >= 2 the lists are freshly formed at
    snapshot `start`, where additionally the per-list zero counts are
    non-increasing across lists and at most n consecutive lists are dirty
    (contain both values). out_run, when set, is sorted at snapshot `end`.
    """

    level: int
    lists: tuple[Run, ...]
    start: int
    end: int
    out_run: Run | None


@dataclass(frozen=True)
class MergerResult:
    """Stages plus wire bookkeeping of a merging network.

    output_run lists the wires in the order along which the merged result
    is ascending; it is a permutation of the input runs' wires.
    """

    stages: tuple[Stage, ...]
    input_runs: tuple[Run, ...]
    output_run: Run
    family: str
    n: int
    m: int
    p: int | None
    checks: tuple[LevelCheck, ...]

    def network(self) -> Network:
        wires = 1 + max(max(r) for r in self.input_runs)
        return make_network(
            wires, self.stages,
            Meta(family=self.family, n=self.n, m=self.m, p=self.p))


def _normalize_runs(runs) -> tuple[Run, ...]:
    norm = tuple(tuple(int(w) for w in r) for r in runs)
    if len(norm) < 2:
        raise ValueError("need at least 2 runs")
    length = len(norm[0])
    if length < 1:
        raise ValueError("runs must be nonempty")
    if any(len(r) != length for r in norm):
        raise ValueError("runs must have equal length")
    flat = [w for r in norm for w in r]
    if len(set(flat)) != len(flat):
        raise ValueError("runs must use distinct wires")
    return norm


def chain_stage(runs, offset: int) -> Stage:
    """One stage of offset-spaced sorters between adjacent runs.

    Pairs position t of run j with position t-offset of run j+1; maximal
    chains of linked positions become one sorter each, wires listed in
    walk order (which is ascending output rank). Positions in no pair are
    left untouched. offset 0 yields full-column sorters.
    """
    norm = _normalize_runs(runs)
    lists = len(norm)
    length = len(norm[0])
    if not 0 <= offset < length:
        raise ValueError("offset must satisfy 0 <= offset < run length")
    if offset == 0:
        return tuple(
            tuple(norm[j][t] for j in range(lists)) for t in range(length))

    def walk(j: int, t: int) -> SorterGroup:
        group = []
        while j < lists and t >= 0:
            group.append(norm[j][t])
            j += 1
            t -= offset
        return tuple(group)

    groups = [walk(0, t) for t in range(offset, length)]
    for j in range(1, lists - 1):
        for t in range(max(offset, length - offset), length):
            groups.append(walk(j, t))
    return tuple(groups)


def boundary_stage(runs) -> Stage:
    """Final merge stage straddling adjacent runs.

    For odd run length L >= 3, each group takes the top (L-1)/2 positions
    of run j followed by the bottom (L-1)/2 of run j+1; for L = 2 the top
    position of run j and the bottom of run j+1.
    """
    norm = _normalize_runs(runs)
    lists = len(norm)
    length = len(norm[0])
    if length == 2:
        return tuple(
            (norm[j][1], norm[j + 1][0]) for j in range(lists - 1))
    if length < 3 or length % 2 == 0:
        raise ValueError("run length must be 2 or odd >= 3")
    top = (length + 1) // 2
    low = (length - 1) // 2
    return tuple(
        norm[j][top:] + norm[j + 1][:low] for j in range(lists - 1))


def alg1_merge(runs, force: bool = False) -> MergerResult:
    """Merge n sorted runs of odd prime length m in 1 + ceil(max(n,m)/2) stages.

    Stage 1 sorts full columns (chain_stage at offset 0). When m >= n the
    remaining stages are chain_stage at offsets 1..ceil(m/2)-1 followed by
    boundary_stage, and the merged output ascends along the concatenation
    of the input runs. When m < n a chain cannot span all runs, so the
    remaining stages instead merge the m column transversals (sorted runs
    of length n after stage 1) the same way; the output then ascends along
    the transversal concatenation, and n must be odd (and prime, unless
    forced). Composite odd lengths are only generable with force=True and
    carry no correctness guarantee; even lengths degenerate and are
    rejected.
    """
    norm = _normalize_runs(runs)
    n = len(norm)
    m = len(norm[0])
    if m < 3 or m % 2 == 0:
        raise ValueError("run length must be an odd number >= 3")
    if not is_prime(m) and not force:
        raise ValueError("run length must be prime (force=True overrides)")
    if m >= n:
        h = (m + 1) // 2
        stages = [chain_stage(norm, o) for o in range(h)]
        stages.append(boundary_stage(norm))
        out_run = tuple(w for r in norm for w in r)
        checks = (LevelCheck(level=1, lists=norm, start=0, end=len(stages),
                             out_run=out_run),)
    else:
        if n % 2 == 0:
            raise ValueError(
                "cannot merge an even number of runs shorter than the run "
                "count")
        if not is_prime(n) and not force:
            raise ValueError(
                "run count must be prime when it exceeds the run length "
                "(force=True overrides)")
        trans = tuple(tuple(r[t] for r in norm) for t in range(m))
        h = (n + 1) // 2
        stages = [chain_stage(norm, 0)]
        stages += [chain_stage(trans, o) for o in range(1, h)]
        stages.append(boundary_stage(trans))
        out_run = tuple(w for r in trans for w in r)
        checks = (
            LevelCheck(level=1, lists=norm, start=0, end=1, out_run=None),
            LevelCheck(level=1, lists=trans, start=1, end=len(stages),
                       out_run=out_run))
    return MergerResult(
        stages=tuple(stages), input_runs=norm, output_run=out_run,
        family="alg1-merger", n=n, m=m, p=None, checks=checks)


def alg2_merge(runs, n: int, p: int) -> MergerResult:
    """Merge n sorted runs of length n^(p-1) in 1 + (p-1)*ceil(n/2) stages.

    Level 1 merges the n^(p-2) strided transversals with alg1_merge, all in
    parallel. Each later level i groups n runs of the previous level, forms
    n^i transversal lists (list s = the rank-s elements of the n runs), and
    applies offset 1..ceil(n/2)-1 chain stages plus a boundary stage. The
    final output ascends along the concatenation of the input runs.
    n = 2 delegates to batcher_merge.
    """
    norm = _normalize_runs(runs)
    if len(norm) != n:
        raise ValueError("expected exactly n runs")
    if n == 2:
        if p < 2 or len(norm[0]) != 2 ** (p - 1):
            raise ValueError("run length must be n**(p-1)")
        return batcher_merge(norm[0], norm[1])
    if not is_prime(n):
        raise ValueError("n must be prime")
    if p < 2:
        raise ValueError("p must be at least 2")
    if len(norm[0]) != n ** (p - 1):
        raise ValueError("run length must be n**(p-1)")
    h = (n + 1) // 2

    stages: list[list[SorterGroup]] = []
    checks: list[LevelCheck] = []

    # level 1: strided sub-merges, h+1 stages
    stride = n ** (p - 2)
    accum: list[list[SorterGroup]] = [[] for _ in range(h + 1)]
    level_runs: list[Run] = []
    for q in range(stride):
        subs = tuple(tuple(r[q::stride]) for r in norm)
        sub = alg1_merge(subs)
        for k, st in enumerate(sub.stages):
            accum[k].extend(st)
        level_runs.append(sub.output_run)
        checks.append(LevelCheck(level=1, lists=subs, start=0, end=h + 1,
                                 out_run=sub.output_run))
    stages.extend(accum)

    # levels 2..p-1: transversal lists, h stages each
    for i in range(2, p):
        res = n ** (p - 1 - i)
        base = len(stages)
        accum = [[] for _ in range(h)]
        next_runs: list[Run] = []
        for q in range(res):
            parts = [level_runs[q + c * res] for c in range(n)]
            lists = tuple(
                tuple(parts[c][s] for c in range(n)) for s in range(n ** i))
            for k, o in enumerate(range(1, h)):
                accum[k].extend(chain_stage(lists, o))
            accum[h - 1].extend(boundary_stage(lists))
            out = tuple(parts[r % n][r // n] for r in range(n ** (i + 1)))
            next_runs.append(out)
            checks.append(LevelCheck(level=i, lists=lists, start=base,
                                     end=base + h, out_run=out))
        stages.extend(accum)
        level_runs = next_runs

    output_run = level_runs[0]
    assert output_run == tuple(w for r in norm for w in r)
    return MergerResult(
        stages=tuple(tuple(st) for st in stages), input_runs=norm,
        output_run=output_run, family="alg2-merger", n=n, m=n ** (p - 1),
        p=p, checks=tuple(checks))


def alg3_sorter(n: int, p: int) -> Network:
    """Sorting network for N = n^p values, n prime, p >= 1.

    Stage 1 sorts n^(p-1) contiguous n-blocks; each subsequent level i
    merges adjacent groups of n sorted runs with alg2_merge(n, i), all
    groups in parallel. The output is ascending in wire order. n = 2
    delegates to batcher_sorter.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    if n == 2:
        return batcher_sorter(2 ** p)
    if not is_prime(n):
        raise ValueError("n must be prime")
    stages: list[Stage] = [
        tuple(tuple(range(k * n, (k + 1) * n)) for k in range(n ** (p - 1)))]
    for i in range(2, p + 1):
        width = n ** i
        run_len = n ** (i - 1)
        accum: list[list[SorterGroup]] | None = None
        for b in range(n ** (p - i)):
            base = b * width
            block_runs = [
                tuple(range(base + j * run_len, base + (j + 1) * run_len))
                for j in range(n)]
            merged = alg2_merge(block_runs, n, i)
            if accum is None:
                accum = [list(st) for st in merged.stages]
            else:
                for k, st in enumerate(merged.stages):
                    accum[k].extend(st)
        stages.extend(tuple(st) for st in accum)
    return make_network(n ** p, stages, Meta(family="alg3-sorter", n=n, p=p))


def _oem_stages(wires: tuple[int, ...]) -> list[list[SorterGroup]]:
    """Odd-even merge of two sorted halves of `wires`, as comparator stages.

    Precondition: wires is the concatenation of two sorted runs of equal
    power-of-two length; postcondition: ascending along `wires`.
    """
    if len(wires) == 2:
        return [[(wires[0], wires[1])]]
    even = wires[0::2]
    odd = wires[1::2]
    stages = [a + b for a, b in zip(_oem_stages(even), _oem_stages(odd))]
    stages.append(
        [(wires[i], wires[i + 1]) for i in range(1, len(wires) - 1, 2)])
    return stages


def batcher_merge(a, b) -> MergerResult:
    """Odd-even merge of two sorted runs of equal power-of-two length."""
    ra = tuple(int(w) for w in a)
    rb = tuple(int(w) for w in b)
    if len(ra) != len(rb) or len(ra) < 1 or len(ra) & (len(ra) - 1):
        raise ValueError("runs must have equal power-of-two length")
    if len(set(ra + rb)) != len(ra) + len(rb):
        raise ValueError("runs must use distinct wires")
    out_run = ra + rb
    stages = tuple(tuple(st) for st in _oem_stages(out_run))
    return MergerResult(
        stages=stages, input_runs=(ra, rb), output_run=out_run,
        family="batcher-merger", n=2, m=len(ra), p=None, checks=())


def batcher_sorter(N: int) -> Network:
    """Odd-even merge sort network on N wires.

    Built on the next power of two; comparators touching the phantom top
    wires are dropped (they would only ever carry maximal values), along
    with any stage left empty.
    """
    if N < 1:
        raise ValueError("N must be positive")
    p = (N - 1).bit_length()

    def sort_stages(wires: tuple[int, ...]) -> list[list[SorterGroup]]:
        if len(wires) <= 1:
            return []
        half = len(wires) // 2
        lo = sort_stages(wires[:half])
        hi = sort_stages(wires[half:])
        stages = [a + b for a, b in zip(lo, hi)]
        stages.extend(_oem_stages(wires))
        return stages

    stages = []
    for st in sort_stages(tuple(range(2 ** p))):
        kept = tuple(g for g in st if max(g) < N)
        if kept:
            stages.append(kept)
    return make_network(N, stages, Meta(family="batcher-sorter", n=2, p=p))


def padded_sorter(N: int, n_b: int,
                  objective: str = "sorters") -> tuple[Network, Plan]:
    """Sorter for an arbitrary input count N with basic sorters <= n_b.

    Picks the cheapest (p, n_prime) realization for the objective
    ("sorters" or "gates", minimizing this construction's cost), builds
    the n_prime^p network, and marks wires N..padded_N-1 as pad wires.
    Feeding the N real inputs on wires 0..N-1 with a maximal sentinel on
    the pad wires leaves the sorted real values on wires 0..N-1.
    """
    mapped = {"sorters": "sorters-ours", "gates": "gates-ours"}.get(
        objective, objective)
    if mapped not in ("sorters-ours", "gates-ours"):
        raise ValueError("objective must be 'sorters' or 'gates'")
    plan = plan_search(N, n_b, mapped)
    net = alg3_sorter(plan.n_prime, plan.p)
    meta = Meta(family="padded", n=plan.n_prime, p=plan.p, padded_from=N)
    return Network(net.wire_count, net.stages, meta), plan

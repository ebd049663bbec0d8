"""Verification oracles: exhaustive zero-one checking of mergers, exhaustive
and randomized checking of full networks, and per-stage invariant checks.

Mergers are verified over the complete space of sorted-0/1 inputs, which is
the (m+1)^n zero-count tuples (run j = r_j zeros then ones); full networks
over all 2^N bit vectors. Both sweeps run word-parallel on packed columns.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from itertools import product, zip_longest
from time import perf_counter

import numpy as np

from .model import Network, apply_stages_packed, simulate_batch

_CHUNK = 1 << 20
_EXHAUSTIVE_WIRE_CAP = 30


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one verification sweep.

    failures holds up to 10 sample inputs: zero-count tuples for merger
    sweeps, input vectors otherwise. failure_kinds labels the samples when
    several invariants are checked at once. seed is set when the sweep
    sampled instead of enumerating.
    """

    cases_run: int
    failure_count: int
    failures: tuple[tuple, ...]
    exhaustive: bool
    seed: int | None
    elapsed: float
    failure_kinds: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def to_json(self) -> str:
        d = asdict(self)
        d["ok"] = self.ok
        return json.dumps(d, separators=(",", ":"))


def _pack(bits: np.ndarray) -> int:
    """Pack a boolean vector into an int (bit b = element b)."""
    return int.from_bytes(
        np.packbits(bits, bitorder="little").tobytes(), "little")


def _bit_positions(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _bitplane_sum(cols: list[int]) -> list[int]:
    """Binary counter planes of per-bit ones counts across columns."""
    planes: list[int] = []
    for col in cols:
        carry = col
        for i in range(len(planes)):
            if not carry:
                break
            planes[i], carry = planes[i] ^ carry, planes[i] & carry
        if carry:
            planes.append(carry)
    return planes


def _gt_bits(pa: list[int], pb: list[int]) -> int:
    """Bits where the count encoded by planes pa exceeds that of pb."""
    gt = 0
    eq = -1
    for r in range(max(len(pa), len(pb)) - 1, -1, -1):
        a = pa[r] if r < len(pa) else 0
        b = pb[r] if r < len(pb) else 0
        gt |= eq & a & ~b
        eq &= ~(a ^ b)
    return gt


def _merger_attrs(merger):
    runs = tuple(tuple(r) for r in merger.input_runs)
    n_runs = len(runs)
    m_len = len(runs[0])
    if any(len(r) != m_len for r in runs):
        raise ValueError("merger runs must have equal length")
    return runs, tuple(merger.output_run), n_runs, m_len


def _check_nm(n, m, n_runs, m_len):
    if n is not None and n != n_runs:
        raise ValueError(f"merger has {n_runs} runs, not {n}")
    if m is not None and m != m_len:
        raise ValueError(f"merger runs have length {m_len}, not {m}")


def _columns_from_digits(digits: np.ndarray, runs) -> list[int]:
    """Packed wire columns for a batch of zero-count tuples."""
    cols = [0] * (1 + max(max(r) for r in runs))
    for j, run in enumerate(runs):
        d = digits[:, j]
        for t, w in enumerate(run):
            cols[w] = _pack(d <= t)
    return cols


def _sampled_digits(n_runs: int, m: int, samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    body = rng.integers(0, m + 1, size=(samples, n_runs), dtype=np.int64)
    if n_runs <= 12:
        corners = np.array(
            list(product((0, m), repeat=n_runs)), dtype=np.int64)
        body = np.concatenate([corners, body])
    return body


def _digit_chunks(n_runs: int, m: int, exhaustive: bool, total: int,
                  sampled: np.ndarray | None):
    if exhaustive:
        base = m + 1
        for lo in range(0, total, _CHUNK):
            hi = min(lo + _CHUNK, total)
            idx = np.arange(lo, hi, dtype=np.int64)
            digits = np.empty((hi - lo, n_runs), dtype=np.int64)
            for j in range(n_runs):
                digits[:, j] = (idx // base ** j) % base
            yield digits
    else:
        for lo in range(0, len(sampled), _CHUNK):
            yield sampled[lo:lo + _CHUNK]


def _zero_one_space(n_runs: int, m: int, budget: int, allow_sampling: bool,
                    samples: int, seed: int):
    total = (m + 1) ** n_runs
    if total <= budget:
        return True, None, total, None
    if not allow_sampling:
        raise ValueError(
            f"case space {total} exceeds budget {budget}; "
            "enable allow_sampling to subsample")
    sampled = _sampled_digits(n_runs, m, samples, seed)
    return False, seed, len(sampled), sampled


def verify_merger_zero_one(merger, n: int | None = None, m: int | None = None,
                           *, budget: int = 20_000_000,
                           allow_sampling: bool = False,
                           samples: int = 100_000,
                           seed: int = 0) -> VerifyReport:
    """Check a merger over its sorted-0/1 input space.

    For every zero-count tuple, the output along output_run must be exactly
    Z zeros then ones, Z the total input zero count (this implies both
    sortedness and conservation). Spaces beyond `budget` require
    allow_sampling and are subsampled with the recorded seed.
    """
    t0 = perf_counter()
    runs, out_run, n_runs, m_len = _merger_attrs(merger)
    _check_nm(n, m, n_runs, m_len)
    exhaustive, used_seed, cases, sampled = _zero_one_space(
        n_runs, m_len, budget, allow_sampling, samples, seed)
    failure_count = 0
    failures: list[tuple] = []
    for digits in _digit_chunks(n_runs, m_len, exhaustive, cases, sampled):
        cols = _columns_from_digits(digits, runs)
        apply_stages_packed(merger.stages, cols)
        zeros = digits.sum(axis=1)
        bad = 0
        for k, w in enumerate(out_run):
            bad |= cols[w] ^ _pack(zeros <= k)
        if bad:
            failure_count += bad.bit_count()
            for b in _bit_positions(bad):
                if len(failures) >= 10:
                    break
                failures.append(tuple(int(x) for x in digits[b]))
    return VerifyReport(cases, failure_count, tuple(failures), exhaustive,
                        used_seed, perf_counter() - t0)


def verify_network_exhaustive(net: Network) -> VerifyReport:
    """Check a full network on all 2^N bit vectors (N <= 30).

    Each vector's output must be non-decreasing in wire order with the ones
    count preserved. Vectors are swept in packed chunks: low wires carry
    periodic bit patterns, high wires are constant per chunk.
    """
    t0 = perf_counter()
    wires = net.wire_count
    if wires > _EXHAUSTIVE_WIRE_CAP:
        raise ValueError(
            f"wire_count {wires} exceeds exhaustive cap "
            f"{_EXHAUSTIVE_WIRE_CAP}")
    total = 1 << wires
    width = min(_CHUNK, total)
    mask = (1 << width) - 1
    low = width.bit_length() - 1
    patterns = []
    for w in range(min(low, wires)):
        pat = ((1 << (1 << w)) - 1) << (1 << w)
        size = 1 << (w + 1)
        while size < width:
            pat |= pat << size
            size <<= 1
        patterns.append(pat)
    failure_count = 0
    failures: list[tuple] = []
    for base in range(0, total, width):
        cols = [
            patterns[w] if w < low else (mask if (base >> w) & 1 else 0)
            for w in range(wires)]
        in_planes = _bitplane_sum(cols)
        apply_stages_packed(net.stages, cols)
        bad = 0
        for w in range(wires - 1):
            bad |= cols[w] & ~cols[w + 1]
        for a, b in zip_longest(in_planes, _bitplane_sum(cols), fillvalue=0):
            bad |= a ^ b
        bad &= mask
        if bad:
            failure_count += bad.bit_count()
            for b in _bit_positions(bad):
                if len(failures) >= 10:
                    break
                idx = base + b
                failures.append(
                    tuple((idx >> w) & 1 for w in range(wires)))
    return VerifyReport(total, failure_count, tuple(failures), True, None,
                        perf_counter() - t0)


def verify_network_random(net: Network, samples: int = 10_000,
                          seed: int = 0) -> VerifyReport:
    """Check a network on seeded random integer multisets vs a reference
    sort. For padded networks the random values feed the real wires and a
    maximal sentinel feeds the pad wires; the sorted real values must come
    out on wires 0..real-1."""
    t0 = perf_counter()
    rng = np.random.default_rng(seed)
    wires = net.wire_count
    real = wires
    if net.meta.family == "padded" and net.meta.padded_from is not None:
        real = net.meta.padded_from
    pad = wires - real
    sentinel = real + 1
    failure_count = 0
    failures: list[tuple] = []
    done = 0
    while done < samples:
        batch = min(2048, samples - done)
        vals = rng.integers(0, real + 1, size=(batch, real), dtype=np.int64)
        if pad:
            arr = np.concatenate(
                [vals, np.full((batch, pad), sentinel, dtype=np.int64)],
                axis=1)
        else:
            arr = vals
        out = simulate_batch(net, arr)
        ok = (out[:, :real] == np.sort(vals, axis=1)).all(axis=1)
        if pad:
            ok &= (out[:, real:] == sentinel).all(axis=1)
        if not ok.all():
            bad_rows = np.flatnonzero(~ok)
            failure_count += len(bad_rows)
            for r in bad_rows:
                if len(failures) >= 10:
                    break
                failures.append(tuple(int(x) for x in vals[r]))
        done += batch
    return VerifyReport(samples, failure_count, tuple(failures), False, seed,
                        perf_counter() - t0)


def check_stage_invariants(merger, n: int | None = None,
                           m: int | None = None, *,
                           budget: int = 20_000_000,
                           allow_sampling: bool = False,
                           samples: int = 10_000,
                           seed: int = 0) -> VerifyReport:
    """Check a merger's per-stage structural invariants on sorted-0/1 input.

    Per recorded merge level: every constituent list stays individually
    sorted on each snapshot of the level's stage span ("list-order"); at
    formation of a level >= 2, per-list zero counts are non-increasing
    across lists ("count-monotone") and no n+1 consecutive lists are dirty
    ("dirty-window"); the level's output run is sorted when the level ends
    ("output-order"). failure_count counts inputs violating anything.
    """
    t0 = perf_counter()
    runs, _, n_runs, m_len = _merger_attrs(merger)
    _check_nm(n, m, n_runs, m_len)
    checks = tuple(merger.checks)
    window = merger.n + 1
    exhaustive, used_seed, cases, sampled = _zero_one_space(
        n_runs, m_len, budget, allow_sampling, samples, seed)
    failure_count = 0
    failures: list[tuple] = []
    kinds: list[str] = []

    for digits in _digit_chunks(n_runs, m_len, exhaustive, cases, sampled):
        cols = _columns_from_digits(digits, runs)
        chunk_bad = 0

        def record(viol: int, kind: str):
            nonlocal chunk_bad
            if not viol:
                return
            chunk_bad |= viol
            for b in _bit_positions(viol):
                if len(failures) >= 10:
                    break
                failures.append(tuple(int(x) for x in digits[b]))
                kinds.append(kind)

        for snap in range(len(merger.stages) + 1):
            if snap > 0:
                apply_stages_packed((merger.stages[snap - 1],), cols)
            for check in checks:
                if check.start <= snap <= check.end:
                    viol = 0
                    for lst in check.lists:
                        for a, b in zip(lst, lst[1:]):
                            viol |= cols[a] & ~cols[b]
                    record(viol, "list-order")
                if snap == check.start and check.level >= 2:
                    planes = [
                        _bitplane_sum([cols[w] for w in lst])
                        for lst in check.lists]
                    viol = 0
                    for pa, pb in zip(planes, planes[1:]):
                        viol |= _gt_bits(pa, pb)
                    record(viol, "count-monotone")
                    dirty = []
                    for lst in check.lists:
                        any_one = 0
                        all_one = -1
                        for w in lst:
                            any_one |= cols[w]
                            all_one &= cols[w]
                        dirty.append(any_one & ~all_one)
                    viol = 0
                    for i in range(len(dirty) - window + 1):
                        acc = dirty[i]
                        for d in dirty[i + 1:i + window]:
                            acc &= d
                            if not acc:
                                break
                        viol |= acc
                    record(viol, "dirty-window")
                if snap == check.end and check.out_run is not None:
                    viol = 0
                    for a, b in zip(check.out_run, check.out_run[1:]):
                        viol |= cols[a] & ~cols[b]
                    record(viol, "output-order")
        failure_count += chunk_bad.bit_count()
    return VerifyReport(cases, failure_count, tuple(failures), exhaustive,
                        used_seed, perf_counter() - t0,
                        failure_kinds=tuple(kinds))

"""Core network model: representation, validation, and simulation.

A network is a sequence of stages; each stage is a set of wire-disjoint
sorter groups that fire simultaneously. A group lists its wires in rank
order: after the sorter fires, the smallest value sits on the first listed
wire, the largest on the last. Wire indices are 0-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

SorterGroup = tuple[int, ...]
Stage = tuple[SorterGroup, ...]

FAMILIES = (
    "alg1-merger",
    "alg2-merger",
    "alg3-sorter",
    "batcher-sorter",
    "batcher-merger",
    "padded",
)


@dataclass(frozen=True)
class Meta:
    """Construction metadata: which builder produced the network and with
    what parameters. ``padded_from`` records the raw input count when the
    network was sized up to a prime power."""

    family: str
    n: int | None = None
    m: int | None = None
    p: int | None = None
    padded_from: int | None = None


@dataclass(frozen=True)
class Network:
    wire_count: int
    stages: tuple[Stage, ...]
    meta: Meta


@dataclass(frozen=True)
class SimTrace:
    """Per-stage value snapshots; snapshots[0] is the input, snapshots[k]
    the state after stage k."""

    snapshots: tuple[tuple[Any, ...], ...]


def make_network(wire_count: int, stages: Iterable[Iterable[Iterable[int]]],
                 meta: Meta) -> Network:
    """Build a Network, normalizing stages to nested tuples."""
    norm = tuple(tuple(tuple(int(w) for w in g) for g in st) for st in stages)
    return Network(int(wire_count), norm, meta)


def validate_network(net: Network) -> list[str]:
    """Check all structural invariants; returns a list of violation messages
    (empty when the network is valid). Never raises."""
    out: list[str] = []
    n_w = net.wire_count
    if n_w < 1:
        out.append("wire_count must be positive")
    for si, stage in enumerate(net.stages):
        seen: set[int] = set()
        for gi, group in enumerate(stage):
            if len(group) < 2:
                out.append(f"stage {si} group {gi}: fewer than 2 wires")
            if len(set(group)) != len(group):
                out.append(f"stage {si} group {gi}: duplicate wire")
            for w in group:
                if not 0 <= w < n_w:
                    out.append(f"stage {si} group {gi}: wire {w} out of range")
                elif w in seen:
                    out.append(f"stage {si} group {gi}: overlap at wire {w}")
                seen.add(w)
    out.extend(_validate_meta(net))
    return out


def _validate_meta(net: Network) -> list[str]:
    meta = net.meta
    fam = meta.family
    if fam not in FAMILIES:
        return [f"meta: unknown family {fam!r}"]
    n, m, p, wc = meta.n, meta.m, meta.p, net.wire_count
    out: list[str] = []
    if fam == "alg1-merger":
        if n is None or m is None or n * m != wc:
            out.append("meta: alg1-merger needs n*m == wire_count")
    elif fam == "alg2-merger":
        if n is None or p is None or n ** p != wc or m != n ** (p - 1):
            out.append("meta: alg2-merger needs n**p == wire_count, m == n**(p-1)")
    elif fam in ("alg3-sorter", "padded"):
        if n is None or p is None or n ** p != wc:
            out.append(f"meta: {fam} needs n**p == wire_count")
        if fam == "padded":
            pf = meta.padded_from
            if pf is None or not 1 <= pf <= wc:
                out.append("meta: padded needs 1 <= padded_from <= wire_count")
    elif fam == "batcher-sorter":
        if n != 2 or p is None or not (2 ** p >= wc > 2 ** (p - 1) if p > 0 else wc == 1):
            out.append("meta: batcher-sorter needs 2**(p-1) < wire_count <= 2**p")
    elif fam == "batcher-merger":
        if n != 2 or m is None or 2 * m != wc:
            out.append("meta: batcher-merger needs 2*m == wire_count")
    return out


def simulate(net: Network, values: Sequence[Any], trace: bool = False):
    """Run the network on arbitrary comparable values.

    Returns the output tuple, or (output, SimTrace) when trace is set.
    """
    if len(values) != net.wire_count:
        raise ValueError(
            f"expected {net.wire_count} values, got {len(values)}")
    work = list(values)
    snaps = [tuple(work)] if trace else None
    for stage in net.stages:
        for group in stage:
            for w, v in zip(group, sorted(work[w] for w in group)):
                work[w] = v
        if trace:
            snaps.append(tuple(work))
    out = tuple(work)
    if trace:
        return out, SimTrace(tuple(snaps))
    return out


def _sort_group_packed(cols: list[int], group: Sequence[int]) -> None:
    """Compare-exchange bubble over packed bit columns; ascending rank order."""
    s = len(group)
    for i in range(s - 1):
        for j in range(s - 1 - i):
            a, b = cols[group[j]], cols[group[j + 1]]
            cols[group[j]] = a & b
            cols[group[j + 1]] = a | b


def apply_stages_packed(stages: Iterable[Stage], cols: list[int]) -> None:
    """Apply stages in place to packed columns (one big int per wire; bit b
    of column w is the 0/1 value of wire w in test vector b)."""
    for stage in stages:
        for group in stage:
            _sort_group_packed(cols, group)


def simulate_binary_packed(net: Network, columns: Sequence[int]) -> list[int]:
    """Word-parallel 0/1 simulation.

    Bit b of columns[w] holds wire w's value in test vector b; the result is
    bit-exact with running simulate() on each vector separately.
    """
    if len(columns) != net.wire_count:
        raise ValueError(
            f"expected {net.wire_count} columns, got {len(columns)}")
    cols = [int(c) for c in columns]
    apply_stages_packed(net.stages, cols)
    return cols


def _batch_plan(stages: tuple[Stage, ...]) -> list[list[np.ndarray]]:
    """Group each stage's sorters by size into index matrices for numpy."""
    plan = []
    for stage in stages:
        by_size: dict[int, list[SorterGroup]] = {}
        for group in stage:
            by_size.setdefault(len(group), []).append(group)
        plan.append([np.array(groups, dtype=np.intp)
                     for _, groups in sorted(by_size.items())])
    return plan


def simulate_batch(net: Network, values: np.ndarray) -> np.ndarray:
    """Simulate many input rows at once; values has shape (batch, wire_count)."""
    arr = np.array(values, copy=True)
    if arr.ndim != 2 or arr.shape[1] != net.wire_count:
        raise ValueError(f"expected shape (batch, {net.wire_count})")
    for stage_idx in _batch_plan(net.stages):
        for idx in stage_idx:
            sub = arr[:, idx]
            sub.sort(axis=2)
            arr[:, idx] = sub
    return arr


def structural_metrics(net: Network) -> dict[str, int]:
    """Count stages, sorters, gates, and buffers.

    An s-sorter costs s gates; each stage also needs one buffer per wire it
    does not touch, so gate_count + buffer_count == wire_count * stage_count.
    """
    sorters = gates = buffers = 0
    max_size = 0
    for stage in net.stages:
        touched = 0
        for group in stage:
            sorters += 1
            gates += len(group)
            touched += len(group)
            max_size = max(max_size, len(group))
        buffers += net.wire_count - touched
    return {
        "stage_count": len(net.stages),
        "sorter_count": sorters,
        "max_sorter_size": max_size,
        "gate_count": gates,
        "buffer_count": buffers,
    }


def network_to_dict(net: Network) -> dict:
    meta: dict[str, Any] = {
        "family": net.meta.family,
        "n": net.meta.n,
        "m": net.meta.m,
        "p": net.meta.p,
    }
    if net.meta.padded_from is not None:
        meta["padded_from"] = net.meta.padded_from
    return {
        "wire_count": net.wire_count,
        "meta": meta,
        "stages": [[list(g) for g in st] for st in net.stages],
    }


def network_to_json(net: Network, extra: dict | None = None) -> str:
    """Serialize deterministically; extra top-level keys (e.g. merger runs)
    are appended after the schema keys."""
    d = network_to_dict(net)
    if extra:
        d.update(extra)
    return json.dumps(d, separators=(",", ":")) + "\n"


def network_from_dict(d: dict) -> Network:
    meta = d.get("meta", {})
    return make_network(
        d["wire_count"],
        d["stages"],
        Meta(
            family=meta.get("family", ""),
            n=meta.get("n"),
            m=meta.get("m"),
            p=meta.get("p"),
            padded_from=meta.get("padded_from"),
        ),
    )


def network_from_json(text: str) -> tuple[Network, dict]:
    """Parse a network; returns (network, extras) where extras holds any
    non-schema top-level keys (input_runs, output_run, ...)."""
    d = json.loads(text)
    net = network_from_dict(d)
    extras = {k: v for k, v in d.items()
              if k not in ("wire_count", "meta", "stages")}
    return net, extras

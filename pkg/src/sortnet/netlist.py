"""Threshold-logic netlist realization of sorting networks.

An s-sorter on binary signals becomes s unit-weight threshold gates over the
same s inputs: the output at rank k (0-based, smallest first) fires when at
least s - k inputs are 1, so its threshold is s - k. With buffers enabled,
wires a stage leaves untouched get single-input threshold-1 gates, making
every level exactly N gates wide. Signals are named s{level}_{wire}; level 0
is the network input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Network


@dataclass(frozen=True)
class ThresholdGate:
    level: int
    output: str
    threshold: int
    inputs: tuple[str, ...]


@dataclass(frozen=True)
class Netlist:
    wire_count: int
    levels: int
    gates: tuple[ThresholdGate, ...]
    outputs: tuple[str, ...]


def _sig(level: int, wire: int) -> str:
    return f"s{level}_{wire}"


def netlist_from_network(net: Network, with_buffers: bool = False) -> Netlist:
    """Compile a network into unit-weight threshold gates, one level per
    stage. Each level reads only signals of the previous level."""
    wires = net.wire_count
    current = [_sig(0, w) for w in range(wires)]
    gates: list[ThresholdGate] = []
    for level, stage in enumerate(net.stages, start=1):
        nxt = list(current)
        touched = set()
        for group in stage:
            ins = tuple(current[w] for w in group)
            size = len(group)
            for rank, w in enumerate(group):
                out = _sig(level, w)
                gates.append(ThresholdGate(level, out, size - rank, ins))
                nxt[w] = out
                touched.add(w)
        if with_buffers:
            for w in range(wires):
                if w not in touched:
                    out = _sig(level, w)
                    gates.append(
                        ThresholdGate(level, out, 1, (current[w],)))
                    nxt[w] = out
        current = nxt
    return Netlist(wires, len(net.stages), tuple(gates), tuple(current))


def eval_netlist(nl: Netlist, bits) -> tuple[int, ...]:
    """Evaluate the netlist on binary inputs, input wire w = s0_{w}."""
    bits = tuple(bits)
    if len(bits) != nl.wire_count:
        raise ValueError(
            f"expected {nl.wire_count} input bits, got {len(bits)}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("netlist inputs must be 0 or 1")
    values = {_sig(0, w): b for w, b in enumerate(bits)}
    for gate in nl.gates:
        total = sum(values[s] for s in gate.inputs)
        values[gate.output] = 1 if total >= gate.threshold else 0
    return tuple(values[s] for s in nl.outputs)


def netlist_metrics(nl: Netlist) -> dict[str, int]:
    buffers = sum(
        1 for g in nl.gates if g.threshold == 1 and len(g.inputs) == 1)
    max_fanin = max((len(g.inputs) for g in nl.gates), default=0)
    return {
        "gate_count": len(nl.gates),
        "buffer_count": buffers,
        "levels": nl.levels,
        "max_fanin": max_fanin,
    }


def netlist_to_text(nl: Netlist) -> str:
    """Serialize: header "N L", then one line per gate:
    level output threshold input..."""
    lines = [f"{nl.wire_count} {nl.levels}"]
    for g in nl.gates:
        lines.append(
            f"{g.level} {g.output} {g.threshold} " + " ".join(g.inputs))
    return "\n".join(lines) + "\n"


def netlist_from_text(text: str) -> Netlist:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty netlist text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("netlist header must be two integers: N L")
    wires, levels = int(head[0]), int(head[1])
    gates = []
    final = {w: _sig(0, w) for w in range(wires)}
    final_level = {w: 0 for w in range(wires)}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) < 4:
            raise ValueError(f"malformed gate line: {ln!r}")
        level = int(parts[0])
        out = parts[1]
        threshold = int(parts[2])
        gates.append(
            ThresholdGate(level, out, threshold, tuple(parts[3:])))
        lv, wire = out.removeprefix("s").split("_")
        wire = int(wire)
        if int(lv) >= final_level[wire]:
            final_level[wire] = int(lv)
            final[wire] = out
    outputs = tuple(final[w] for w in range(wires))
    return Netlist(wires, levels, tuple(gates), outputs)

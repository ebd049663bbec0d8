"""Rendering: wire-diagram SVGs for networks and staircase plots for cost
tables.

The SVG draws one horizontal line per wire and one vertical bar per sorter
with a contact dot on each member wire. Bars of a stage that span
overlapping wire intervals are spread over several sub-columns; each stage
is grouped in a <g class="stage"> element.
"""

from __future__ import annotations

from pathlib import Path

from .model import Network

_MARGIN = 20
_DY = 14
_DX = 16
_STAGE_GAP = 14
_MAX_RENDER_WIRES = 512


def _subcolumns(stage) -> list[list[tuple[int, ...]]]:
    """Pack a stage's groups into sub-columns of disjoint wire intervals."""
    cols: list[list[tuple[int, ...]]] = []
    ends: list[int] = []
    for group in sorted(stage, key=lambda g: (min(g), max(g))):
        lo = min(group)
        for i, end in enumerate(ends):
            if end < lo:
                cols[i].append(group)
                ends[i] = max(group)
                break
        else:
            cols.append([group])
            ends.append(max(group))
    return cols


def render_knuth_svg(net: Network, out_path: str | Path | None = None) -> str:
    """Render a network as an SVG wire diagram; optionally write it to
    out_path. Returns the SVG text."""
    wires = net.wire_count
    if wires > _MAX_RENDER_WIRES:
        raise ValueError(
            f"wire_count {wires} exceeds render cap {_MAX_RENDER_WIRES}")
    packed = [_subcolumns(stage) for stage in net.stages]

    x = _MARGIN + 10
    stage_xs: list[list[int]] = []
    for cols in packed:
        xs = [x + c * _DX for c in range(len(cols))]
        stage_xs.append(xs)
        x = xs[-1] + _DX + _STAGE_GAP
    last = stage_xs[-1][-1] if stage_xs else _MARGIN + 10
    width = last + 10 + _MARGIN
    height = 2 * _MARGIN + max(wires - 1, 0) * _DY

    def wy(w: int) -> int:
        return _MARGIN + w * _DY

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">']
    for w in range(wires):
        parts.append(
            f'<line class="wire" x1="{_MARGIN}" y1="{wy(w)}" '
            f'x2="{width - _MARGIN}" y2="{wy(w)}" stroke="black" '
            'stroke-width="1"/>')
        parts.append(
            f'<text class="label" x="2" y="{wy(w) - 3}" '
            f'font-size="9" font-family="monospace">{w}</text>')
    for cols, xs in zip(packed, stage_xs):
        parts.append('<g class="stage">')
        for groups, gx in zip(cols, xs):
            for group in groups:
                parts.append(
                    f'<line class="sorter" x1="{gx}" y1="{wy(min(group))}" '
                    f'x2="{gx}" y2="{wy(max(group))}" stroke="black" '
                    'stroke-width="2"/>')
                for w in group:
                    parts.append(
                        f'<circle class="contact" cx="{gx}" cy="{wy(w)}" '
                        'r="3" fill="black"/>')
        parts.append('</g>')
    parts.append('</svg>')
    svg = "\n".join(parts) + "\n"
    if out_path is not None:
        Path(out_path).write_text(svg)
    return svg


def save_staircase_png(path: str | Path, header: tuple[str, ...], rows, *,
                       log_y: bool = True, ylabel: str = "value",
                       title: str | None = None) -> None:
    """Plot table rows as step curves, one series per value column, x axis
    log base 2, and save as PNG."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for i, name in enumerate(header[1:], start=1):
        ax.step(xs, [r[i] for r in rows], where="post", label=name)
    ax.set_xscale("log", base=2)
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel(header[0])
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

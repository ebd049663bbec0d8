"""Command-line interface.

Subcommands: generate (sorter networks), merger (merging networks), verify,
cost, tables, netlist, render. Payloads (JSON, CSV, netlist text, SVG) go
to --out when given, otherwise to stdout; human-readable summaries go to
stdout when the payload went to a file, otherwise to stderr. Exit codes:
0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .constructors import alg1_merge, alg2_merge, alg3_sorter, padded_sorter
from .costs import (OBJECTIVES, buffers_ours, buffers_ssmk, emit_tables,
                    gates_ours_nobuf, gates_ssmk_nobuf, gates_with_buffers,
                    latency_ours, latency_ssmk, plan_search, reduction,
                    rows_to_csv, sorters_ours, sorters_ssmk)
from .model import (Network, network_from_json, network_to_json,
                    structural_metrics)
from .netlist import netlist_from_network, netlist_metrics, netlist_to_text
from .render import render_knuth_svg, save_staircase_png
from .verify import (verify_merger_zero_one, verify_network_exhaustive,
                     verify_network_random)

_FIGS = ("fig8", "fig9")


def _emit(payload: str, out: str | None, summary: list[str]) -> None:
    """Write the payload to --out (summary to stdout) or to stdout
    (summary to stderr)."""
    if out is not None:
        Path(out).write_text(payload)
        dest = sys.stdout
        print(f"wrote {out}", file=dest)
    else:
        sys.stdout.write(payload)
        dest = sys.stderr
    for line in summary:
        print(line, file=dest)


def _net_summary(net: Network) -> list[str]:
    lines = [f"family={net.meta.family}"]
    for key in ("n", "m", "p", "padded_from"):
        val = getattr(net.meta, key)
        if val is not None:
            lines.append(f"{key}={val}")
    lines.append(f"wire_count={net.wire_count}")
    for key, val in structural_metrics(net).items():
        lines.append(f"{key}={val}")
    return lines


def _cmd_generate(args) -> int:
    if args.N is not None:
        if args.n is not None or args.p is not None:
            raise ValueError("use either --n/--p or --N, not both")
        net, plan = padded_sorter(args.N, args.nb, args.objective)
        summary = _net_summary(net)
        summary += [f"plan_objective={plan.objective}",
                    f"plan_value={plan.objective_value}",
                    f"plan_latency={plan.latency}"]
    else:
        if args.n is None or args.p is None:
            raise ValueError("need --n and --p, or --N")
        net = alg3_sorter(args.n, args.p)
        summary = _net_summary(net)
    _emit(network_to_json(net), args.out, summary)
    return 0


def _cmd_merger(args) -> int:
    if (args.m is None) == (args.p is None):
        raise ValueError("need exactly one of --m or --p")
    if args.m is not None:
        m = args.m
        runs = [tuple(range(j * m, (j + 1) * m)) for j in range(args.n)]
        res = alg1_merge(runs, force=args.force)
    else:
        m = args.n ** (args.p - 1)
        runs = [tuple(range(j * m, (j + 1) * m)) for j in range(args.n)]
        res = alg2_merge(runs, args.n, args.p)
    net = res.network()
    payload = network_to_json(
        net, extra={"input_runs": res.input_runs,
                    "output_run": res.output_run})
    _emit(payload, args.out, _net_summary(net))
    return 0


class _FileMerger:
    """Merger view of a network file carrying input_runs/output_run."""

    def __init__(self, net: Network, extras: dict):
        self.stages = net.stages
        self.input_runs = tuple(tuple(r) for r in extras["input_runs"])
        self.output_run = tuple(extras["output_run"])
        self.n = len(self.input_runs)
        self.checks = ()


def _cmd_verify(args) -> int:
    net, extras = network_from_json(Path(args.netfile).read_text())
    mode = args.mode
    if mode == "auto":
        if "input_runs" in extras:
            mode = "zero-one"
        elif net.wire_count <= 30:
            mode = "exhaustive"
        else:
            mode = "random"
    if mode == "zero-one":
        if "input_runs" not in extras:
            raise ValueError(
                "zero-one mode needs a merger file with input_runs")
        report = verify_merger_zero_one(
            _FileMerger(net, extras), budget=args.budget,
            allow_sampling=args.allow_sampling, samples=args.samples,
            seed=args.seed)
    elif mode == "exhaustive":
        report = verify_network_exhaustive(net)
    else:
        report = verify_network_random(
            net, samples=args.samples, seed=args.seed)
    if report.ok:
        print(f"{report.cases_run}/{report.cases_run} pass")
        return 0
    print(f"{report.failure_count}/{report.cases_run} fail")
    for case in report.failures:
        print("  fail: " + ",".join(str(x) for x in case))
    return 1


def _cost_pair(n: int, p: int) -> dict:
    N = n ** p
    lo, ls = latency_ours(n, p), latency_ssmk(n, p)
    go, gs = gates_ours_nobuf(n, p), gates_ssmk_nobuf(n, p)
    return {
        "n": n, "p": p, "N": N,
        "latency_ours": lo, "latency_ssmk": ls,
        "sorters_ours": sorters_ours(n, p),
        "sorters_ssmk": sorters_ssmk(n, p),
        "gates_ours": go, "gates_ssmk": gs,
        "buffers_ours": buffers_ours(n, p),
        "buffers_ssmk": buffers_ssmk(n, p),
        "gates_total_ours": gates_with_buffers(N, lo),
        "gates_total_ssmk": gates_with_buffers(N, ls),
        "reduction_sorters": reduction(sorters_ssmk(n, p),
                                       sorters_ours(n, p)),
        "reduction_gates": reduction(gs, go),
    }


def _cmd_cost(args) -> int:
    if args.N is not None:
        if args.n is not None or args.p is not None:
            raise ValueError("use either --n/--p or --N, not both")
        plan = plan_search(args.N, args.nb, args.objective)
        data = {
            "N": plan.N, "objective": plan.objective,
            "objective_value": plan.objective_value, "p": plan.p,
            "n_prime": plan.n_prime, "padded_N": plan.padded_N,
            "latency": plan.latency,
        }
    else:
        if args.n is None or args.p is None:
            raise ValueError("need --n and --p, or --N")
        data = _cost_pair(args.n, args.p)
    if args.json:
        print(json.dumps(data, separators=(",", ":")))
    else:
        for key, val in data.items():
            print(f"{key}={val}")
    return 0


def _cmd_tables(args) -> int:
    is_fig = args.which in _FIGS
    if args.plot and not is_fig:
        raise ValueError("--plot only applies to fig8/fig9")
    header, rows = emit_tables(args.which, n_b=args.nb, limit=args.limit)
    csv = rows_to_csv(header, rows)
    plot_path = None
    if is_fig and not args.no_plot:
        if args.plot:
            plot_path = args.plot
        elif args.out:
            plot_path = str(Path(args.out).with_suffix(".png"))
    summary = [f"rows={len(rows)}"]
    if plot_path:
        if args.which == "fig8":
            save_staircase_png(plot_path, header, rows, log_y=True,
                               ylabel="sorters")
        else:
            save_staircase_png(plot_path, header, rows, log_y=False,
                               ylabel="stages")
        summary.append(f"plot={plot_path}")
    _emit(csv, args.out, summary)
    return 0


def _cmd_netlist(args) -> int:
    net, _ = network_from_json(Path(args.netfile).read_text())
    nl = netlist_from_network(net, with_buffers=args.buffers)
    summary = [f"{k}={v}" for k, v in netlist_metrics(nl).items()]
    _emit(netlist_to_text(nl), args.out, summary)
    return 0


def _cmd_render(args) -> int:
    net, _ = network_from_json(Path(args.netfile).read_text())
    svg = render_knuth_svg(net)
    metrics = structural_metrics(net)
    summary = [f"wires={net.wire_count}",
               f"stages={metrics['stage_count']}",
               f"sorters={metrics['sorter_count']}"]
    _emit(svg, args.out, summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sortnet",
        description="multiway sorting network construction, verification, "
                    "and cost analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a sorter network (JSON)")
    g.add_argument("--n", type=int, help="basic sorter size (prime)")
    g.add_argument("--p", type=int, help="exponent; network sorts n**p")
    g.add_argument("--N", type=int, help="arbitrary input count (padded)")
    g.add_argument("--nb", type=int, default=20,
                   help="largest available basic sorter (with --N)")
    g.add_argument("--objective", choices=("sorters", "gates"),
                   default="sorters", help="plan objective (with --N)")
    g.add_argument("--out", help="output JSON path")
    g.set_defaults(func=_cmd_generate)

    m = sub.add_parser("merger", help="build a merging network (JSON)")
    m.add_argument("--n", type=int, required=True, help="number of runs")
    m.add_argument("--m", type=int, help="run length (single-level merger)")
    m.add_argument("--p", type=int,
                   help="exponent; merges n runs of n**(p-1)")
    m.add_argument("--force", action="store_true",
                   help="allow composite odd run length")
    m.add_argument("--out", help="output JSON path")
    m.set_defaults(func=_cmd_merger)

    v = sub.add_parser("verify", help="verify a network file")
    v.add_argument("netfile")
    v.add_argument("--mode",
                   choices=("auto", "zero-one", "exhaustive", "random"),
                   default="auto")
    v.add_argument("--samples", type=int, default=10_000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--budget", type=int, default=20_000_000,
                   help="max exhaustive zero-one cases")
    v.add_argument("--allow-sampling", action="store_true",
                   help="subsample zero-one spaces over budget")
    v.set_defaults(func=_cmd_verify)

    c = sub.add_parser("cost", help="closed-form cost metrics")
    c.add_argument("--n", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--N", type=int, help="plan search for this input count")
    c.add_argument("--nb", type=int, default=20)
    c.add_argument("--objective", choices=OBJECTIVES,
                   default="sorters-ours")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=_cmd_cost)

    t = sub.add_parser("tables", help="emit a cost table as CSV")
    t.add_argument("--which", required=True,
                   choices=("1", "2", "3", "4", "5", "fig8", "fig9"))
    t.add_argument("--nb", type=int, help="largest available basic sorter")
    t.add_argument("--limit", type=int, help="largest N to tabulate")
    t.add_argument("--out", help="output CSV path")
    t.add_argument("--plot", help="plot PNG path (fig8/fig9)")
    t.add_argument("--no-plot", action="store_true",
                   help="skip the default plot next to --out")
    t.set_defaults(func=_cmd_tables)

    nl = sub.add_parser("netlist", help="threshold netlist of a network")
    nl.add_argument("netfile")
    nl.add_argument("--buffers", action="store_true",
                    help="insert threshold-1 buffers on untouched wires")
    nl.add_argument("--out", help="output netlist path")
    nl.set_defaults(func=_cmd_netlist)

    r = sub.add_parser("render", help="render a network as SVG")
    r.add_argument("netfile")
    r.add_argument("--out", help="output SVG path")
    r.set_defaults(func=_cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

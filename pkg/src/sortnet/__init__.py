"""Construction, verification, and cost analysis of multiway sorting
networks built from n-input sorters."""

from .constructors import (LevelCheck, MergerResult, alg1_merge, alg2_merge,
                           alg3_sorter, batcher_merge, batcher_sorter,
                           boundary_stage, chain_stage, padded_sorter)
from .costs import (OBJECTIVES, Plan, buffers_ours, buffers_ssmk,
                    ceil_nth_root, emit_tables, gates_ours_nobuf,
                    gates_ssmk_nobuf, gates_with_buffers, is_prime,
                    latency_ours, latency_ssmk, next_prime_geq, plan_search,
                    reduction, rows_to_csv, sorters_ours, sorters_ssmk)
from .model import (FAMILIES, Meta, Network, SimTrace, make_network,
                    network_from_dict, network_from_json, network_to_dict,
                    network_to_json, simulate, simulate_batch,
                    simulate_binary_packed, structural_metrics,
                    validate_network)
from .netlist import (Netlist, ThresholdGate, eval_netlist, netlist_metrics,
                      netlist_from_network, netlist_from_text,
                      netlist_to_text)
from .render import render_knuth_svg, save_staircase_png
from .verify import (VerifyReport, check_stage_invariants,
                     verify_merger_zero_one, verify_network_exhaustive,
                     verify_network_random)

__version__ = "0.1.0"

__all__ = [
    "FAMILIES", "LevelCheck", "Meta", "MergerResult", "Netlist", "Network",
    "OBJECTIVES", "Plan", "SimTrace", "ThresholdGate", "VerifyReport",
    "alg1_merge", "alg2_merge", "alg3_sorter", "batcher_merge",
    "batcher_sorter", "boundary_stage", "buffers_ours", "buffers_ssmk",
    "ceil_nth_root", "chain_stage", "check_stage_invariants", "emit_tables",
    "eval_netlist", "gates_ours_nobuf", "gates_ssmk_nobuf",
    "gates_with_buffers", "is_prime", "latency_ours", "latency_ssmk",
    "make_network", "netlist_from_network", "netlist_from_text",
    "netlist_metrics", "netlist_to_text", "network_from_dict",
    "network_from_json", "network_to_dict", "network_to_json",
    "next_prime_geq", "padded_sorter", "plan_search", "reduction",
    "render_knuth_svg", "rows_to_csv", "save_staircase_png", "simulate",
    "simulate_batch", "simulate_binary_packed", "structural_metrics",
    "validate_network", "verify_merger_zero_one",
    "verify_network_exhaustive", "verify_network_random", "__version__",
]

# -*- coding: utf-8 -*-
"""
ripple exact - 窮舉精確計數（小規模圖）
"""

import argparse
import time

from ripple_toolkit.cli import rich_ui
from ripple_toolkit.cli.commands.common import load_graph_from_args
from ripple_toolkit.cli.config_handler import load_and_merge_config
from ripple_toolkit.exceptions import ConfigurationError
from ripple_toolkit.outputs.output_manager import ResultWriter, build_envelope
from ripple_toolkit.processors.oracle import count_rows, exact_count_vector


def cmd_exact(args: argparse.Namespace) -> int:
    """以 ESU 列舉計算 C[k]，輸出與估計結果相同的結構"""
    config = load_and_merge_config(args)
    k = config["run"]["k"]
    if not 1 <= k <= 12:
        raise ConfigurationError(f"k must lie in 1..12 for exact counting (got {k})")
    cap = int(config["oracle"]["cis_cap"])
    writer = ResultWriter(config["output"].get("format", "json"), include_timing=not args.no_timing)

    g = load_graph_from_args(args)
    start = time.perf_counter()
    exact = exact_count_vector(g, k, cap=cap)
    elapsed = time.perf_counter() - start

    rows = count_rows(exact.as_count_vector())
    for row in rows:
        row["estimate"] = int(row["estimate"])
    data = build_envelope(config={"k": k, "cis_cap": cap, "exact": True}, counts=rows)
    writer.write(data, args.output, timing={"wall_time": round(elapsed, 6)})
    if not args.quiet:
        rich_ui.print_counts_summary(rows, title=f"CIS[{k}] 精確計數（{exact.total:,}）")
    return 0

# -*- coding: utf-8 -*-
"""
ripple count - Ripple 估計 CIS[k] 計數
"""

import argparse

from ripple_toolkit.cli import rich_ui
from ripple_toolkit.cli.commands.common import load_graph_from_args, seeds_from_args
from ripple_toolkit.cli.config_handler import build_run_config, load_and_merge_config
from ripple_toolkit.outputs.output_manager import ResultWriter
from ripple_toolkit.processors.ripple_engine import run


def cmd_count(args: argparse.Namespace) -> int:
    """
    執行 Ripple 估計並寫出結果

    Args:
        args: 命令列引數

    Returns:
        int: 結束碼（例外由 main 轉換）
    """
    config = load_and_merge_config(args)
    cfg = build_run_config(config)
    writer = ResultWriter(config["output"].get("format", "json"), include_timing=not args.no_timing)

    g = load_graph_from_args(args)
    seeds = seeds_from_args(args, g, cfg)

    show_progress = bool(config["output"].get("show_progress", True)) and not (args.quiet or args.no_progress)
    with rich_ui.stratum_progress(total=2, enabled=show_progress) as callback:
        result = run(g, cfg, seeds=seeds, progress_callback=callback)

    writer.write(
        result.to_dict(include_reservoirs=args.reservoirs),
        args.output,
        timing=result.timing(),
    )
    if not args.quiet:
        rich_ui.print_result_summary(result)
    return 0

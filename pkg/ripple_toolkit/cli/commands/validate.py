# -*- coding: utf-8 -*-
"""
ripple validate - 檢查分層是否保持遍歷性（小規模圖）
"""

import argparse
import json
from pathlib import Path

from ripple_toolkit.cli import rich_ui
from ripple_toolkit.cli.commands.common import load_graph_from_args, seeds_from_args
from ripple_toolkit.cli.config_handler import build_run_config, load_and_merge_config
from ripple_toolkit.processors.stratify import Stratification, validate_eps
from ripple_toolkit.utils.logger import logger


def cmd_validate(args: argparse.Namespace) -> int:
    """
    建立種子與分層後窮舉檢查 EPS 條件

    Returns:
        int: 0 表示通過，1 表示有違反
    """
    config = load_and_merge_config(args)
    cfg = build_run_config(config)
    g = load_graph_from_args(args)
    seeds = seeds_from_args(args, g, cfg)
    strat = Stratification.build(g, seeds, cfg.k)

    report = validate_eps(g, strat, cfg.k, cap=int(config["oracle"]["hon_cap"]))

    if args.output:
        path = Path(args.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
        logger.info("EPS report written to %s", path)

    if not args.quiet:
        show = rich_ui.print_info if report.valid else rich_ui.print_warning
        for line in report.to_summary().splitlines():
            show(line)
    if report.valid:
        rich_ui.print_success("EPS valid")
        return 0
    rich_ui.print_error("EPS violated")
    return 1

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Ripple Toolkit CLI 主入口

子命令：count / exact / validate / bench
結束碼：0 成功；1 估計或驗證失敗；2 設定或輸入錯誤；3 超過資源上限
"""

import argparse
import sys
from typing import List, Optional

from ripple_toolkit import __version__
from ripple_toolkit.exceptions import (
    ConfigurationError,
    EstimatorError,
    GraphFormatError,
    InvalidSubgraphError,
    ResourceCapError,
    SamplingError,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML 設定檔（預設 ./config.yaml）")
    common.add_argument("-v", "--verbose", action="store_true", help="顯示除錯日誌")
    common.add_argument("-q", "--quiet", action="store_true", help="只顯示警告與錯誤")
    common.add_argument("--k", type=int, help="子圖大小 k")
    return common


def _graph_parser() -> argparse.ArgumentParser:
    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--graph", required=True, help="邊列表檔（每行 'u v'，# 開頭為註解）")
    graph.add_argument("--labels", help="頂點標籤檔（第 i 行為頂點 i 的標籤，0..255）")
    graph.add_argument("--remap", action="store_true", help="將任意頂點 id 重新編號為 0..n-1")
    graph.add_argument("--id-map-out", dest="id_map_out", help="寫出重新編號的對照表")
    return graph


def _run_parser() -> argparse.ArgumentParser:
    run = argparse.ArgumentParser(add_help=False)
    run.add_argument("--epsilon", type=float, help="每層相對標準誤上限 ε")
    run.add_argument("--n1", type=int, help="種子數量 |I₁|")
    run.add_argument("--reservoir", type=int, help="reservoir 容量 M")
    run.add_argument("--workers", type=int, help="每層的執行緒數")
    run.add_argument("--seed", type=int, help="隨機種子")
    run.add_argument("--min-tours", dest="min_tours", type=int, help="每層最少 tour 數")
    run.add_argument("--max-tours", dest="max_tours", type=int, help="每層最多 tour 數")
    run.add_argument("--max-steps", dest="max_steps", type=int, help="單一 tour 最大步數")
    run.add_argument("--batch", type=int, help="每批 tour 數（預設 64 × workers）")
    run.add_argument("--seeds-in", dest="seeds_in", help="從 JSON 讀取種子")
    run.add_argument("--seeds-out", dest="seeds_out", help="將種子寫出為 JSON")
    return run


def _output_parser() -> argparse.ArgumentParser:
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("-o", "--output", help="輸出路徑（預設標準輸出）")
    output.add_argument("--format", choices=["json", "csv"], help="輸出格式")
    output.add_argument("--no-timing", dest="no_timing", action="store_true", help="JSON 不含 timing 物件")
    return output


def build_parser() -> argparse.ArgumentParser:
    """建立命令列解析器"""
    parser = argparse.ArgumentParser(
        prog="ripple",
        description="Ripple Toolkit - 連通誘導子圖計數估計",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  ripple count --graph g.txt --k 5 --epsilon 0.01 --seed 7
  ripple exact --graph g.txt --k 4 -o exact.json
  ripple validate --graph g.txt --k 4 --n1 2
  ripple bench sweep.json -o bench.csv --repeats 10
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", help="可用命令")

    common, graph, run, output = _common_parser(), _graph_parser(), _run_parser(), _output_parser()

    count_parser = subparsers.add_parser("count", parents=[common, graph, run, output], help="Ripple 估計")
    count_parser.add_argument("--no-progress", dest="no_progress", action="store_true", help="不顯示進度條")
    count_parser.add_argument("--reservoirs", action="store_true", help="JSON 包含 reservoir 診斷")

    subparsers.add_parser("exact", parents=[common, graph, output], help="精確計數（小規模圖）")

    validate_parser = subparsers.add_parser("validate", parents=[common, graph, run], help="檢查分層遍歷性")
    validate_parser.add_argument("-o", "--output", help="EPS 報告 JSON 路徑")

    bench_parser = subparsers.add_parser("bench", parents=[common], help="設定掃描基準")
    bench_parser.add_argument("sweep", help="掃描檔（JSON 列表）")
    bench_parser.add_argument("--repeats", type=int, default=10, help="每個設定的執行次數")
    bench_parser.add_argument("-o", "--output", help="CSV 輸出路徑（預設標準輸出）")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """主入口函數"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_OK

    from ripple_toolkit.cli import rich_ui
    from ripple_toolkit.cli.config_handler import configure_logging

    try:
        configure_logging(args)
        if args.command == "count":
            from ripple_toolkit.cli.commands.count import cmd_count
            return cmd_count(args)

        if args.command == "exact":
            from ripple_toolkit.cli.commands.exact import cmd_exact

            return cmd_exact(args)

        if args.command == "validate":
            from ripple_toolkit.cli.commands.validate import cmd_validate

            return cmd_validate(args)

        if args.command == "bench":
            from ripple_toolkit.cli.commands.benchmark import cmd_bench

            return cmd_bench(args)

        parser.print_help()
        return EXIT_CONFIG

    except KeyboardInterrupt:
        rich_ui.print_warning("操作已取消")
        return EXIT_FAILURE
    except ResourceCapError as e:
        rich_ui.print_error(f"資源上限：{e}")
        return EXIT_RESOURCE
    except (ConfigurationError, GraphFormatError, InvalidSubgraphError, OSError) as e:
        rich_ui.print_error(f"設定錯誤：{e}")
        return EXIT_CONFIG
    except (EstimatorError, SamplingError) as e:
        rich_ui.print_error(f"估計失敗：{e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())

# -*- coding: utf-8 -*-
"""
Ripple Toolkit - CLI 美化模組

使用 rich 庫顯示摘要表格與進度；未安裝 rich 時退回純文字輸出。
所有終端輸出都走 stderr，stdout 保留給 JSON / CSV 結果。
"""

import sys
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional

try:
    from rich import box
    from rich.console import Console
    from rich.panel import Panel
    from rich.progress import BarColumn, Progress, SpinnerColumn, TaskProgressColumn, TextColumn
    from rich.table import Table

    HAS_RICH = True
except ImportError:
    HAS_RICH = False

if sys.platform == "win32":
    ICONS = {"success": "[OK]", "error": "[X]", "warning": "[!]", "info": "[i]"}
else:
    ICONS = {"success": "✅", "error": "❌", "warning": "⚠️", "info": "ℹ️"}

console = Console(stderr=True) if HAS_RICH else None


def _plain(message: str) -> None:
    print(message, file=sys.stderr)


def print_success(message: str):
    """顯示成功訊息"""
    if not HAS_RICH:
        _plain(f"{ICONS['success']} {message}")
        return
    console.print(f"{ICONS['success']} {message}", style="bold green")


def print_error(message: str):
    """顯示錯誤訊息"""
    if not HAS_RICH:
        _plain(f"{ICONS['error']} {message}")
        return
    console.print(f"{ICONS['error']} {message}", style="bold red")


def print_warning(message: str):
    """顯示警告訊息"""
    if not HAS_RICH:
        _plain(f"{ICONS['warning']} {message}")
        return
    console.print(f"{ICONS['warning']} {message}", style="bold yellow")


def print_info(message: str):
    if not HAS_RICH:
        _plain(f"{ICONS['info']} {message}")
        return
    console.print(f"{ICONS['info']} {message}", style="bold blue")


def create_counts_table(rows: List[Dict[str, Any]], title: str = "CIS 模式計數", limit: int = 20):
    """
    建立模式計數表格

    Args:
        rows: count_rows() 的輸出
        title: 標題
        limit: 最多顯示列數
    """
    if not HAS_RICH:
        return None

    table = Table(title=title, box=box.ROUNDED, show_header=True, header_style="bold magenta")
    table.add_column("模式", style="cyan", no_wrap=True)
    table.add_column("階數", justify="right")
    table.add_column("邊數", justify="right")
    table.add_column("密度", justify="right")
    table.add_column("星形", justify="center")
    table.add_column("估計值", justify="right", style="green")

    for row in rows[:limit]:
        table.add_row(
            row["pattern_hex"],
            str(row["order"]),
            str(row["edges"]),
            f"{row['density']:.3f}",
            "✓" if row["is_star"] else "",
            f"{row['estimate']:,.4f}",
        )
    if len(rows) > limit:
        table.add_row(f"... +{len(rows) - limit}", "", "", "", "", "")
    return table


def _format_interval(low: Optional[float], high: Optional[float]) -> str:
    if low is None or high is None:
        return "-"
    return f"{low:,.2f} ~ {high:,.2f}"


def create_strata_table(strata: List[Dict[str, Any]]):
    """建立分層統計表格（略過的分層不顯示）"""
    if not HAS_RICH:
        return None

    table = Table(title="分層統計", box=box.SIMPLE, show_header=True, header_style="bold cyan")
    table.add_column("r", justify="right")
    table.add_column("d̂(ζ)", justify="right")
    table.add_column("tours", justify="right")
    table.add_column("平均長度", justify="right")
    table.add_column("HON 邊數估計", justify="right")
    table.add_column("95% CI", justify="right")
    table.add_column("貢獻", justify="right", style="green")
    table.add_column("reservoir 壓力", justify="right")

    for s in strata:
        if s.get("skipped"):
            continue
        if s.get("exact"):
            table.add_row("1", "-", "exact", "-", f"{s['num_edges']:,}", "exact", f"{s['total']:,.4f}", "-")
            continue
        table.add_row(
            str(s["r"]),
            f"{s['deg_hat']:,.2f}",
            f"{s['m_r']:,}",
            f"{s['mean_tour_len']:.2f}",
            f"{s['edge_estimate']:,.2f}",
            _format_interval(s.get("ci_low"), s.get("ci_high")),
            f"{s['total']:,.4f}",
            f"{s['reservoir_pressure']:.2f}",
        )
    return table


def print_result_summary(result) -> None:
    """
    顯示估計結果摘要

    Args:
        result: RippleResult
    """
    if not HAS_RICH:
        _plain(result.to_summary())
        return

    data = result.to_dict()
    edge_low, edge_high = data["edge_ci"]
    console.print(create_strata_table(data["strata"]))
    console.print(create_counts_table(data["counts"], title=f"CIS[{result.k}] 估計"))
    console.print(
        Panel(
            f"總數：[bold green]{result.total:,.4f}[/]\n"
            f"使用分層：{result.strata_used} / {result.r_max}\n"
            f"總 tour 數：{result.total_tours:,}\n"
            f"HON 邊數估計：{result.edge_estimate:,.2f}（95% CI {edge_low:,.2f} ~ {edge_high:,.2f}）\n"
            f"執行時間：{result.wall_time:.2f} 秒",
            title="Ripple 估計",
            border_style="green",
        )
    )
    for warning in result.warnings[:5]:
        print_warning(warning)


def print_counts_summary(rows: List[Dict[str, Any]], title: str) -> None:
    if not HAS_RICH:
        total = sum(row["estimate"] for row in rows)
        _plain(f"{title}: {len(rows)} patterns, total {total:,}")
        return
    console.print(create_counts_table(rows, title=title))


@contextmanager
def stratum_progress(total: int, enabled: bool = True) -> Iterator[Optional[Any]]:
    """
    分層進度條

    Yields:
        callback(r, r_max) 或 None（停用時）
    """
    if not enabled or not HAS_RICH:
        yield None
        return

    progress = Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TaskProgressColumn(),
        console=console,
        transient=True,
    )
    with progress:
        task = progress.add_task("分層", total=total)

        def callback(r: int, r_max: int) -> None:
            progress.update(task, completed=r, total=r_max, description=f"分層 {r}/{r_max}")

        yield callback


__all__ = [
    "print_success",
    "print_error",
    "print_warning",
    "print_info",
    "create_counts_table",
    "create_strata_table",
    "print_result_summary",
    "print_counts_summary",
    "stratum_progress",
    "HAS_RICH",
]

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ripple bench - 設定掃描與精確度基準

掃描檔為 JSON 列表，每個項目：
    {"graph": "er50.txt", "labels": null, "name": "eps-0.03", "runs": 10,
     "k": 5, "epsilon": 0.03, "n1": 16, ...其餘 RunConfig 欄位}

每次執行輸出一列 CSV；圖檔缺失或設定錯誤時輸出帶 error 欄位的列。
"""

import json
import os
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import psutil
from tqdm import tqdm

from ripple_toolkit.cli.config_handler import load_and_merge_config
from ripple_toolkit.core.graph import InputGraph, load_edge_list
from ripple_toolkit.core.models import RunConfig
from ripple_toolkit.exceptions import ConfigurationError, RippleToolkitError
from ripple_toolkit.outputs.output_manager import write_rows_csv
from ripple_toolkit.processors.oracle import ExactCounts, compare_counts, exact_count_vector
from ripple_toolkit.processors.ripple_engine import run
from ripple_toolkit.utils.logger import logger

BENCH_COLUMNS = [
    "config",
    "graph",
    "run",
    "k",
    "epsilon",
    "n1",
    "reservoir_capacity",
    "workers",
    "rng_seed",
    "total",
    "exact_total",
    "relative_error",
    "l2",
    "linf",
    "wall_time",
    "peak_rss_mb",
    "tours",
    "tours_per_stratum",
    "error",
]

# 掃描項目中非 RunConfig 的欄位
ENTRY_KEYS = ("graph", "labels", "name", "runs", "remap")


def load_sweep(path: str) -> List[Dict[str, Any]]:
    """讀取掃描檔"""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"invalid sweep file {path}: {e}") from e
    if not isinstance(data, list) or not all(isinstance(entry, dict) for entry in data):
        raise ConfigurationError(f"sweep file {path} must contain a JSON list of objects")
    return data


class _OracleCache:
    """(graph, k) -> ExactCounts；超過上限時記為 None"""

    def __init__(self, cis_cap: int):
        self.cis_cap = cis_cap
        self._cache: Dict[Tuple[str, int], Optional[ExactCounts]] = {}

    def get(self, key: str, g: InputGraph, k: int) -> Optional[ExactCounts]:
        if (key, k) not in self._cache:
            try:
                self._cache[(key, k)] = exact_count_vector(g, k, cap=self.cis_cap)
            except RippleToolkitError as e:
                logger.warning("Oracle unavailable for %s (k=%d): %s", key, k, e)
                self._cache[(key, k)] = None
        return self._cache[(key, k)]


def _rss_mb(process: psutil.Process) -> float:
    return process.memory_info().rss / 1024 / 1024


def _base_row(index: int, entry: Dict[str, Any], run_idx: int) -> Dict[str, Any]:
    row = {column: "" for column in BENCH_COLUMNS}
    row.update(
        config=entry.get("name", index),
        graph=entry.get("graph", ""),
        run=run_idx,
    )
    return row


def cmd_bench(args) -> int:
    """
    依掃描檔逐項執行 Ripple，並與精確計數比較

    Args:
        args: 命令列引數（sweep、--repeats、--output）

    Returns:
        int: 0（個別失敗記錄在 error 欄位）
    """
    config = load_and_merge_config(args)
    sweep = load_sweep(args.sweep)
    base_run = dict(config["run"])
    oracle = _OracleCache(int(config["oracle"]["cis_cap"]))
    graphs: Dict[str, InputGraph] = {}
    process = psutil.Process(os.getpid())
    peak = 0.0

    logger.info("=" * 60)
    logger.info(" Ripple benchmark: %d configurations", len(sweep))
    logger.info("=" * 60)

    jobs = []
    for index, entry in enumerate(sweep):
        repeats = int(entry.get("runs", args.repeats))
        jobs.extend((index, entry, run_idx) for run_idx in range(repeats))

    rows: List[Dict[str, Any]] = []
    for index, entry, run_idx in tqdm(jobs, desc="bench", unit="run", disable=args.quiet or not jobs):
        row = _base_row(index, entry, run_idx)
        try:
            run_fields = {**base_run, **{key: value for key, value in entry.items() if key not in ENTRY_KEYS}}
            run_fields["rng_seed"] = int(run_fields.get("rng_seed", 0)) + run_idx
            cfg = RunConfig.from_mapping(run_fields)
            row.update({key: getattr(cfg, key) for key in ("k", "epsilon", "n1", "reservoir_capacity", "workers", "rng_seed")})

            graph_path = entry.get("graph")
            if not graph_path:
                raise ConfigurationError("sweep entry has no 'graph'")
            cache_key = f"{graph_path}|{entry.get('labels')}|{bool(entry.get('remap'))}"
            if cache_key not in graphs:
                graphs[cache_key] = load_edge_list(graph_path, labels_path=entry.get("labels"), remap=bool(entry.get("remap")))
            g = graphs[cache_key]

            result = run(g, cfg)
            row.update(
                total=result.total,
                wall_time=round(result.wall_time, 6),
                tours=result.total_tours,
                tours_per_stratum=";".join(f"{s.r}:{s.m_r}" for s in result.per_stratum if not s.skipped),
            )
            exact = oracle.get(cache_key, g, cfg.k)
            if exact is not None:
                row["exact_total"] = exact.total
                row.update(compare_counts(result.counts, exact.as_count_vector()))
        except (RippleToolkitError, OSError) as e:
            logger.warning("Config %s run %d failed: %s", row["config"], run_idx, e)
            row["error"] = str(e)
        peak = max(peak, _rss_mb(process))
        row["peak_rss_mb"] = round(peak, 1)
        rows.append(row)

    write_rows_csv(rows, BENCH_COLUMNS, args.output)
    failed = sum(1 for row in rows if row["error"])
    logger.info("Benchmark finished: %d runs, %d failed", len(rows), failed)
    return 0


__all__ = ["cmd_bench", "load_sweep", "BENCH_COLUMNS"]

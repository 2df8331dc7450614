# -*- coding: utf-8 -*-
"""
輸出管理器 - 統一管理估計與精確計數的輸出

本模組負責：
- 共用的 JSON 結構（估計、精確計數、基準共用）
- CSV 輸出（每個模式一列）
- 輸出路徑管理（路徑為 None 或 "-" 時寫到標準輸出）
"""

import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

from ripple_toolkit.exceptions import ConfigurationError
from ripple_toolkit.utils.logger import logger

PathLike = Union[str, Path]

SUPPORTED_FORMATS = ("json", "csv")

COUNT_COLUMNS = ["pattern_hex", "order", "edges", "density", "is_star", "estimate"]


def build_envelope(
    config: Dict[str, Any],
    counts: List[Dict[str, Any]],
    strata: Optional[List[Dict[str, Any]]] = None,
    warnings: Optional[List[str]] = None,
    **extra: Any,
) -> Dict[str, Any]:
    """組合共用的結果結構"""
    total = sum(row["estimate"] for row in counts)
    data = {
        "config": config,
        "total": total,
        "counts": counts,
        "strata": strata or [],
        "warnings": warnings or [],
    }
    data.update(extra)
    return data


class ResultWriter:
    """
    結果寫出器

    Example:
        writer = ResultWriter(fmt="json")
        writer.write(result.to_dict(), "result.json", timing=result.timing())
    """

    def __init__(self, fmt: str = "json", include_timing: bool = True):
        """
        Args:
            fmt: 輸出格式 ('json' 或 'csv')
            include_timing: JSON 是否包含 timing 物件
        """
        fmt = fmt.lower()
        if fmt not in SUPPORTED_FORMATS:
            raise ConfigurationError(f"unsupported output format {fmt!r}; expected one of {SUPPORTED_FORMATS}")
        self.fmt = fmt
        self.include_timing = include_timing

    def render(self, data: Dict[str, Any], timing: Optional[Dict[str, Any]] = None) -> str:
        """轉換為文字"""
        if self.fmt == "csv":
            return self.render_csv(data.get("counts", []))
        payload = dict(data)
        if timing is not None and self.include_timing:
            payload["timing"] = timing
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @staticmethod
    def render_csv(rows: Iterable[Dict[str, Any]], columns: Sequence[str] = COUNT_COLUMNS) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        return buffer.getvalue()

    def write(
        self,
        data: Dict[str, Any],
        output_path: Optional[PathLike] = None,
        timing: Optional[Dict[str, Any]] = None,
    ) -> Optional[Path]:
        """
        寫出結果

        Args:
            data: to_dict() 產生的結構
            output_path: 輸出路徑（None 或 "-" 表示標準輸出）
            timing: 計時資訊（只寫入 JSON）

        Returns:
            Optional[Path]: 寫入的檔案路徑
        """
        text = self.render(data, timing=timing)
        if output_path is None or str(output_path) == "-":
            sys.stdout.write(text)
            sys.stdout.flush()
            return None
        path = Path(output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info("Result written to %s", path)
        return path


def write_rows_csv(rows: List[Dict[str, Any]], columns: Sequence[str], output_path: Optional[PathLike]) -> Optional[Path]:
    """寫出任意欄位的 CSV（bench 使用）"""
    text = ResultWriter.render_csv(rows, columns)
    if output_path is None or str(output_path) == "-":
        sys.stdout.write(text)
        return None
    path = Path(output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("CSV written to %s", path)
    return path


__all__ = ["ResultWriter", "build_envelope", "write_rows_csv", "SUPPORTED_FORMATS", "COUNT_COLUMNS"]

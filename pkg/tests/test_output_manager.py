# -*- coding: utf-8 -*-
"""
輸出管理器測試
"""

import csv
import io
import json

import pytest

from ripple_toolkit.exceptions import ConfigurationError
from ripple_toolkit.outputs.output_manager import (
    COUNT_COLUMNS,
    ResultWriter,
    build_envelope,
    write_rows_csv,
)

ROWS = [
    {"pattern_hex": "03000080", "order": 3, "edges": 2, "density": 0.666667, "is_star": True, "estimate": 2.0},
    {"pattern_hex": "030000e0", "order": 3, "edges": 3, "density": 1.0, "is_star": False, "estimate": 1.5},
]


class TestBuildEnvelope:
    """測試共用結構"""

    def test_total_and_defaults(self):
        data = build_envelope({"k": 3}, ROWS)

        assert data["total"] == pytest.approx(3.5)
        assert data["strata"] == []
        assert data["warnings"] == []

    def test_extra_fields(self):
        data = build_envelope({"k": 3}, [], warnings=["w"], exact=True)

        assert data["exact"] is True
        assert data["warnings"] == ["w"]


class TestResultWriter:
    """測試結果寫出"""

    def test_json_file_sorted_with_timing(self, tmp_path):
        writer = ResultWriter("json")

        path = writer.write(build_envelope({"k": 3}, ROWS), tmp_path / "out" / "r.json", timing={"wall_time": 1.5})

        text = path.read_text(encoding="utf-8")
        data = json.loads(text)
        assert data["timing"] == {"wall_time": 1.5}
        assert list(data) == sorted(data)

    def test_json_without_timing(self, tmp_path):
        writer = ResultWriter("json", include_timing=False)

        path = writer.write({"total": 1}, tmp_path / "r.json", timing={"wall_time": 1.5})

        assert "timing" not in json.loads(path.read_text(encoding="utf-8"))

    def test_stdout(self, capsys):
        assert ResultWriter("json").write({"total": 1}, "-") is None

        assert json.loads(capsys.readouterr().out) == {"total": 1}

    def test_csv(self, tmp_path):
        writer = ResultWriter("CSV")

        path = writer.write(build_envelope({"k": 3}, ROWS), tmp_path / "r.csv")

        rows = list(csv.DictReader(io.StringIO(path.read_text(encoding="utf-8"))))
        assert list(rows[0]) == COUNT_COLUMNS
        assert [row["estimate"] for row in rows] == ["2.0", "1.5"]

    def test_unsupported_format(self):
        with pytest.raises(ConfigurationError):
            ResultWriter("xml")


class TestWriteRowsCsv:
    """測試任意欄位 CSV"""

    def test_header_only(self, tmp_path):
        path = write_rows_csv([], ["a", "b"], tmp_path / "empty.csv")

        assert path.read_text(encoding="utf-8") == "a,b\n"

    def test_extra_keys_ignored(self, capsys):
        write_rows_csv([{"a": 1, "b": 2, "c": 3}], ["a", "b"], None)

        assert capsys.readouterr().out == "a,b\n1,2\n"

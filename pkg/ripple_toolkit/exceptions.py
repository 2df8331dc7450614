"""自定義異常類

這個模組定義了 Ripple Toolkit 的所有自定義異常，
提供更精確的錯誤處理和更好的調試體驗。

使用範例:
    from ripple_toolkit.exceptions import GraphFormatError

    if len(tokens) < 2:
        raise GraphFormatError("expected two vertex ids", path=path, line_no=7)
"""
from typing import Optional


class RippleToolkitError(Exception):
    """所有自定義異常的基類"""

    pass


class GraphFormatError(RippleToolkitError):
    """圖檔格式錯誤

    當邊列表或標籤檔無法解析時拋出，附帶檔案路徑與行號
    """

    def __init__(
        self, message: str, path: Optional[str] = None, line_no: Optional[int] = None
    ):
        self.path = path
        self.line_no = line_no
        location = ""
        if path is not None:
            location = f"{path}"
            if line_no is not None:
                location += f":{line_no}"
            location += ": "
        super().__init__(f"{location}{message}")


class ConfigurationError(RippleToolkitError):
    """配置錯誤

    當 RunConfig、設定檔或命令列引數不合法時拋出
    """

    pass


class InvalidSubgraphError(RippleToolkitError):
    """子圖前置條件錯誤

    例如對不連通子圖計算割點、超過標準型上限的階數
    """

    pass


class SamplingError(RippleToolkitError):
    """抽樣錯誤

    當鄰居抽樣超過嘗試上限、從空 reservoir 抽樣或隨機遊走卡住時拋出
    """

    pass


class TourAbortedError(SamplingError):
    """單一 tour 超過步數或拒絕次數上限"""

    def __init__(self, message: str, steps: int = 0):
        self.steps = steps
        super().__init__(message)


class EstimatorError(RippleToolkitError):
    """估計器中止

    當某個 stratum 的超節點度數估計大於零但沒有可用的起始狀態時拋出
    """

    pass


class ResourceCapError(RippleToolkitError):
    """資源上限錯誤

    當窮舉列舉、HON 建構或種子鄰域列舉超過設定上限時拋出
    """

    def __init__(self, message: str, cap: Optional[int] = None):
        self.cap = cap
        super().__init__(message)


__all__ = [
    "RippleToolkitError",
    "GraphFormatError",
    "ConfigurationError",
    "InvalidSubgraphError",
    "SamplingError",
    "TourAbortedError",
    "EstimatorError",
    "ResourceCapError",
]

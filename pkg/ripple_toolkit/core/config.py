# -*- coding: utf-8 -*-
"""
Ripple Toolkit - 環境配置模組

使用 Pydantic 管理環境變數。
"""

import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel

# 加載 .env 檔案
load_dotenv()


def _env_int(name: str) -> Optional[int]:
    value = os.getenv(name)
    if value is None or not value.strip():
        return None
    return int(value)


class Settings(BaseModel):
    """
    全域配置類別

    每次呼叫 ``load_settings()`` 都會重新讀取環境變數，方便測試覆寫。
    """

    # 工作執行緒數（RIPPLE_WORKERS 覆寫設定檔，但不覆寫 --workers）
    WORKERS: Optional[int] = None

    # 日誌設置
    LOG_LEVEL: str = "INFO"

    # 精確計數的資源上限
    ORACLE_CIS_CAP: int = 10_000_000
    ORACLE_HON_CAP: int = 1_000_000


def load_settings() -> Settings:
    """從環境變數建立 Settings"""
    return Settings(
        WORKERS=_env_int("RIPPLE_WORKERS"),
        LOG_LEVEL=os.getenv("RIPPLE_LOG_LEVEL", "INFO"),
        ORACLE_CIS_CAP=_env_int("RIPPLE_ORACLE_CIS_CAP") or 10_000_000,
        ORACLE_HON_CAP=_env_int("RIPPLE_ORACLE_HON_CAP") or 1_000_000,
    )


# 創建全域配置實例
settings = load_settings()

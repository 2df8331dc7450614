"""統一日誌配置模組

這個模組提供了一個統一的日誌配置系統。

使用範例:
    from ripple_toolkit.utils.logger import logger

    logger.info("Loaded graph: %d vertices", g.n)
    logger.warning("Only %d of %d seeds placed", got, wanted)
"""
import logging
import sys
from pathlib import Path
from typing import Optional

LOG_FORMAT = "[%(asctime)s] [%(name)s] [%(levelname)s] %(message)s"


def setup_logger(
    name: str = "ripple_toolkit",
    level: str = "INFO",
    log_file: Optional[Path] = None,
) -> logging.Logger:
    """
    設置統一的日誌格式

    Args:
        name: Logger 名稱
        level: 日誌級別 (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: 可選的日誌文件路徑

    Returns:
        配置好的 Logger 實例
    """
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, level.upper()))

    formatter = logging.Formatter(LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S")

    # 防止重複添加 handler（console 走 stderr，stdout 留給 JSON 輸出）
    if not any(type(h) is logging.StreamHandler for h in logger.handlers):
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(logging.DEBUG)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    # File handler (可選)
    if log_file:
        log_file = Path(log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def set_level(level: str) -> None:
    """調整全局 logger 的日誌級別"""
    logger.setLevel(getattr(logging, level.upper()))


# 全局 logger 實例
logger = setup_logger()


__all__ = ["logger", "setup_logger", "set_level"]

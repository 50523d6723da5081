"""
Wright Radii - Settings
运行配置

从环境变量读取默认值，CLI 参数可覆盖
"""

import os
from functools import lru_cache
from typing import Callable, TypeVar

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

T = TypeVar("T")

# 默认值
DEFAULT_ZERO_COUNT = 20
DEFAULT_TOL = 1e-14
DEFAULT_MAX_TERMS = 10_000
DEFAULT_SOLVER_TOL = 1e-12
DEFAULT_LOG_LEVEL = "INFO"


class Settings(BaseModel):
    """全局运行配置"""

    model_config = ConfigDict(frozen=True)

    threads: int = Field(ge=1)
    log_level: str = DEFAULT_LOG_LEVEL
    zero_count: int = Field(default=DEFAULT_ZERO_COUNT, ge=1)
    tol: float = Field(default=DEFAULT_TOL, gt=0)
    max_terms: int = Field(default=DEFAULT_MAX_TERMS, ge=1)
    solver_tol: float = Field(default=DEFAULT_SOLVER_TOL, gt=0)


def _env(name: str, default: T, cast: Callable[[str], T]) -> T:
    """读取环境变量，非法或非正值时回退到默认值"""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = cast(raw)
    except ValueError:
        logger.warning(f"⚠️  Invalid {name}={raw!r}, using default {default}")
        return default
    if isinstance(value, (int, float)) and value <= 0:
        logger.warning(f"⚠️  Non-positive {name}={raw!r}, using default {default}")
        return default
    return value


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    获取配置（进程内缓存）

    环境变量:
        WRIGHT_RADII_THREADS: 并行线程上限 (默认: CPU 核数)
        WRIGHT_RADII_LOG_LEVEL: 日志级别 (默认: INFO)
        WRIGHT_RADII_ZERO_COUNT: 零点表默认长度 (默认: 20)
        WRIGHT_RADII_TOL: 级数容差 (默认: 1e-14)
        WRIGHT_RADII_MAX_TERMS: 级数项数上限 (默认: 10000)
        WRIGHT_RADII_SOLVER_TOL: 半径求解容差 (默认: 1e-12)
    """
    return Settings(
        threads=_env("WRIGHT_RADII_THREADS", os.cpu_count() or 1, int),
        log_level=os.getenv("WRIGHT_RADII_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
        zero_count=_env("WRIGHT_RADII_ZERO_COUNT", DEFAULT_ZERO_COUNT, int),
        tol=_env("WRIGHT_RADII_TOL", DEFAULT_TOL, float),
        max_terms=_env("WRIGHT_RADII_MAX_TERMS", DEFAULT_MAX_TERMS, int),
        solver_tol=_env("WRIGHT_RADII_SOLVER_TOL", DEFAULT_SOLVER_TOL, float),
    )

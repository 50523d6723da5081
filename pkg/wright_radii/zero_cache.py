"""
Zero Cache - 零点表 JSON 缓存

一个缓存文件保存多个 ZeroTable（按参数区分），CLI 的 --zero-cache 使用
读取时：参数相同、零点个数足够、精度不低于请求值即命中
"""

import json
import os
import tempfile
import threading
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, List, Optional

from loguru import logger
from pydantic import ValidationError

from .models import WrightParams
from .zeros import DEFAULT_REFINE_TOL, ZeroTable, locate_zeros

# 同一缓存文件的所有 ZeroCache 实例共用一把锁
_PATH_LOCKS: Dict[Path, threading.Lock] = {}
_PATH_LOCKS_GUARD = threading.Lock()


def _lock_for(path: Path) -> threading.Lock:
    with _PATH_LOCKS_GUARD:
        lock = _PATH_LOCKS.get(path)
        if lock is None:
            lock = _PATH_LOCKS[path] = threading.Lock()
        return lock


class ZeroCache:
    """零点表缓存文件"""

    def __init__(self, path=None):
        # 优先使用传入路径，其次使用环境变量
        if path is None:
            path = os.getenv("WRIGHT_RADII_ZERO_CACHE", "wright_zeros.json")
        self.path = Path(path).resolve()
        self._lock = _lock_for(self.path)

    @contextmanager
    def _locked_tables(self, write: bool = False):
        """上下文管理器：加锁读取全部表，write=True 时退出时原子写回"""
        with self._lock:
            tables = self._read()
            yield tables
            if write:
                self._write(tables)

    def _read(self) -> List[ZeroTable]:
        if not self.path.exists():
            return []
        try:
            raw = json.loads(self.path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"⚠️  Ignoring unreadable zero cache {self.path}: {e}")
            return []
        entries = raw.get("tables", []) if isinstance(raw, dict) else raw
        tables = []
        for entry in entries:
            try:
                tables.append(ZeroTable.model_validate(entry))
            except ValidationError as e:
                logger.warning(f"⚠️  Skipping invalid zero cache entry: {e.errors()[0]['msg']}")
        return tables

    def _write(self, tables: List[ZeroTable]) -> None:
        payload = {"tables": [t.model_dump(mode="json") for t in tables]}
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".wright_zeros_", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=2)
            os.replace(tmp, self.path)
        except Exception:
            Path(tmp).unlink(missing_ok=True)
            raise

    def lookup(self, p: WrightParams, count: int, refine_tol: float = DEFAULT_REFINE_TOL) -> Optional[ZeroTable]:
        """查找可用的表；存储的零点多于请求时截断返回"""
        with self._locked_tables() as tables:
            for table in tables:
                if table.params == p and table.covers(count) and table.refine_tol <= refine_tol:
                    logger.debug(f"Zero cache hit for {p.label()} ({table.count} zeros stored)")
                    if table.count == count:
                        return table
                    return ZeroTable(
                        params=table.params,
                        psi=table.psi[:count],
                        psi_deriv=table.psi_deriv[: count + 1],
                        refine_tol=table.refine_tol,
                    )
        return None

    def store(self, table: ZeroTable) -> None:
        """写入表，替换同参数下零点更少的旧表"""
        with self._locked_tables(write=True) as tables:
            kept = [t for t in tables if not (t.params == table.params and t.count <= table.count)]
            kept.append(table)
            tables[:] = kept
        logger.info(f"💾 Zero table for {table.params.label()} stored in {self.path}")

    def get_or_locate(self, p: WrightParams, count: int, refine_tol: float = DEFAULT_REFINE_TOL) -> ZeroTable:
        table = self.lookup(p, count, refine_tol)
        if table is not None:
            return table
        table = locate_zeros(p, count, refine_tol)
        self.store(table)
        return table


def load_table(p: WrightParams, count: int, cache_path=None, refine_tol: float = DEFAULT_REFINE_TOL) -> ZeroTable:
    """无缓存路径（且未设置 WRIGHT_RADII_ZERO_CACHE）时直接定位零点"""
    if cache_path is None:
        cache_path = os.getenv("WRIGHT_RADII_ZERO_CACHE") or None
    if cache_path is None:
        return locate_zeros(p, count, refine_tol)
    return ZeroCache(cache_path).get_or_locate(p, count, refine_tol)

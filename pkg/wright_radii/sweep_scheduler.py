"""
Wright Radii - Sweep Scheduler
参数扫描调度器

在网格上并行求解半径问题：
1. 按网格索引生成扫描点
2. 线程池并行求解（线程数受 WRIGHT_RADII_THREADS 限制）
3. 同一参数的零点表只计算一次
4. 输出行按网格索引排序，与完成顺序无关
5. 单点失败记录在行内，不中断扫描
"""

import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional

from loguru import logger
from pydantic import BaseModel, ConfigDict

from .config import get_settings
from .errors import EXIT_INVALID_PROBLEM, WrightRadiiError, exit_code_for
from .models import Normalization, RadiusFamily, RadiusProblem, WrightParams
from .radii_solvers import solve_radius
from .verify import check_radius
from .zeros import ZeroTable

SWEEP_AXES = ("beta", "gamma", "alpha", "mu", "a", "nu", "b")
PARAM_AXES = ("mu", "a", "nu", "b")

CSV_HEADER = ("mu", "a", "nu", "b", "family", "norm", "beta", "gamma", "alpha", "radius", "residual", "verified")


class SweepRow(BaseModel):
    """扫描结果行"""

    model_config = ConfigDict(frozen=True)

    index: int
    mu: float
    a: float
    nu: float
    b: float
    family: RadiusFamily
    norm: Normalization
    beta: Optional[float] = None
    gamma: float = 0.0
    alpha: float = 0.0
    radius: Optional[float] = None
    residual: Optional[float] = None
    verified: Optional[bool] = None
    error: Optional[str] = None
    exit_code: int = 0

    @property
    def ok(self) -> bool:
        return self.error is None


class SweepScheduler:
    """
    参数扫描调度器

    职责：
    1. 根据基准问题与扫描轴生成网格
    2. 并行求解，零点表按参数缓存
    3. 按网格索引返回结果
    """

    def __init__(
        self,
        table_provider: Callable[[WrightParams], ZeroTable],
        threads: Optional[int] = None,
        tol: Optional[float] = None,
        verify: bool = False,
        n_samples: int = 720,
        eps: float = 1e-3,
    ):
        """
        初始化调度器

        Args:
            table_provider: 参数 -> 零点表
            threads: 线程数上限 (默认: WRIGHT_RADII_THREADS)
            tol: 求解容差 (默认: 配置值)
            verify: 是否对每个点做采样验证
            n_samples: 验证采样点数
            eps: 验证内外圈偏移
        """
        settings = get_settings()
        self.table_provider = table_provider
        self.threads = max(1, min(threads or settings.threads, settings.threads))
        self.tol = tol
        self.verify = verify
        self.n_samples = n_samples
        self.eps = eps
        self._tables: Dict[WrightParams, ZeroTable] = {}
        self._table_lock = threading.Lock()

    def _table(self, p: WrightParams) -> ZeroTable:
        # 串行构建零点表，避免同一参数重复扫描
        with self._table_lock:
            table = self._tables.get(p)
            if table is None:
                table = self.table_provider(p)
                self._tables[p] = table
            return table

    @staticmethod
    def build_points(base: Dict, over: str, grid: List[float]) -> List[Dict]:
        """
        生成扫描点

        Args:
            base: 基准设置 {mu, a, nu, b, family, norm, beta, gamma, alpha}
            over: 扫描轴
            grid: 网格值

        Returns:
            扫描点字典列表
        """
        if over not in SWEEP_AXES:
            raise ValueError(f"cannot sweep over {over!r}, choose one of {', '.join(SWEEP_AXES)}")
        points = []
        for value in grid:
            point = dict(base)
            point[over] = value
            points.append(point)
        return points

    def _run_point(self, index: int, point: Dict) -> SweepRow:
        row = dict(
            index=index,
            mu=point["mu"],
            a=point["a"],
            nu=point["nu"],
            b=point["b"],
            family=point["family"],
            norm=point["norm"],
            beta=point.get("beta"),
            gamma=point.get("gamma", 0.0),
            alpha=point.get("alpha", 0.0),
        )
        try:
            params = WrightParams(**{k: point[k] for k in PARAM_AXES})
            prob = RadiusProblem.build(
                family=point["family"],
                norm=point["norm"],
                params=params,
                beta=point.get("beta"),
                gamma=point.get("gamma", 0.0),
                alpha=point.get("alpha", 0.0),
            )
            table = self._table(params)
            res = solve_radius(prob, table, self.tol)
            row.update(radius=res.radius, residual=res.residual)
            if self.verify:
                report = check_radius(prob, res, table, self.n_samples, self.eps)
                row.update(verified=report.passed)
        except WrightRadiiError as e:
            logger.warning(f"⚠️  Sweep point #{index} failed: {type(e).__name__}: {e}")
            row.update(error=f"{type(e).__name__}: {e}", exit_code=exit_code_for(e))
        except ValueError as e:
            logger.warning(f"⚠️  Sweep point #{index} has invalid inputs: {e}")
            row.update(error=f"InvalidProblem: {e}", exit_code=EXIT_INVALID_PROBLEM)
        return SweepRow(**row)

    def run(self, points: List[Dict]) -> List[SweepRow]:
        """并行求解全部扫描点，结果按输入顺序返回"""
        if not points:
            raise ValueError("empty sweep grid")
        workers = min(self.threads, len(points))
        logger.info(f"🔄 Sweep started: {len(points)} points, {workers} threads")
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(self._run_point, range(len(points)), points))
        failed = sum(1 for r in rows if not r.ok)
        if failed:
            logger.warning(f"⚠️  Sweep finished with {failed}/{len(rows)} failed points")
        else:
            logger.success(f"✅ Sweep finished: {len(rows)} points")
        return rows

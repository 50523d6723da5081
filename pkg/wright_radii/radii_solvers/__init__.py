"""
Radii Solvers - 半径求解

支持的问题族：
- star / exp-star / spiral: StarRadiusEngine
- convex / exp-convex / convex-spiral: ConvexRadiusEngine
"""

from typing import Optional

from loguru import logger

from ..config import get_settings
from ..errors import InvalidProblem
from ..models import RadiusProblem, RadiusResult
from ..zeros import ZeroTable
from .auxiliary import AuxiliaryReport, disk_centre_roots
from .base import RadiusEngine, RadiusEngineRegistry
from .convex_engine import ConvexRadiusEngine
from .omega import disk_in_omega_e, omega_e_contains, omega_e_inner_radius
from .star_engine import StarRadiusEngine

# 注册全部引擎
RadiusEngineRegistry.register(StarRadiusEngine())
RadiusEngineRegistry.register(ConvexRadiusEngine())


def get_engine(prob: RadiusProblem) -> RadiusEngine:
    engine = RadiusEngineRegistry.get(prob.family)
    if engine is None:
        raise InvalidProblem(f"no radius engine registered for family {prob.family.value}")
    return engine


def solve_radius(prob: RadiusProblem, t: ZeroTable, tol: Optional[float] = None) -> RadiusResult:
    """
    便捷函数：求半径问题的最小正根

    Args:
        prob: 半径问题
        t: 与 prob.params 对应的零点表
        tol: 求解容差 (默认: 配置值 1e-12)

    Returns:
        RadiusResult

    Raises:
        InvalidProblem: 适用条件不成立，或零点表参数不匹配
        BracketFailure: 区间上残差不变号
        CrossCheckFailure: 规范式与原始方程的根不一致
    """
    if t.params != prob.params:
        raise InvalidProblem(f"zero table belongs to {t.params.label()}, problem uses {prob.params.label()}")
    tol = get_settings().solver_tol if tol is None else float(tol)
    if tol <= 0:
        raise InvalidProblem(f"solver tol must be positive, got {tol}")
    return get_engine(prob).solve(prob, t, tol)


def statement_radius(prob: RadiusProblem, t: ZeroTable, tol: Optional[float] = None) -> Optional[float]:
    """凸性问题的陈述式方程的根；陈述式与主方程相同或不存在时返回 None"""
    result = solve_radius(prob, t, tol)
    if result.statement_radius is None:
        logger.debug(f"No separate statement equation for {prob.describe()}")
    return result.statement_radius


__all__ = [
    "RadiusEngine",
    "RadiusEngineRegistry",
    "StarRadiusEngine",
    "ConvexRadiusEngine",
    "AuxiliaryReport",
    "get_engine",
    "solve_radius",
    "statement_radius",
    "disk_centre_roots",
    "omega_e_inner_radius",
    "omega_e_contains",
    "disk_in_omega_e",
]

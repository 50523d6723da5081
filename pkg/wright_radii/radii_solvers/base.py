"""
Radius Engine Base Class - 半径求解引擎基类

每个引擎负责若干半径问题族，提供：
- interval_bound: 求根区间右端点
- residual: 规范残差 K(r) = (1 - ratio(r)) - β，K(0) = -β，在区间上递增
- literal_residual: 原始方程（直接级数路径），用于交叉检查
"""

import math
from abc import ABC, abstractmethod
from typing import Callable, Dict, List, Optional, Set, Tuple

from loguru import logger
from scipy.optimize import brentq

from ..errors import BracketFailure, CrossCheckFailure, InvalidProblem, PoleProximity
from ..models import RadiusFamily, RadiusProblem, RadiusResult
from ..rootfind import EPS, bracketed_root
from ..zeros import ZeroTable

LEFT_EPS = 1e-9  # 左端点 ε = 1e-9·bound
INWARD_STEPS = 12  # 右端点受保护时最多向内收缩的次数
SCAN_POINTS = 32  # 粗扫描点数，用于定位最小正根
CROSS_CHECK_WINDOW = 1e-6


def guarded_upper_end(f: Callable[[float], float], bound: float) -> Tuple[float, float]:
    """
    右端点 (1-ε)·bound；若求值被极点保护拒绝，则按几何级数向内收缩

    Returns:
        (hi, f(hi))
    """
    shrink = LEFT_EPS
    for _ in range(INWARD_STEPS):
        hi = bound * (1.0 - shrink)
        try:
            return hi, f(hi)
        except PoleProximity:
            shrink *= 10.0
    raise BracketFailure(
        f"cannot evaluate the residual near the interval end {bound!r}",
        interval=(0.0, bound),
        residuals=(math.nan, math.nan),
    )


def first_sign_change(
    f: Callable[[float], float], lo: float, hi: float, f_lo: float, f_hi: float, points: int = SCAN_POINTS
) -> Tuple[float, float, float, float]:
    """粗扫描 [lo, hi]，返回第一个变号子区间"""
    x_prev, f_prev = lo, f_lo
    for i in range(1, points):
        x = lo + (hi - lo) * i / points
        try:
            fx = f(x)
        except PoleProximity:
            continue
        if (fx < 0) != (f_prev < 0) or fx == 0.0:
            return x_prev, x, f_prev, fx
        x_prev, f_prev = x, fx
    return x_prev, hi, f_prev, f_hi


def root_on_interval(
    f: Callable[[float], float], bound: float, tol: float, label: str, ftol: Optional[float] = None
) -> Tuple[float, Tuple[float, float], float, int]:
    """
    区间 (0, bound) 上 f 的最小正根，f(0+) < 0

    ftol 给定时，返回的根满足 |f(root)| <= ftol

    Returns:
        (root, bracket, residual, iterations)

    Raises:
        BracketFailure: 区间上不变号
    """
    lo = LEFT_EPS * bound
    f_lo = f(lo)
    hi, f_hi = guarded_upper_end(f, bound)
    if f_lo >= 0.0:
        if f_lo == 0.0:
            return lo, (lo, lo), 0.0, 0
        raise BracketFailure(
            f"{label}: residual is already non-negative at the left end r={lo:.3e}",
            interval=(lo, hi),
            residuals=(f_lo, f_hi),
        )
    if f_hi < 0.0:
        raise BracketFailure(
            f"{label}: residual does not change sign on ({lo:.6g}, {hi:.6g}); the zero table may be too short",
            interval=(lo, hi),
            residuals=(f_lo, f_hi),
        )
    a, b, fa, fb = first_sign_change(f, lo, hi, f_lo, f_hi)
    res = bracketed_root(f, a, b, xtol=tol / 4.0, bisect_width=1e-6, rtol=EPS, f_lo=fa, f_hi=fb, ftol=ftol)
    if not res.converged:
        raise BracketFailure(
            f"{label}: root polishing did not converge, residual {res.residual:.3e}",
            interval=res.bracket,
            residuals=(fa, fb),
        )
    return res.root, res.bracket, res.residual, res.iterations


class RadiusEngine(ABC):
    """
    半径求解引擎基类

    子类定义 FAMILIES 并实现 interval_bound / residual / literal_residual
    """

    # 子类必须定义负责的问题族
    FAMILIES: Set[RadiusFamily] = set()

    # 子类必须定义引擎名称
    ENGINE_NAME: str = "unknown"

    # 子类必须定义引擎描述
    ENGINE_DESCRIPTION: str = ""

    def __init__(self):
        self.logger = logger

    def validate(self, prob: RadiusProblem) -> None:
        """检查适用条件，默认接受所有问题"""
        if prob.family not in self.FAMILIES:
            raise InvalidProblem(f"engine {self.ENGINE_NAME} does not handle family {prob.family.value}")

    @abstractmethod
    def interval_bound(self, prob: RadiusProblem, t: ZeroTable) -> float:
        """求根区间右端点"""

    @abstractmethod
    def residual(self, prob: RadiusProblem, t: ZeroTable, r: float) -> float:
        """规范残差 (1 - ratio(r)) - β，零点和路径"""

    @abstractmethod
    def literal_residual(self, prob: RadiusProblem, t: ZeroTable, r: float) -> float:
        """原始方程的残差，直接级数路径，在 0 附近为负"""

    def statement_residual(self, prob: RadiusProblem, t: ZeroTable) -> Optional[Tuple[Callable[[float], float], float]]:
        """陈述式方程（与主方程不同时），返回 (残差函数, 区间端点)；默认无"""
        return None

    def solve(self, prob: RadiusProblem, t: ZeroTable, tol: float) -> RadiusResult:
        """
        求最小正根并与原始方程交叉检查

        Raises:
            InvalidProblem: 违反适用条件
            BracketFailure: 区间上不变号
            CrossCheckFailure: 规范式与原式的根相差超过 10·tol
        """
        self.validate(prob)
        bound = self.interval_bound(prob, t)
        self.logger.info(f"🎯 Solving {prob.describe()} on (0, {bound:.10g})")

        root, bracket, residual, iterations = root_on_interval(
            lambda r: self.residual(prob, t, r), bound, tol, prob.describe(), ftol=tol
        )
        self.logger.debug(f"   canonical root {root:.15g}, bracket width {bracket[1] - bracket[0]:.2e}")

        literal = self._literal_root(prob, t, root, tol)
        statement, agrees = self._statement_root(prob, t, root, tol)

        result = RadiusResult(
            family=prob.family,
            norm=prob.norm,
            canonical_beta=prob.canonical_beta,
            radius=root,
            bracket=bracket,
            residual=residual,
            iterations=iterations,
            interval_bound=bound,
            literal_radius=literal,
            statement_radius=statement,
            statement_agrees=agrees,
        )
        self.logger.success(f"✅ {prob.family.value}[{prob.norm.value}] radius = {root:.15g}")
        return result

    def _literal_root(self, prob: RadiusProblem, t: ZeroTable, root: float, tol: float) -> float:
        """在规范根附近的小窗口里求原式的根"""
        window = max(CROSS_CHECK_WINDOW, 1e4 * tol) * max(1.0, root)
        bound = self.interval_bound(prob, t)
        lo = max(LEFT_EPS * bound, root - window)
        hi = min(bound * (1.0 - LEFT_EPS), root + window)
        f = lambda r: self.literal_residual(prob, t, r)  # noqa: E731
        try:
            literal = brentq(f, lo, hi, xtol=tol / 4.0, rtol=4.0 * EPS)
        except ValueError as e:
            self.logger.error(f"❌ Literal equation has no root near {root:.12g} for {prob.describe()}")
            raise CrossCheckFailure(
                f"literal equation of {prob.family.value}[{prob.norm.value}] has no root within "
                f"{window:.1e} of the canonical root {root!r}"
            ) from e
        if abs(literal - root) > 10.0 * tol * max(1.0, root):
            self.logger.error(f"❌ Canonical root {root!r} and literal root {literal!r} disagree")
            raise CrossCheckFailure(
                f"canonical root {root!r} and literal root {literal!r} differ by {abs(literal - root):.3e}"
            )
        return float(literal)

    def _statement_root(
        self, prob: RadiusProblem, t: ZeroTable, root: float, tol: float
    ) -> Tuple[Optional[float], Optional[bool]]:
        stmt = self.statement_residual(prob, t)
        if stmt is None:
            return None, None
        f, bound = stmt
        try:
            value, _, _, _ = root_on_interval(f, bound, tol, f"statement form of {prob.describe()}")
        except BracketFailure as e:
            self.logger.warning(f"⚠️  Statement equation has no root: {e}")
            return None, None
        agrees = abs(value - root) <= 10.0 * tol * max(1.0, root)
        if not agrees:
            self.logger.warning(
                f"⚠️  Statement root {value:.12g} differs from the proof root {root:.12g} for {prob.describe()}"
            )
        return value, agrees

    def get_info(self) -> Dict:
        return {
            "name": self.ENGINE_NAME,
            "description": self.ENGINE_DESCRIPTION,
            "families": sorted(f.value for f in self.FAMILIES),
        }


class RadiusEngineRegistry:
    """
    半径引擎注册器

    问题族 -> 引擎实例
    """

    _engines: Dict[str, RadiusEngine] = {}
    _family_map: Dict[RadiusFamily, str] = {}

    @classmethod
    def register(cls, engine: RadiusEngine):
        name = engine.ENGINE_NAME
        if name in cls._engines:
            logger.warning(f"⚠️  Radius engine '{name}' already registered, overwriting...")
        cls._engines[name] = engine
        for family in engine.FAMILIES:
            cls._family_map[family] = name
        logger.debug(f"Registered radius engine: {name} ({', '.join(sorted(f.value for f in engine.FAMILIES))})")

    @classmethod
    def get(cls, family: RadiusFamily) -> Optional[RadiusEngine]:
        name = cls._family_map.get(family)
        return cls._engines.get(name) if name else None

    @classmethod
    def families(cls) -> List[RadiusFamily]:
        return [f for f in RadiusFamily if f in cls._family_map]

    @classmethod
    def list_engines(cls) -> List[Dict]:
        return [engine.get_info() for engine in cls._engines.values()]

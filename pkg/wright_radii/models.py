"""
Wright Radii - Data Models
数据模型

定义参数族、归一化、半径问题与结果、验证报告等核心数据结构
"""

import math
from enum import Enum
from typing import Any, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, ValidationError, computed_field, model_validator
from scipy.special import gammaln

from .errors import InvalidProblem

EXP_BETA = 1.0 - 1.0 / math.e  # Ω_e 内切圆盘半径，1 - 1/e


class WrightParams(BaseModel):
    """四参数 Wright 函数的参数 (μ, a, ν, b)，全部严格为正"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    mu: float = Field(gt=0)
    a: float = Field(gt=0)
    nu: float = Field(gt=0)
    b: float = Field(gt=0)

    # Γ(a)Γ(b) 的对数，构造时计算一次
    _log_gamma_ab: float = PrivateAttr(default=0.0)

    def model_post_init(self, context: Any, /) -> None:
        self._log_gamma_ab = float(gammaln(self.a) + gammaln(self.b))

    @property
    def ab(self) -> float:
        return self.a * self.b

    @property
    def log_gamma_prefactor(self) -> float:
        """ln(Γ(a)Γ(b))"""
        return self._log_gamma_ab

    @property
    def gamma_prefactor(self) -> float:
        """Γ(a)Γ(b)，三种归一化共用的前因子"""
        return math.exp(self._log_gamma_ab)

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.mu, self.a, self.nu, self.b)

    def label(self) -> str:
        return f"(μ={self.mu:g}, a={self.a:g}, ν={self.nu:g}, b={self.b:g})"


class EvalResult(BaseModel):
    """
    级数求值结果

    Attributes:
        value: 求值结果（实参数时为 float）
        error_bound: 截断尾部估计 + 舍入误差估计
        terms_used: 实际使用的项数
        extended: 是否使用了 mpmath 扩展精度
    """

    model_config = ConfigDict(frozen=True)

    value: Union[float, complex]
    error_bound: float = Field(ge=0)
    terms_used: int = Field(ge=0)
    extended: bool = False


class Normalization(str, Enum):
    """三种归一化 f, g, h"""

    F = "f"  # (Γ(a)Γ(b) z^{ab} 𝔚(z))^{1/ab}
    G = "g"  # Γ(a)Γ(b) z 𝔚(z)
    H = "h"  # Γ(a)Γ(b) z W(-z)


class RatioKind(str, Enum):
    """泛函类型"""

    STAR = "star"  # z u'/u
    CONVEX = "convex"  # 1 + z u''/u'


class RadiusFamily(str, Enum):
    """半径问题族"""

    STAR_PHI = "star"
    CONVEX_PHI = "convex"
    EXP_STAR = "exp-star"
    EXP_CONVEX = "exp-convex"
    SPIRAL = "spiral"
    CONVEX_SPIRAL = "convex-spiral"

    @property
    def ratio_kind(self) -> RatioKind:
        if self in (RadiusFamily.STAR_PHI, RadiusFamily.EXP_STAR, RadiusFamily.SPIRAL):
            return RatioKind.STAR
        return RatioKind.CONVEX

    @property
    def is_exponential(self) -> bool:
        return self in (RadiusFamily.EXP_STAR, RadiusFamily.EXP_CONVEX)

    @property
    def is_spiral(self) -> bool:
        return self in (RadiusFamily.SPIRAL, RadiusFamily.CONVEX_SPIRAL)


class RadiusProblem(BaseModel):
    """
    半径问题：族 + 归一化 + 参数

    StarPhi/ConvexPhi 需要 0 < beta <= 1；Spiral 需要 gamma ∈ (-π/2, π/2), alpha ∈ [0, 1)
    ExpStar 等价于 StarPhi(1 - 1/e)，Spiral 等价于 StarPhi((1-α)cos γ)，原始族保留用于报告
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    family: RadiusFamily
    norm: Normalization
    params: WrightParams
    beta: Optional[float] = None
    gamma: float = 0.0
    alpha: float = 0.0

    @model_validator(mode="after")
    def _check_family_arguments(self):
        if self.family in (RadiusFamily.STAR_PHI, RadiusFamily.CONVEX_PHI):
            if self.beta is None or not (0.0 < self.beta <= 1.0):
                raise ValueError(f"beta must lie in (0, 1] for family {self.family.value}, got {self.beta}")
        if self.family.is_spiral:
            if not (-math.pi / 2 < self.gamma < math.pi / 2):
                raise ValueError(f"gamma must lie in (-π/2, π/2), got {self.gamma}")
            if not (0.0 <= self.alpha < 1.0):
                raise ValueError(f"alpha must lie in [0, 1), got {self.alpha}")
        return self

    @classmethod
    def build(cls, **kwargs) -> "RadiusProblem":
        """构造问题，校验失败转换为 InvalidProblem"""
        try:
            return cls(**kwargs)
        except ValidationError as e:
            raise InvalidProblem(str(e)) from e

    @property
    def kind(self) -> RatioKind:
        return self.family.ratio_kind

    @property
    def canonical_beta(self) -> float:
        """规范化后的圆盘半径 β"""
        if self.family in (RadiusFamily.STAR_PHI, RadiusFamily.CONVEX_PHI):
            return float(self.beta)
        if self.family.is_exponential:
            return EXP_BETA
        return (1.0 - self.alpha) * math.cos(self.gamma)

    def canonical(self) -> "RadiusProblem":
        """返回等价的 StarPhi / ConvexPhi 问题"""
        family = RadiusFamily.STAR_PHI if self.kind is RatioKind.STAR else RadiusFamily.CONVEX_PHI
        return RadiusProblem(family=family, norm=self.norm, params=self.params, beta=self.canonical_beta)

    def describe(self) -> str:
        extra = ""
        if self.beta is not None:
            extra = f", β={self.beta:g}"
        if self.family.is_spiral:
            extra = f", γ={self.gamma:g}, α={self.alpha:g}"
        return f"{self.family.value}[{self.norm.value}{extra}] {self.params.label()}"


class RadiusResult(BaseModel):
    """半径求解结果"""

    model_config = ConfigDict(frozen=True)

    family: RadiusFamily
    norm: Normalization
    canonical_beta: float
    radius: float = Field(gt=0)
    bracket: Tuple[float, float]
    residual: float
    iterations: int = Field(ge=0)
    interval_bound: float = Field(gt=0)
    literal_radius: Optional[float] = None
    statement_radius: Optional[float] = None
    statement_agrees: Optional[bool] = None

    @model_validator(mode="after")
    def _check_bracket(self):
        lo, hi = self.bracket
        if not (lo <= self.radius <= hi):
            raise ValueError(f"radius {self.radius} outside its bracket [{lo}, {hi}]")
        if not (0.0 < self.radius < self.interval_bound):
            raise ValueError(f"radius {self.radius} outside (0, {self.interval_bound})")
        return self


class VerificationReport(BaseModel):
    """采样验证报告"""

    model_config = ConfigDict(frozen=True)

    problem: RadiusProblem
    radius: float
    inner_margin_ok: bool
    outer_violation_found: bool
    outer_expected: bool = True
    sharpness_residual: float
    min_functional_inner: float
    min_location: float  # 内圈最小值所在的辐角
    extremal_point: Tuple[float, float]
    samples: int
    auxiliary_residual: Optional[float] = None
    sampled_radius: Optional[float] = None
    sharpness_threshold: float = 1e-8
    notes: List[str] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        outer_ok = self.outer_violation_found or not self.outer_expected
        return self.inner_margin_ok and outer_ok and self.sharpness_residual <= self.sharpness_threshold

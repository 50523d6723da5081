"""
Wright Radii

四参数 Wright 函数 W(z) = Σ z^k / (Γ(a+kμ)Γ(b+kν)) 的三种归一化 f, g, h 的几何半径：
星形 / 凸性 / 指数星形 / 指数凸性 / γ-螺旋形

模块：
- wright_core: 级数求值
- zeros: 零点定位与零点和
- normalized_functions: 归一化函数的 z u'/u 与 1 + z u''/u'
- radii_solvers: 半径方程求解
- verify: 采样验证、不等式检验、双路径检查
- cli: 命令行入口
"""

from .config import Settings, get_settings
from .errors import (
    BracketFailure,
    CrossCheckFailure,
    DomainError,
    InconclusiveVerification,
    InvalidProblem,
    NonConvergence,
    PoleProximity,
    WrightRadiiError,
    ZeroSearchFailure,
)
from .models import (
    EXP_BETA,
    Normalization,
    RadiusFamily,
    RadiusProblem,
    RadiusResult,
    RatioKind,
    VerificationReport,
    WrightParams,
)
from .radii_solvers import solve_radius, statement_radius
from .verify import check_radius, cross_oracle_suite, lemma_inequality_suite
from .wright_core import eval_frak_w, eval_kernel, eval_wright, eval_wright_derivative
from .zero_cache import ZeroCache, load_table
from .zeros import ZeroTable, locate_zeros, zero_sum

__version__ = "1.0.0"

__all__ = [
    "Settings",
    "get_settings",
    "WrightRadiiError",
    "DomainError",
    "NonConvergence",
    "ZeroSearchFailure",
    "PoleProximity",
    "BracketFailure",
    "InvalidProblem",
    "CrossCheckFailure",
    "InconclusiveVerification",
    "EXP_BETA",
    "WrightParams",
    "Normalization",
    "RatioKind",
    "RadiusFamily",
    "RadiusProblem",
    "RadiusResult",
    "VerificationReport",
    "eval_wright",
    "eval_wright_derivative",
    "eval_frak_w",
    "eval_kernel",
    "ZeroTable",
    "locate_zeros",
    "zero_sum",
    "ZeroCache",
    "load_table",
    "solve_radius",
    "statement_radius",
    "check_radius",
    "lemma_inequality_suite",
    "cross_oracle_suite",
]

"""
Wright Radii - Error Types
异常类型定义

所有数值失败都以 WrightRadiiError 为根，CLI 根据 EXIT_CODES 映射退出码
"""

from typing import Dict, Optional, Tuple, Type


class WrightRadiiError(Exception):
    """库内所有异常的基类"""


class DomainError(WrightRadiiError, ValueError):
    """参数超出函数定义域（如 log_gamma(x<=0)）"""


class NonConvergence(WrightRadiiError):
    """级数在 max_terms 之内未满足停止准则"""

    def __init__(self, message: str, terms_used: int = 0, last_term: float = float("nan")):
        super().__init__(message)
        self.terms_used = terms_used
        self.last_term = last_term


class ZeroSearchFailure(WrightRadiiError):
    """扫描预算内找不到符号变化，或零点交错性被破坏"""

    def __init__(
        self,
        message: str,
        scanned_interval: Tuple[float, float] = (0.0, 0.0),
        found: int = 0,
        kind: str = "zeros",
    ):
        super().__init__(message)
        self.scanned_interval = scanned_interval
        self.found = found
        self.kind = kind

    def diagnostics(self) -> Dict:
        return {
            "kind": self.kind,
            "found": self.found,
            "scanned_interval": list(self.scanned_interval),
        }


class PoleProximity(WrightRadiiError, ArithmeticError):
    """求值点距离零点和的极点过近"""

    def __init__(self, message: str, z: complex = 0j, pole: Optional[complex] = None):
        super().__init__(message)
        self.z = z
        self.pole = pole


class DerivativeZeroProximity(PoleProximity):
    """u'(z) 过于接近 0，凸性泛函 1 + z u''/u' 不可靠"""


class BracketFailure(WrightRadiiError):
    """残差在区间两端不变号"""

    def __init__(
        self,
        message: str,
        interval: Tuple[float, float] = (0.0, 0.0),
        residuals: Tuple[float, float] = (float("nan"), float("nan")),
    ):
        super().__init__(message)
        self.interval = interval
        self.residuals = residuals


class InvalidProblem(WrightRadiiError, ValueError):
    """问题违反适用条件（如 ExpConvex 的 f 情形要求 a, b <= 1）"""


class CrossCheckFailure(WrightRadiiError):
    """规范方程与字面方程的根不一致"""


class InconclusiveVerification(WrightRadiiError):
    """外圈采样点超出泛函定义域，验证无法得出结论"""


# CLI 退出码
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_ZERO_SEARCH = 2
EXIT_INVALID_PROBLEM = 3
EXIT_BRACKET = 4
EXIT_NUMERICAL = 5
EXIT_USAGE = 64

# 按继承顺序匹配，子类在前
EXIT_CODES: Dict[Type[BaseException], int] = {
    ZeroSearchFailure: EXIT_ZERO_SEARCH,
    InvalidProblem: EXIT_INVALID_PROBLEM,
    BracketFailure: EXIT_BRACKET,
    NonConvergence: EXIT_NUMERICAL,
    PoleProximity: EXIT_NUMERICAL,
    CrossCheckFailure: EXIT_NUMERICAL,
    DomainError: EXIT_USAGE,
}


def exit_code_for(exc: BaseException) -> int:
    """返回异常对应的 CLI 退出码，未知数值异常归为 EXIT_NUMERICAL"""
    for exc_type, code in EXIT_CODES.items():
        if isinstance(exc, exc_type):
            return code
    return EXIT_NUMERICAL

"""
Root Finding - 区间求根

先二分到给定宽度，再用 Brent 方法（二分 + 割线 + 反二次插值）抛光；
全程保持变号区间，返回最终区间以便报告
"""

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from .errors import BracketFailure

EPS = 2.220446049250313e-16


def _same_sign(x: float, y: float) -> bool:
    return (x < 0) == (y < 0)


@dataclass
class RootResult:
    """
    求根结果

    Attributes:
        root: 最佳估计（|f| 最小的区间端点）
        bracket: 最终变号区间 (lo, hi)
        residual: f(root)
        iterations: 二分 + Brent 迭代次数
        function_calls: 函数求值次数
        converged: 是否在 maxiter 内收敛
    """

    root: float
    bracket: Tuple[float, float]
    residual: float
    iterations: int
    function_calls: int
    converged: bool


def bracketed_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-13,
    bisect_width: float = 1e-6,
    rtol: float = 4 * EPS,
    maxiter: int = 200,
    f_lo: Optional[float] = None,
    f_hi: Optional[float] = None,
    ftol: Optional[float] = None,
) -> RootResult:
    """
    在 [lo, hi] 上求 f 的根

    Args:
        f: 连续函数
        lo, hi: 区间端点，f(lo)·f(hi) <= 0
        xtol: 绝对容差
        bisect_width: 二分阶段的目标宽度
        rtol: 相对容差
        maxiter: 最大迭代次数
        f_lo, f_hi: 已知的端点函数值（可选，避免重复求值）
        ftol: 残差容差；区间已足够窄但 |f| > ftol 时继续收缩到相邻浮点数

    Returns:
        RootResult

    Raises:
        BracketFailure: 端点不变号，或在双精度下无法使 |f| <= ftol
    """
    calls = 0

    def eval_f(x: float) -> float:
        nonlocal calls
        calls += 1
        return float(f(x))

    fa = eval_f(lo) if f_lo is None else float(f_lo)
    fb = eval_f(hi) if f_hi is None else float(f_hi)
    if fa == 0.0:
        return RootResult(lo, (lo, lo), 0.0, 0, calls, True)
    if fb == 0.0:
        return RootResult(hi, (hi, hi), 0.0, 0, calls, True)
    if _same_sign(fa, fb):
        raise BracketFailure(
            f"f(lo) and f(hi) must have opposite signs, got f({lo})={fa}, f({hi})={fb}",
            interval=(lo, hi),
            residuals=(fa, fb),
        )

    a, b = lo, hi
    iterations = 0

    # 二分阶段
    while b - a > bisect_width and iterations < maxiter:
        m = 0.5 * (a + b)
        fm = eval_f(m)
        iterations += 1
        if fm == 0.0:
            return RootResult(m, (m, m), 0.0, iterations, calls, True)
        if not _same_sign(fa, fm):
            b, fb = m, fm
        else:
            a, fa = m, fm

    # Brent 阶段：b 为最佳估计，c 为变号对端
    if abs(fa) < abs(fb):
        a, b = b, a
        fa, fb = fb, fa
    c, fc = a, fa
    d = e = b - a

    while iterations < maxiter:
        tol = 2.0 * rtol * abs(b) + xtol
        m = 0.5 * (c - b)
        if fb == 0.0 or (abs(m) <= tol and (ftol is None or abs(fb) <= ftol)):
            return RootResult(b, (min(b, c), max(b, c)), fb, iterations, calls, True)
        if abs(m) <= tol:
            floor = EPS * abs(b) + 5e-324
            if abs(m) <= floor:
                raise BracketFailure(
                    f"residual {fb:.3e} at x={b!r} stays above {ftol:.1e} down to adjacent floats",
                    interval=(min(b, c), max(b, c)),
                    residuals=(fb, fc),
                )
            # 宽度已达标但残差未达标：收紧到浮点精度继续
            xtol, rtol = 0.0, 0.5 * EPS
            tol = floor

        if abs(e) >= tol and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = m
                e = m
        else:
            d = m
            e = m

        a, fa = b, fb
        if abs(d) > tol:
            b = b + d
        elif m > 0:
            b = b + tol
        else:
            b = b - tol
        fb = eval_f(b)
        iterations += 1

        if _same_sign(fb, fc):
            c, fc = a, fa
            d = e = b - a
        elif abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb

    return RootResult(b, (min(b, c), max(b, c)), fb, iterations, calls, False)

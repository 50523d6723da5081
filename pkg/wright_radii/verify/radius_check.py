"""
Radius Check - 采样验证

在 |z| = (1-eps)·r 的圆周上检查问题族的定义条件（必须全部成立），
在 (1+eps)·r 处的极值点检查条件被违反，并在极值点 r 处计算锐性残差

定义条件（w 为泛函值 zu'/u 或 1 + zu''/u'）：
    star / convex:                  |w - 1| < β
    exp-star / exp-convex:          |log w| < 1（主支，要求 Re w > 0）
    spiral / convex-spiral:         Re(e^{-iγ} w) > α cos γ
"""

import cmath
import math
from typing import List, Optional

import numpy as np
from loguru import logger

from ..errors import InconclusiveVerification, PoleProximity
from ..models import Normalization, RadiusProblem, RadiusResult, RatioKind, VerificationReport
from ..normalized_functions import functional, functional_domain
from ..zeros import ZeroTable

DEFAULT_SAMPLES = 720
DEFAULT_EPS = 1e-3
SHARPNESS_THRESHOLD = 1e-8


def condition_margin(prob: RadiusProblem, w) -> float:
    """定义条件的余量，> 0 表示成立"""
    w = complex(w)
    if prob.family.is_exponential:
        if w.real <= 0.0:
            return -math.inf
        return 1.0 - abs(cmath.log(w))
    if prob.family.is_spiral:
        return (cmath.exp(-1j * prob.gamma) * w).real - prob.alpha * math.cos(prob.gamma)
    return prob.canonical_beta - abs(w - 1.0)


def extremal_sign(norm: Normalization) -> float:
    """极值点所在的实半轴：f, g 取 -r（偶泛函，与 +r 相同），h 取 +r"""
    return 1.0 if norm is Normalization.H else -1.0


def _sharpness_residual(prob: RadiusProblem, w) -> float:
    w = complex(w)
    if prob.family.is_exponential:
        return abs(abs(cmath.log(w)) - 1.0) if w.real > 0 else math.inf
    return abs(abs(w - 1.0) - prob.canonical_beta)


def _circle_margins(prob: RadiusProblem, t: ZeroTable, rho: float, n_samples: int):
    thetas = 2.0 * math.pi * np.arange(n_samples) / n_samples
    margins = np.empty(n_samples)
    for k, theta in enumerate(thetas):
        z = complex(rho * math.cos(theta), rho * math.sin(theta))
        try:
            w = functional(prob.kind, prob.norm, t, z)
        except PoleProximity:
            margins[k] = -math.inf
            continue
        margins[k] = condition_margin(prob, w)
    return thetas, margins


def _angular_distance(x: float, y: float) -> float:
    d = abs(x - y) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)


def check_radius(
    prob: RadiusProblem,
    res: RadiusResult,
    t: ZeroTable,
    n_samples: int = DEFAULT_SAMPLES,
    eps: float = DEFAULT_EPS,
) -> VerificationReport:
    """
    验证半径

    Args:
        prob: 半径问题
        res: solve_radius 的结果
        t: 零点表
        n_samples: 内圈采样点数
        eps: 内外圈相对偏移，0 < eps < 0.1

    Returns:
        VerificationReport（外点超出泛函定义域时记录在 notes 中）
    """
    if not (0.0 < eps < 0.1):
        raise ValueError(f"eps must lie in (0, 0.1), got {eps}")
    if n_samples < 4:
        raise ValueError(f"n_samples must be >= 4, got {n_samples}")

    r = res.radius
    notes: List[str] = []
    logger.info(f"🔬 Verifying {prob.describe()} at r={r:.12g} ({n_samples} samples, eps={eps:g})")

    # 内圈
    thetas, margins = _circle_margins(prob, t, (1.0 - eps) * r, n_samples)
    inner_ok = bool(np.all(margins > 0.0))
    k_min = int(np.argmin(margins))
    min_location = float(thetas[k_min])
    if not inner_ok:
        logger.warning(f"⚠️  Condition fails on the inner circle at θ={min_location:.4f}")

    sign = extremal_sign(prob.norm)
    targets = [0.0] if sign > 0 else [0.0, math.pi]
    resolution = 2.0 * (2.0 * math.pi / n_samples)
    if min(_angular_distance(min_location, a) for a in targets) > resolution:
        notes.append(f"inner minimum attained at θ={min_location:.6f}, away from the extremal point")
        logger.warning(f"⚠️  Inner minimum of {prob.describe()} at θ={min_location:.6f}")

    # 外点
    outer_expected = not (prob.family.is_spiral and prob.gamma != 0.0)
    if not outer_expected:
        notes.append("γ ≠ 0: the disk reduction is not sharp for the spirallike condition; outer violation not expected")
    outer_found = False
    z_outer = sign * (1.0 + eps) * r
    try:
        domain = functional_domain(prob.kind, prob.norm, t)
        if abs(z_outer) >= domain:
            raise InconclusiveVerification(
                f"outer point |z|={abs(z_outer):.6g} lies outside the functional's domain (0, {domain:.6g})"
            )
        outer_found = condition_margin(prob, functional(prob.kind, prob.norm, t, z_outer)) <= 0.0
    except (InconclusiveVerification, PoleProximity) as e:
        notes.append(f"outer check inconclusive: {e}")
        logger.warning(f"⚠️  Outer check inconclusive: {e}")

    # 锐性
    z_star = sign * r
    w_star = functional(prob.kind, prob.norm, t, z_star)
    sharpness = _sharpness_residual(prob, w_star)

    auxiliary: Optional[float] = None
    if prob.family.is_exponential and prob.norm is not Normalization.H:
        # |z| = r 的像含于圆心 F(r)、半径 D(r) 的圆盘，且在 z = r, ir 处取到边界
        w_i = complex(functional(prob.kind, prob.norm, t, 1j * r))
        w_r = complex(w_star)
        centre = 0.5 * (w_r + w_i).real
        disk_r = 0.5 * abs(w_r - w_i)
        n_aux = max(8, n_samples // 4)
        farthest = max(
            abs(complex(functional(prob.kind, prob.norm, t, r * cmath.exp(2j * math.pi * k / n_aux))) - centre)
            for k in range(n_aux)
        )
        auxiliary = abs(farthest - disk_r)

    if prob.kind is RatioKind.CONVEX and prob.norm is Normalization.F and prob.params.ab != 1.0:
        notes.append(f"|1 - 1/ab| = {abs(1.0 - 1.0 / prob.params.ab):.6g}")

    report = VerificationReport(
        problem=prob,
        radius=r,
        inner_margin_ok=inner_ok,
        outer_violation_found=outer_found,
        outer_expected=outer_expected,
        sharpness_residual=sharpness,
        min_functional_inner=float(margins[k_min]),
        min_location=min_location,
        extremal_point=(z_star, 0.0),
        samples=n_samples,
        auxiliary_residual=auxiliary,
        sampled_radius=sampled_condition_radius(prob, t) if not outer_expected else None,
        sharpness_threshold=SHARPNESS_THRESHOLD,
        notes=notes,
    )
    if report.passed:
        logger.success(f"✅ Verification passed (sharpness residual {sharpness:.2e})")
    else:
        logger.error(f"❌ Verification failed for {prob.describe()}")
    return report


def sampled_condition_radius(
    prob: RadiusProblem, t: ZeroTable, n_samples: int = 360, tol: float = 1e-10, max_iter: int = 80
) -> float:
    """
    条件在 |z| = r 全部采样点成立的最大 r（二分），不依赖半径求解器

    盘形族与求解器半径一致；γ ≠ 0 的螺旋族通常大于求解器半径
    """
    domain = functional_domain(prob.kind, prob.norm, t)

    def holds(r: float) -> bool:
        _, margins = _circle_margins(prob, t, r, n_samples)
        return bool(np.all(margins > 0.0))

    lo, hi = 0.0, domain * (1.0 - 1e-6)
    if holds(hi):
        return hi
    for _ in range(max_iter):
        if hi - lo <= tol * max(1.0, hi):
            break
        mid = 0.5 * (lo + hi)
        if holds(mid):
            lo = mid
        else:
            hi = mid
    logger.debug(f"Sampled condition radius for {prob.describe()}: {lo:.12g}")
    return lo

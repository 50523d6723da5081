"""
Cross Oracle - 双路径一致性检查

零点和路径与直接级数路径彼此独立，二者在 |z| <= 0.9ψ₁ 上的差异即为整体误差的估计
"""

from typing import List

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, computed_field

from ..models import Normalization, WrightParams
from ..normalized_functions import convex_ratio, convex_ratio_direct, star_ratio, star_ratio_direct
from ..wright_core import eval_frak_w
from ..zeros import ZeroTable, product_eval

DEFAULT_POINTS = 200
DEFAULT_THRESHOLD = 1e-9
MIN_ZEROS = 50
PRODUCT_TERMS = (10, 20, 40, 80)


class OracleCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    points: int
    worst: float
    threshold: float

    @computed_field
    @property
    def passed(self) -> bool:
        return self.worst <= self.threshold


class CrossOracleReport(BaseModel):
    """双路径检查汇总"""

    model_config = ConfigDict(frozen=True)

    params: WrightParams
    zero_count: int
    checks: List[OracleCheck]

    @computed_field
    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _disk_sample(rng: np.random.Generator, radius: float, n: int) -> np.ndarray:
    rho = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    return rho * np.exp(1j * theta)


def _worst(f_sum, f_direct, points) -> float:
    worst = 0.0
    for z in points:
        worst = max(worst, abs(f_sum(complex(z)) - f_direct(complex(z))))
    return worst


def _product_monotone(p: WrightParams, t: ZeroTable, rng: np.random.Generator, n: int) -> float:
    """
    |Γ(a)Γ(b)𝔚(x) - ∏_{n<=N}| 随 N 单调下降；返回最大的"回升"量（单调时为 0）
    """
    terms = [N for N in PRODUCT_TERMS if N <= t.count]
    worst = 0.0
    for x in rng.uniform(0.1 * t.psi[0], 0.8 * t.psi[0], n):
        exact = p.gamma_prefactor * eval_frak_w(p, float(x)).value
        errors = [abs(exact - product_eval(t, float(x), N)) for N in terms]
        for before, after in zip(errors, errors[1:]):
            worst = max(worst, after - before)
    return worst


def cross_oracle_suite(
    p: WrightParams,
    t: ZeroTable,
    n_points: int = DEFAULT_POINTS,
    seed: int = 0,
    threshold: float = DEFAULT_THRESHOLD,
) -> CrossOracleReport:
    """
    运行双路径一致性检查

    - star_f / star_g: 零点和 vs 1 + (1/ab)z𝔚'/𝔚，|z| <= 0.9ψ₁
    - star_h: 线性零点和 vs 1 - zW'(-z)/W(-z)，|z| <= 0.9ψ₁²
    - convex_f: Ψ' 零点和 vs Ψ 形式的直接级数，|z| <= 0.9ψ̃₁
    - origin: z = 0 处全部泛函严格等于 1
    - product_monotone: 部分乘积误差随 N ∈ {10, 20, 40, 80} 单调下降
    """
    if t.params != p:
        raise ValueError(f"zero table belongs to {t.params.label()}, not {p.label()}")
    if t.count < MIN_ZEROS:
        logger.warning(f"⚠️  Cross-oracle suite expects >= {MIN_ZEROS} zeros, table has {t.count}")

    rng = np.random.default_rng(seed)
    psi1, dpsi1 = t.psi[0], t.psi_deriv[0]
    checks: List[OracleCheck] = []

    logger.info(f"🔬 Cross-oracle suite for {p.label()} ({n_points} points per check)")
    for norm in (Normalization.F, Normalization.G):
        pts = _disk_sample(rng, 0.9 * psi1, n_points)
        worst = _worst(lambda z: star_ratio(norm, p, t, z), lambda z: star_ratio_direct(norm, p, z), pts)
        checks.append(OracleCheck(name=f"star_{norm.value}", points=n_points, worst=worst, threshold=threshold))

    pts = _disk_sample(rng, 0.9 * psi1**2, n_points)
    worst = _worst(
        lambda z: star_ratio(Normalization.H, p, t, z), lambda z: star_ratio_direct(Normalization.H, p, z), pts
    )
    checks.append(OracleCheck(name="star_h", points=n_points, worst=worst, threshold=threshold))

    pts = _disk_sample(rng, 0.9 * dpsi1, n_points)
    worst = _worst(
        lambda z: convex_ratio(Normalization.F, p, t, z), lambda z: convex_ratio_direct(Normalization.F, p, z), pts
    )
    checks.append(OracleCheck(name="convex_f", points=n_points, worst=worst, threshold=threshold))

    origin = 0.0
    for norm in Normalization:
        origin = max(origin, abs(star_ratio(norm, p, t, 0.0) - 1.0), abs(convex_ratio(norm, p, t, 0.0) - 1.0))
    checks.append(OracleCheck(name="origin", points=2 * len(Normalization), worst=origin, threshold=0.0))

    rise = _product_monotone(p, t, rng, 5)
    checks.append(OracleCheck(name="product_monotone", points=5, worst=rise, threshold=1e-14))

    report = CrossOracleReport(params=p, zero_count=t.count, checks=checks)
    for c in checks:
        logger.info(f"   {c.name:<18} worst={c.worst:.3e} {'✅' if c.passed else '❌'}")
    return report

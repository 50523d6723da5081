"""
Lemmas - 半径估计所用不等式的随机检验

- difference_bound:           |z/(b-z) - λz/(a-z)| <= r/(b-r) - λr/(a-r)，a > b > r >= |z|，λ ∈ [0, 1]
- difference_bound_real_part: Re(z/(b-z) - λz/(a-z)) <= 同一右端
- single_term_bound:          |z/(b-z)| <= r/(b-r)
- product_bound:              |1/((a+z)(b-z))| <= 1/((a-r)(b+r))，b > a > r >= |z|
- mobius_disk:                |z/(z-z_k) + r²/(R²-r²)| <= Rr/(R²-r²)，|z| <= r < R = |z_k|
- mobius_equality:            z = r, z_k = R 时取等号
- two_term_disk_bound:        |z/(z-z_k) + r²/(α²-r²) + r²/(β²-r²)| <= αr/(α²-r²) + βr/(β²-r²)，β > α = |z_k| > r
"""

from typing import Dict, List

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, computed_field

DEFAULT_TOL = 1e-12


class LemmaCheck(BaseModel):
    """单个不等式的检验结果"""

    model_config = ConfigDict(frozen=True)

    name: str
    trials: int
    violations: int
    worst_excess: float  # max(lhs - rhs)，按 max(1, |rhs|) 缩放


class LemmaSuiteResult(BaseModel):
    """不等式检验汇总"""

    model_config = ConfigDict(frozen=True)

    seed: int
    trials: int
    tol: float
    checks: List[LemmaCheck]

    @computed_field
    @property
    def total_violations(self) -> int:
        return sum(c.violations for c in self.checks)

    @computed_field
    @property
    def passed(self) -> bool:
        return self.total_violations == 0


def _disk_points(rng: np.random.Generator, r: np.ndarray) -> np.ndarray:
    """|z| <= r 上的点，一半落在圆周上"""
    n = len(r)
    radial = np.sqrt(rng.uniform(0.0, 1.0, n))
    radial[: n // 2] = 1.0
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    return r * radial * np.exp(1j * theta)


def _tally(name: str, lhs: np.ndarray, rhs: np.ndarray, tol: float) -> LemmaCheck:
    excess = (lhs - rhs) / np.maximum(1.0, np.abs(rhs))
    violations = int(np.count_nonzero(excess > tol))
    return LemmaCheck(name=name, trials=len(lhs), violations=violations, worst_excess=float(np.max(excess)))


def _difference_checks(rng: np.random.Generator, n: int, tol: float) -> List[LemmaCheck]:
    r = rng.uniform(0.01, 0.99, n)
    b = r + rng.uniform(1e-3, 3.0, n)
    a = b + rng.uniform(1e-3, 3.0, n)
    lam = rng.uniform(0.0, 1.0, n)
    z = _disk_points(rng, r)

    expr = z / (b - z) - lam * z / (a - z)
    rhs = r / (b - r) - lam * r / (a - r)
    checks = [
        _tally("difference_bound", np.abs(expr), rhs, tol),
        _tally("difference_bound_real_part", expr.real, rhs, tol),
        _tally("single_term_bound", np.abs(z / (b - z)), r / (b - r), tol),
    ]

    # 第二条：b > a > r
    a2 = r + rng.uniform(1e-3, 3.0, n)
    b2 = a2 + rng.uniform(1e-3, 3.0, n)
    lhs = np.abs(1.0 / ((a2 + z) * (b2 - z)))
    checks.append(_tally("product_bound", lhs, 1.0 / ((a2 - r) * (b2 + r)), tol))
    return checks


def _mobius_checks(rng: np.random.Generator, n: int, tol: float) -> List[LemmaCheck]:
    r = rng.uniform(0.01, 0.99, n)
    big_r = r + rng.uniform(1e-3, 3.0, n)
    zk = big_r * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, n))
    z = _disk_points(rng, r)

    lhs = np.abs(z / (z - zk) + r**2 / (big_r**2 - r**2))
    rhs = big_r * r / (big_r**2 - r**2)
    checks = [_tally("mobius_disk", lhs, rhs, tol)]

    # 取等号的边界配置：差的绝对值
    eq_lhs = np.abs(r / (r - big_r) + r**2 / (big_r**2 - r**2))
    residual = np.abs(eq_lhs - rhs) / np.maximum(1.0, rhs)
    checks.append(
        LemmaCheck(
            name="mobius_equality",
            trials=n,
            violations=int(np.count_nonzero(residual > tol)),
            worst_excess=float(np.max(residual)),
        )
    )

    beta = big_r + rng.uniform(1e-3, 3.0, n)
    lhs3 = np.abs(z / (z - zk) + r**2 / (big_r**2 - r**2) + r**2 / (beta**2 - r**2))
    rhs3 = big_r * r / (big_r**2 - r**2) + beta * r / (beta**2 - r**2)
    checks.append(_tally("two_term_disk_bound", lhs3, rhs3, tol))
    return checks


def lemma_inequality_suite(seed: int = 42, trials: int = 10_000, tol: float = DEFAULT_TOL) -> LemmaSuiteResult:
    """
    随机检验全部不等式

    Args:
        seed: 随机种子
        trials: 每个不等式的试验次数 (>= 1)
        tol: 相对容差

    Returns:
        LemmaSuiteResult，违反次数非零即为失败
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    checks = _difference_checks(rng, trials, tol) + _mobius_checks(rng, trials, tol)
    result = LemmaSuiteResult(seed=seed, trials=trials, tol=tol, checks=checks)

    summary: Dict[str, int] = {c.name: c.violations for c in checks}
    if result.passed:
        logger.success(f"✅ Lemma suite passed: {len(checks)} inequalities × {trials} trials (seed {seed})")
    else:
        logger.error(f"❌ Lemma suite violations: {summary}")
    return result

"""
Zeros - 零点定位与零点和

- locate_zeros: 𝔚 的正零点 ψ_n 与 Ψ' 的正零点（Ψ(z) = z^{ab} W(-z²)），交错性检查
- product_eval: Hadamard 部分乘积 ∏(1 - z²/ψ_n²)
- zero_sum: Σ 2z²/(ψ_n² - z²) 或 Σ z/(ψ_n² - z)，带尾部修正
- power_sums: 零点倒数平方的幂和 σ_j = Σ ζ_n^{-2j}（由 Taylor 系数经 Newton 恒等式得到）
"""

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.special import digamma, polygamma

from .errors import PoleProximity, ZeroSearchFailure
from .models import WrightParams
from .rootfind import EPS, bracketed_root
from .wright_core import eval_frak_w, eval_kernel, taylor_coefficients

Number = Union[float, complex]

DEFAULT_REFINE_TOL = 1e-13
POLE_GUARD = 1e-8  # 相对距离阈值
SCAN_BUDGET = 20_000  # 扫描阶段最多求值次数
BISECT_WIDTH = 1e-3
MAX_POWER_SUMS = 40
RAYLEIGH_RATIO_LIMIT = 0.25  # |u| / ζ_{N+1}² 超过该值时改用等差模型


class ZeroKind(str, Enum):
    """零点族"""

    PSI = "psi"  # 𝔚 的零点
    PSI_DERIV = "psi_deriv"  # Ψ' 的零点


class ZeroWeights(str, Enum):
    """零点和的权重形式"""

    QUADRATIC = "quadratic"  # Σ 2z²/(ζ² - z²)
    LINEAR = "linear"  # Σ z/(ζ² - z)


class TailModel(str, Enum):
    """未存储零点的尾部模型"""

    RAYLEIGH = "rayleigh"
    PROGRESSION = "progression"


class ZeroTable(BaseModel):
    """
    零点表

    psi: 𝔚 的前 n 个正零点；psi_deriv: Ψ' 的前 n+1 个正零点
    交错性：psi_deriv[k] < psi[k] < psi_deriv[k+1]
    """

    model_config = ConfigDict(frozen=True)

    params: WrightParams
    psi: Tuple[float, ...] = Field(min_length=1)
    psi_deriv: Tuple[float, ...] = Field(min_length=2)
    refine_tol: float = Field(default=DEFAULT_REFINE_TOL, gt=0)

    @model_validator(mode="after")
    def _check_ordering(self):
        if len(self.psi_deriv) != len(self.psi) + 1:
            raise ValueError(f"psi_deriv must hold {len(self.psi) + 1} zeros, got {len(self.psi_deriv)}")
        if any(x <= 0 for x in self.psi) or any(x <= 0 for x in self.psi_deriv):
            raise ValueError("zeros must be positive")
        violation = interlacing_violation(self.psi, self.psi_deriv)
        if violation is not None:
            raise ValueError(violation)
        return self

    @property
    def count(self) -> int:
        return len(self.psi)

    def zeros_of(self, kind: ZeroKind) -> Tuple[float, ...]:
        return self.psi if kind is ZeroKind.PSI else self.psi_deriv

    def covers(self, n: int) -> bool:
        return self.count >= n

    def to_json(self) -> str:
        return self.model_dump_json()

    @classmethod
    def from_json(cls, text: str) -> "ZeroTable":
        return cls.model_validate_json(text)


@dataclass(frozen=True)
class ZeroSum:
    """
    零点和结果

    Attributes:
        value: partial + tail
        partial: 存储零点上的有限和
        tail: 其余零点贡献的修正
        tail_bound: 尾部修正的误差估计
        terms_used: 使用的存储零点数
        model: 尾部模型
    """

    value: Number
    partial: Number
    tail: Number
    tail_bound: float
    terms_used: int
    model: TailModel


def interlacing_violation(psi, psi_deriv) -> Optional[str]:
    """检查严格递增与交错性，返回违反描述或 None"""
    if any(b <= a for a, b in zip(psi, psi[1:])):
        return "psi is not strictly increasing"
    if any(b <= a for a, b in zip(psi_deriv, psi_deriv[1:])):
        return "psi_deriv is not strictly increasing"
    for n, zero in enumerate(psi):
        if n + 1 < len(psi_deriv) and not (psi_deriv[n] < zero < psi_deriv[n + 1]):
            return (
                f"interlacing violated at n={n + 1}: "
                f"psi_deriv={psi_deriv[n]!r}, psi={zero!r}, next psi_deriv={psi_deriv[n + 1]!r}"
            )
    return None


def _scan_step(p: WrightParams) -> float:
    return 0.05 / math.sqrt(1.0 + p.ab)


def _scan_zeros(
    func: Callable[[float], float],
    count: int,
    initial_step: float,
    refine_tol: float,
    kind: str,
    budget: int = SCAN_BUDGET,
) -> Tuple[float, ...]:
    """
    从 0 向右扫描符号变化，逐个细化

    前两个零点用固定步长；之后步长取预测间隔的一半，
    预测间隔 g_pred = g_last·min(1, g_last/g_prev) 以跟随缩小的间隔
    """
    found: List[float] = []
    x_prev = 0.0
    f_prev = func(0.0)
    step = initial_step
    evals = 1

    while len(found) < count:
        if evals >= budget:
            raise ZeroSearchFailure(
                f"no sign change for {kind} #{len(found) + 1} within the scan budget ({budget} evaluations)",
                scanned_interval=(0.0, x_prev),
                found=len(found),
                kind=kind,
            )
        x_next = x_prev + step
        f_next = func(x_next)
        evals += 1

        if f_next == 0.0:
            found.append(x_next)
            f_next = -math.copysign(1.0, f_prev)
        elif (f_prev < 0) != (f_next < 0):
            res = bracketed_root(
                func,
                x_prev,
                x_next,
                xtol=refine_tol / 8.0,
                bisect_width=BISECT_WIDTH,
                rtol=EPS / 2.0,
                f_lo=f_prev,
                f_hi=f_next,
            )
            evals += res.function_calls
            found.append(res.root)
            logger.debug(f"   {kind} #{len(found)}: {res.root:.15g} ({res.function_calls} evaluations)")
        else:
            x_prev, f_prev = x_next, f_next
            continue

        if len(found) >= 2:
            g_last = found[-1] - found[-2]
            g_prev = found[-2] - found[-3] if len(found) >= 3 else g_last
            g_pred = g_last * min(1.0, g_last / g_prev)
            step = 0.5 * g_pred
        x_prev, f_prev = x_next, f_next

    return tuple(found)


def locate_kernel_zeros(
    p: WrightParams, kappa: float, count: int, refine_tol: float = DEFAULT_REFINE_TOL
) -> Tuple[float, ...]:
    """核函数 K_κ(x) = κ𝔚(x) + x𝔚'(x) 的前 count 个正零点"""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return _scan_zeros(
        lambda x: eval_kernel(p, x, kappa).value,
        count,
        _scan_step(p),
        refine_tol,
        kind=f"kernel(κ={kappa:g}) zeros",
    )


def locate_zeros(p: WrightParams, count: int, refine_tol: float = DEFAULT_REFINE_TOL) -> ZeroTable:
    """
    定位 𝔚 的前 count 个正零点与 Ψ' 的前 count+1 个正零点

    Args:
        p: 参数
        count: 零点个数 (>= 1)
        refine_tol: 细化后的区间宽度

    Returns:
        ZeroTable

    Raises:
        ZeroSearchFailure: 扫描预算内找不到符号变化，或交错性不成立
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if p.mu + p.nu <= 1.0:
        logger.warning(f"⚠️  μ + ν = {p.mu + p.nu:g} <= 1: 𝔚 may have too few real zeros for a table")

    logger.info(f"🔍 Locating {count} zeros of 𝔚 for {p.label()}")
    psi = _scan_zeros(lambda x: eval_frak_w(p, x).value, count, _scan_step(p), refine_tol, kind="zeros")
    logger.info(f"🔍 Locating {count + 1} zeros of Ψ'")
    psi_deriv = _scan_zeros(
        lambda x: eval_kernel(p, x, p.ab).value, count + 1, _scan_step(p), refine_tol, kind="derivative zeros"
    )

    violation = interlacing_violation(psi, psi_deriv)
    if violation is not None:
        logger.error(f"❌ {violation}")
        raise ZeroSearchFailure(violation, scanned_interval=(0.0, psi_deriv[-1]), found=count, kind="interlacing")

    logger.success(f"✅ Zero table ready: ψ₁={psi[0]:.12g}, ψ'₁={psi_deriv[0]:.12g}")
    return ZeroTable(params=p, psi=psi, psi_deriv=psi_deriv, refine_tol=refine_tol)


@lru_cache(maxsize=512)
def _power_sums_cached(p: WrightParams, n: int, kappa: Optional[float]) -> Tuple[float, ...]:
    c = taylor_coefficients(p, n + 1)
    e = c / c[0]
    if kappa is not None:
        k = np.arange(n + 1, dtype=float)
        e = e * (kappa + 2.0 * k) / kappa
    sigma = [0.0] * (n + 1)
    for k in range(1, n + 1):
        acc = (-1.0) ** (k - 1) * k * e[k]
        for i in range(1, k):
            acc += (-1.0) ** (i - 1) * e[i] * sigma[k - i]
        sigma[k] = float(acc)
    return tuple(sigma[1:])


def power_sums(p: WrightParams, n: int, kappa: Optional[float] = None) -> np.ndarray:
    """
    σ_j = Σ_n ζ_n^{-2j}, j = 1..n

    Args:
        p: 参数
        n: 幂和个数
        kappa: None 表示 𝔚 的零点；给定 κ 表示核函数 K_κ 的零点

    Returns:
        np.ndarray，长度 n
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return np.array(_power_sums_cached(p, n, kappa))


def product_eval(t: ZeroTable, z, n_terms: Optional[int] = None) -> Number:
    """Γ(a)Γ(b)𝔚(z) 的部分乘积 ∏_{n<=N}(1 - z²/ψ_n²)"""
    n_terms = t.count if n_terms is None else n_terms
    if not (0 <= n_terms <= t.count):
        raise ValueError(f"n_terms must lie in [0, {t.count}], got {n_terms}")
    if isinstance(z, (complex, np.complexfloating)):
        z = complex(z)
    else:
        z = float(z)
    out: Number = 1.0 if isinstance(z, float) else 1.0 + 0j
    for zero in t.psi[:n_terms]:
        out *= 1.0 - (z / zero) ** 2
    return out


def _progression_tail(zeros: np.ndarray, u: Number, weight: float) -> Tuple[Number, float]:
    """
    等差模型：其余零点视为 ζ_N + m·g (m >= 1)，g 为最后一个间隔

    Σ_{m>=1} 1/((ζ_N+mg)² - u) = [ψ(1+(ζ_N+s)/g) - ψ(1+(ζ_N-s)/g)]/(2sg)，s = √u
    """
    if len(zeros) < 2 or u == 0:
        return 0.0, 0.0
    last = float(zeros[-1])
    g = float(zeros[-1] - zeros[-2])
    g_prev = float(zeros[-2] - zeros[-3]) if len(zeros) >= 3 else g
    s = np.sqrt(complex(u))
    if abs(s) < 1e-6 * last:
        series = float(polygamma(1, 1.0 + last / g)) / g**2
    else:
        series = (digamma(1.0 + (last + s) / g) - digamma(1.0 + (last - s) / g)) / (2.0 * s * g)
    tail = weight * u * series
    if not isinstance(u, complex):
        tail = float(np.real(tail))
    else:
        tail = complex(tail)
    bound = abs(tail) * abs(g - g_prev) / g + abs(tail) * EPS
    return tail, bound


def _rayleigh_tail(
    p: WrightParams, zeros: np.ndarray, u: Number, weight: float, kappa: Optional[float]
) -> Optional[Tuple[Number, float]]:
    """
    幂和模型：Σ_{n>N} u/(ζ_n² - u) = Σ_j u^j S_j，S_j = σ_j - Σ_{n<=N} ζ_n^{-2j}

    返回 None 表示 |u| 相对下一个零点过大，应改用等差模型
    """
    last = float(zeros[-1])
    gap = float(zeros[-1] - zeros[-2]) if len(zeros) >= 2 else last
    next_sq = (last + gap) ** 2
    q = abs(u) / next_sq
    if q > RAYLEIGH_RATIO_LIMIT:
        return None
    if u == 0:
        return 0.0, 0.0

    inv_sq = 1.0 / zeros**2
    sigma = power_sums(p, MAX_POWER_SUMS, kappa)
    s1 = max(float(sigma[0] - inv_sq.sum()), 0.0)

    tail: Number = 0.0 if not isinstance(u, complex) else 0j
    rounding = 0.0
    u_pow: Number = 1.0
    powers = np.ones_like(inv_sq)
    used = 0
    for j in range(1, MAX_POWER_SUMS + 1):
        u_pow = u_pow * u
        powers = powers * inv_sq
        s_j = float(sigma[j - 1] - powers.sum())
        tail += u_pow * s_j
        rounding += abs(u_pow) * EPS * (abs(float(sigma[j - 1])) * (j + 2) + abs(s_j))
        used = j
        remainder = s1 * abs(u) * q**j / (1.0 - q)
        if remainder <= 1e-18 * max(1.0, abs(tail)):
            break
    remainder = s1 * abs(u) * q**used / (1.0 - q)
    return weight * tail, weight * (remainder + rounding)


def zero_sum(
    t: ZeroTable,
    z,
    weights: ZeroWeights = ZeroWeights.QUADRATIC,
    n_terms: Optional[int] = None,
    kind: ZeroKind = ZeroKind.PSI,
    tail_model: TailModel = TailModel.RAYLEIGH,
) -> ZeroSum:
    """
    零点和

    quadratic: Σ_{n} 2z²/(ζ_n² - z²)；linear: Σ_{n} z/(ζ_n² - z)
    前 N 个零点精确求和，其余零点按 tail_model 修正

    Args:
        t: 零点表
        z: 求值点
        weights: 权重形式
        n_terms: 使用的存储零点个数 (默认: 全部)
        kind: 𝔚 的零点或 Ψ' 的零点
        tail_model: 尾部模型

    Raises:
        PoleProximity: |z² - ζ_n²|（或 |z - ζ_n²|）相对过小
    """
    zeros_all = t.zeros_of(kind)
    n_terms = len(zeros_all) if n_terms is None else n_terms
    if not (1 <= n_terms <= len(zeros_all)):
        raise ValueError(f"n_terms must lie in [1, {len(zeros_all)}], got {n_terms}")
    kappa = t.params.ab if kind is ZeroKind.PSI_DERIV else None
    return kernel_zero_sum(t.params, zeros_all[:n_terms], z, weights, kappa, tail_model)


def kernel_zero_sum(
    p: WrightParams,
    zeros,
    z,
    weights: ZeroWeights = ZeroWeights.QUADRATIC,
    kappa: Optional[float] = None,
    tail_model: TailModel = TailModel.RAYLEIGH,
) -> ZeroSum:
    """
    任意零点序列上的零点和

    zeros 为 𝔚 (kappa=None) 或核函数 K_κ 的前 N 个正零点；
    Rayleigh 尾部使用对应的幂和
    """
    zeros = np.asarray(zeros, dtype=float)
    n_terms = len(zeros)
    if n_terms < 1:
        raise ValueError("at least one zero is required")

    if isinstance(z, (complex, np.complexfloating)):
        z = complex(z)
    else:
        z = float(z)
    if weights is ZeroWeights.QUADRATIC:
        u: Number = z * z
        weight = 2.0
    else:
        u = z
        weight = 1.0

    if u == 0:
        zero = 0.0 if isinstance(z, float) else 0j
        return ZeroSum(zero, zero, zero, 0.0, n_terms, tail_model)

    sq = zeros**2
    distance = np.abs(sq - u) / sq
    nearest = int(np.argmin(distance))
    if distance[nearest] < POLE_GUARD:
        raise PoleProximity(
            f"z={z} is within {POLE_GUARD:g} (relative) of the pole at {zeros[nearest]!r}",
            z=z,
            pole=float(zeros[nearest]),
        )

    terms = u / (sq - u)
    if isinstance(u, complex):
        partial: Number = complex(math.fsum(terms.real), math.fsum(terms.imag)) * weight
    else:
        partial = math.fsum(terms) * weight

    model = tail_model
    result = None
    if tail_model is TailModel.RAYLEIGH:
        result = _rayleigh_tail(p, zeros, u, weight, kappa)
        if result is None:
            logger.debug(f"Rayleigh tail unavailable at |z|={abs(z):.4g}, using progression model")
            model = TailModel.PROGRESSION
    if result is None:
        result = _progression_tail(zeros, u, weight)
    tail, bound = result
    return ZeroSum(partial + tail, partial, tail, bound, n_terms, model)


__all__ = [
    "ZeroKind",
    "ZeroWeights",
    "TailModel",
    "ZeroTable",
    "ZeroSum",
    "interlacing_violation",
    "locate_zeros",
    "locate_kernel_zeros",
    "power_sums",
    "product_eval",
    "zero_sum",
    "kernel_zero_sum",
]

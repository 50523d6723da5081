"""
Normalized Functions - 三种归一化 f, g, h 的星形/凸性泛函

f(z) = (Γ(a)Γ(b) z^{ab} 𝔚(z))^{1/ab}
g(z) = Γ(a)Γ(b) z 𝔚(z)
h(z) = Γ(a)Γ(b) z W(-z)

每个泛函都有两条独立路径：
- 零点和路径：对数求导后的部分分式展开（zeros.zero_sum）
- 直接级数路径：W、W'、W'' 的级数（wright_core）

f 本身从不直接求值（z^{ab} 分支问题），只使用其对数导数的恒等式
"""

from functools import lru_cache
from typing import Tuple

from .errors import DerivativeZeroProximity, PoleProximity
from .models import Normalization, RatioKind, WrightParams
from .wright_core import (
    eval_frak_w,
    eval_frak_w_derivative,
    eval_kernel,
    eval_wright,
    eval_wright_derivative,
    taylor_coefficients,
)
from .zeros import (
    TailModel,
    ZeroKind,
    ZeroTable,
    ZeroWeights,
    kernel_zero_sum,
    locate_kernel_zeros,
    zero_sum,
)

DERIVATIVE_GUARD = 1e-10
VALUE_GUARD = 1e-13
KERNEL_ZERO_COUNT = 20

# g' 的零点是 K_1 的零点；h' 的零点是 K_2 零点的平方
_KERNEL_KAPPA = {Normalization.G: 1.0, Normalization.H: 2.0}


def _check_table(p: WrightParams, t: ZeroTable) -> None:
    if t.params != p:
        raise ValueError(f"zero table belongs to {t.params.label()}, not {p.label()}")


def _guard_value(value, scale: float, z) -> None:
    """分母接近 0 时拒绝求值"""
    if abs(value) < VALUE_GUARD * max(1.0, scale):
        raise PoleProximity(f"function vanishes (|u|={abs(value):.3e}) near z={z}", z=z, pole=abs(z))


def _guard_derivative(d1, d2, z) -> None:
    if abs(d1) < DERIVATIVE_GUARD * max(1.0, abs(d2) * abs(z)):
        raise DerivativeZeroProximity(
            f"u'(z) vanishes (|u'|={abs(d1):.3e}) near z={z}", z=z, pole=abs(z)
        )


# ---------------------------------------------------------------------------
# 级数系数
# ---------------------------------------------------------------------------


def g_series_coefficient(p: WrightParams, k: int) -> float:
    """g(z) = Σ_k g_k z^{2k+1}，g_k = Γ(a)Γ(b)(-1)^k / (Γ(a+kμ)Γ(b+kν))"""
    return _series_coefficient(p, k)


def h_series_coefficient(p: WrightParams, k: int) -> float:
    """h(z) = Σ_k h_k z^{k+1}，h_k 与 g_k 相同，只是幂次不同"""
    return _series_coefficient(p, k)


def _series_coefficient(p: WrightParams, k: int) -> float:
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    c = float(taylor_coefficients(p, k + 1)[k])
    sign = -1.0 if k % 2 else 1.0
    return sign * c * p.gamma_prefactor


def series_coefficients(norm: Normalization, p: WrightParams, n: int) -> Tuple[Tuple[int, float], ...]:
    """
    前 n 个 (幂次, 系数)

    g: 幂次 2k+1；h: 幂次 k+1。f 没有幂级数形式（z^{ab} 的分数次幂）
    """
    if norm is Normalization.F:
        raise ValueError("f has no power series in z (fractional power z^{ab}); use g or h")
    coeffs = []
    for k in range(n):
        power = 2 * k + 1 if norm is Normalization.G else k + 1
        coeffs.append((power, _series_coefficient(p, k)))
    return tuple(coeffs)


# ---------------------------------------------------------------------------
# 直接级数路径
# ---------------------------------------------------------------------------


def _frak_log_derivative(p: WrightParams, z):
    """z𝔚'(z)/𝔚(z)"""
    w0 = eval_frak_w(p, z)
    w1 = eval_frak_w_derivative(p, z, 1)
    _guard_value(w0.value, abs(z * w1.value), z)
    return z * w1.value / w0.value


def _kernel_log_derivative(p: WrightParams, z, kappa: float):
    """zK_κ'(z)/K_κ(z)"""
    k0 = eval_kernel(p, z, kappa, 0)
    k1 = eval_kernel(p, z, kappa, 1)
    _guard_derivative(k0.value, k1.value, z)
    return z * k1.value / k0.value


def star_ratio_direct(norm: Normalization, p: WrightParams, z):
    """
    zu'/u 的直接级数形式

    F: 1 + (1/ab)·z𝔚'/𝔚
    G: 1 + z𝔚'/𝔚
    H: 1 - zW'(-z)/W(-z)
    """
    if z == 0:
        return 1.0 if not isinstance(z, complex) else 1.0 + 0j
    if norm is Normalization.H:
        w0 = eval_wright(p, -z)
        w1 = eval_wright_derivative(p, -z, 1)
        _guard_value(w0.value, abs(z * w1.value), z)
        return 1.0 - z * w1.value / w0.value
    log_deriv = _frak_log_derivative(p, z)
    if norm is Normalization.F:
        return 1.0 + log_deriv / p.ab
    return 1.0 + log_deriv


def convex_ratio_direct(norm: Normalization, p: WrightParams, z):
    """
    1 + zu''/u' 的直接级数形式

    F: 1 + zΨ''/Ψ' + (1/ab - 1)·zΨ'/Ψ，其中 zΨ'/Ψ = ab + z𝔚'/𝔚，zΨ''/Ψ' = ab - 1 + zK'/K (κ = ab)
    G: g' = Γ(a)Γ(b)K_1，g'' = Γ(a)Γ(b)K_1'
    H: h' = Γ(a)Γ(b)(W(-z) - zW'(-z))，h'' = Γ(a)Γ(b)(zW''(-z) - 2W'(-z))
    """
    if z == 0:
        return 1.0 if not isinstance(z, complex) else 1.0 + 0j
    if norm is Normalization.F:
        ab = p.ab
        psi_log = ab + _frak_log_derivative(p, z)
        psi_prime_log = ab - 1.0 + _kernel_log_derivative(p, z, ab)
        return 1.0 + psi_prime_log + (1.0 / ab - 1.0) * psi_log
    if norm is Normalization.G:
        return 1.0 + _kernel_log_derivative(p, z, 1.0)

    w1 = eval_wright_derivative(p, -z, 1).value
    w2 = eval_wright_derivative(p, -z, 2).value
    d1 = eval_wright(p, -z).value - z * w1
    d2 = z * w2 - 2.0 * w1
    _guard_derivative(d1, d2, z)
    return 1.0 + z * d2 / d1


def h_derivatives(p: WrightParams, x) -> Tuple[float, float]:
    """(h'(x), h''(x))，不含 Γ(a)Γ(b) 前因子"""
    w0 = eval_wright(p, -x).value
    w1 = eval_wright_derivative(p, -x, 1).value
    w2 = eval_wright_derivative(p, -x, 2).value
    return w0 - x * w1, x * w2 - 2.0 * w1


# ---------------------------------------------------------------------------
# 零点和路径
# ---------------------------------------------------------------------------


def star_ratio(
    norm: Normalization, p: WrightParams, t: ZeroTable, z, tail_model: TailModel = TailModel.RAYLEIGH
):
    """
    zu'(z)/u(z)，零点和路径

    F: 1 - (1/ab)·Σ 2z²/(ψ_n²-z²)
    G: 1 - Σ 2z²/(ψ_n²-z²)
    H: 1 - Σ z/(ψ_n²-z)

    Raises:
        PoleProximity: z 过于接近 ±ψ_n（H: ψ_n²）
    """
    _check_table(p, t)
    if norm is Normalization.H:
        return 1.0 - zero_sum(t, z, ZeroWeights.LINEAR, tail_model=tail_model).value
    s = zero_sum(t, z, ZeroWeights.QUADRATIC, tail_model=tail_model).value
    if norm is Normalization.F:
        return 1.0 - s / p.ab
    return 1.0 - s


def convex_ratio(
    norm: Normalization, p: WrightParams, t: ZeroTable, z, tail_model: TailModel = TailModel.RAYLEIGH
):
    """
    1 + zu''(z)/u'(z)

    F: 1 - Σ 2z²/(ψ̃_n²-z²) - (1/ab - 1)·Σ 2z²/(ψ_n²-z²)，ψ̃_n 为 Ψ' 的零点
    G, H: 直接级数

    Raises:
        PoleProximity / DerivativeZeroProximity
    """
    _check_table(p, t)
    if norm is Normalization.F:
        s_deriv = zero_sum(t, z, ZeroWeights.QUADRATIC, kind=ZeroKind.PSI_DERIV, tail_model=tail_model).value
        if p.ab == 1.0:
            return 1.0 - s_deriv
        s = zero_sum(t, z, ZeroWeights.QUADRATIC, tail_model=tail_model).value
        return 1.0 - s_deriv - (1.0 / p.ab - 1.0) * s
    return convex_ratio_direct(norm, p, z)


@lru_cache(maxsize=256)
def _kernel_zeros(p: WrightParams, kappa: float, count: int) -> Tuple[float, ...]:
    return locate_kernel_zeros(p, kappa, count)


def convex_ratio_zero_sum(
    norm: Normalization, t: ZeroTable, z, count: int = KERNEL_ZERO_COUNT, tail_model: TailModel = TailModel.RAYLEIGH
):
    """
    G/H 凸性泛函的零点和路径（次要路径，用于交叉验证）

    G: 1 - Σ 2z²/(ζ_n²-z²)，ζ_n 为 K_1 的零点（即 g' 的零点）
    H: 1 - Σ z/(ζ_n²-z)，ζ_n 为 K_2 的零点（ζ_n² 为 h' 的零点）
    """
    if norm is Normalization.F:
        return convex_ratio(norm, t.params, t, z, tail_model)
    kappa = _KERNEL_KAPPA[norm]
    zeros = _kernel_zeros(t.params, kappa, count)
    weights = ZeroWeights.QUADRATIC if norm is Normalization.G else ZeroWeights.LINEAR
    return 1.0 - kernel_zero_sum(t.params, zeros, z, weights, kappa, tail_model).value


def derivative_zero(norm: Normalization, t: ZeroTable) -> float:
    """
    u' 的第一个正零点

    F: psi_deriv[0]；G: K_1 的第一个零点；H: K_2 第一个零点的平方
    """
    if norm is Normalization.F:
        return t.psi_deriv[0]
    zero = _kernel_zeros(t.params, _KERNEL_KAPPA[norm], 1)[0]
    return zero if norm is Normalization.G else zero * zero


def functional(kind: RatioKind, norm: Normalization, t: ZeroTable, z, tail_model: TailModel = TailModel.RAYLEIGH):
    """按泛函类型分发"""
    if kind is RatioKind.STAR:
        return star_ratio(norm, t.params, t, z, tail_model)
    return convex_ratio(norm, t.params, t, z, tail_model)


def functional_domain(kind: RatioKind, norm: Normalization, t: ZeroTable) -> float:
    """泛函在正实轴上的定义区间右端点"""
    if kind is RatioKind.STAR:
        return t.psi[0] ** 2 if norm is Normalization.H else t.psi[0]
    return derivative_zero(norm, t)


__all__ = [
    "g_series_coefficient",
    "h_series_coefficient",
    "series_coefficients",
    "star_ratio",
    "star_ratio_direct",
    "convex_ratio",
    "convex_ratio_direct",
    "convex_ratio_zero_sum",
    "h_derivatives",
    "derivative_zero",
    "functional",
    "functional_domain",
]

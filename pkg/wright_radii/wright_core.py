"""
Wright Core - 四参数 Wright 函数求值

W(z) = Σ_k z^k / (Γ(a+kμ) Γ(b+kν))，以及其导数和复合函数 𝔚(z) = W(-z²)

求值策略：
1. 每一项在对数域计算：ln|t_k| = ln c_k + k ln|z|，符号/相位单独跟踪
2. 停止准则：连续 3 项满足 |t_K| <= tol·max(1, |S_K|)，且几何尾部估计 |t_K|ρ/(1-ρ) <= tol
3. 双精度舍入界超过 tol 时（大 |z| 的抵消），自动切换到 mpmath 扩展精度重新求和
4. 系数 c_k = 1/(Γ(a+kμ)Γ(b+kν)) 按参数缓存（加锁，线程安全）
"""

import math
import threading
from collections import OrderedDict
from typing import List, Optional, Tuple, Union

import mpmath
import numpy as np
from loguru import logger
from scipy.special import gammaln

from .config import get_settings
from .errors import DomainError, NonConvergence
from .models import EvalResult, WrightParams

Number = Union[float, complex]

EPS = float(np.finfo(float).eps)
CHUNK = 64  # 每批计算的项数
SMALL_RUN = 3  # 停止准则要求的连续小项个数
_MEMO_CAPACITY = 256

# mpmath 的精度是全局状态，扩展精度求和串行执行
_MP_LOCK = threading.Lock()


def log_gamma(x: float) -> float:
    """
    ln Γ(x)，x > 0

    Raises:
        DomainError: x <= 0 或非有限值
    """
    if not isinstance(x, (int, float, np.floating, np.integer)):
        raise DomainError(f"log_gamma expects a real number, got {type(x).__name__}")
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"log_gamma is defined for finite x > 0, got {x}")
    return float(gammaln(x))


class _CoefficientMemo:
    """
    系数缓存

    - 双精度：ln c_k（numpy 数组，按需扩容）
    - 扩展精度：c_k 的 mpf 列表，按 (参数, dps 档位) 缓存
    """

    def __init__(self, capacity: int = _MEMO_CAPACITY):
        self._lock = threading.Lock()
        self._capacity = capacity
        self._log: "OrderedDict[WrightParams, np.ndarray]" = OrderedDict()
        self._mp: "OrderedDict[Tuple[WrightParams, int], List]" = OrderedDict()

    def log_coefficients(self, p: WrightParams, n: int) -> np.ndarray:
        with self._lock:
            arr = self._log.get(p)
            if arr is not None and len(arr) >= n:
                self._log.move_to_end(p)
                return arr[:n]
        size = max(CHUNK, 1 << max(0, n - 1).bit_length())
        k = np.arange(size, dtype=float)
        arr = -(gammaln(p.a + k * p.mu) + gammaln(p.b + k * p.nu))
        with self._lock:
            self._log[p] = arr
            self._log.move_to_end(p)
            while len(self._log) > self._capacity:
                self._log.popitem(last=False)
        return arr[:n]

    def mp_coefficients(self, p: WrightParams, dps: int, n: int) -> List:
        """在当前 mpmath 精度下返回前 n 个 c_k"""
        key = (p, dps)
        with self._lock:
            coeffs = self._mp.get(key)
            if coeffs is not None and len(coeffs) >= n:
                self._mp.move_to_end(key)
                return coeffs
        coeffs = list(coeffs) if coeffs is not None else []
        a, b, mu, nu = mpmath.mpf(p.a), mpmath.mpf(p.b), mpmath.mpf(p.mu), mpmath.mpf(p.nu)
        for k in range(len(coeffs), max(n, CHUNK)):
            coeffs.append(mpmath.rgamma(a + k * mu) * mpmath.rgamma(b + k * nu))
        with self._lock:
            self._mp[key] = coeffs
            self._mp.move_to_end(key)
            while len(self._mp) > self._capacity:
                self._mp.popitem(last=False)
        return coeffs

    def clear(self) -> None:
        with self._lock:
            self._log.clear()
            self._mp.clear()


_memo = _CoefficientMemo()


def taylor_coefficients(p: WrightParams, n: int) -> np.ndarray:
    """前 n 个系数 c_k = 1/(Γ(a+kμ)Γ(b+kν))"""
    if n < 0:
        raise DomainError(f"coefficient count must be >= 0, got {n}")
    return np.exp(_memo.log_coefficients(p, n))


def _as_argument(z) -> Number:
    """实数走实数快速路径，其余按复数处理"""
    if isinstance(z, (complex, np.complexfloating)):
        return complex(z)
    return float(z)


def _falling_factorial(k: int, order: int) -> int:
    out = 1
    for j in range(order):
        out *= k - j
    return out


def _sum_double(p: WrightParams, w: Number, order: int, max_terms: int, tol: float):
    """
    双精度求和

    Returns:
        (value, tail, rounding, terms_used, log_abs_hint)；
        若出现溢出，value 为 None，log_abs_hint 为最大项的对数
    """
    is_real = isinstance(w, float)
    log_abs_w = math.log(abs(w))
    arg = 0.0 if is_real else math.atan2(w.imag, w.real)
    negative = is_real and w < 0

    terms_re: List[float] = []
    terms_im: List[float] = []
    running: Number = 0.0 if is_real else 0j
    rounding = 0.0
    abs_total = 0.0
    max_log = -math.inf
    small_run = 0
    prev_mag = 0.0

    k0 = order
    while k0 < max_terms:
        k1 = min(k0 + CHUNK, max_terms)
        k = np.arange(k0, k1, dtype=float)
        power = k - order
        log_ff = gammaln(k + 1.0) - gammaln(power + 1.0)
        log_mag = log_ff + _memo.log_coefficients(p, k1)[k0:k1] + power * log_abs_w
        max_log = max(max_log, float(log_mag.max()))
        if max_log > 700.0:
            return None, 0.0, math.inf, 0, max_log + math.log(k1)
        mags = np.exp(log_mag)
        if is_real:
            signs = np.where((power % 2 == 1) & negative, -1.0, 1.0)
            re_list = (mags * signs).tolist()
            im_list = [0.0] * len(re_list)
        else:
            phases = power * arg
            re_list = (mags * np.cos(phases)).tolist()
            im_list = (mags * np.sin(phases)).tolist()
        mag_list = mags.tolist()
        log_list = log_mag.tolist()

        for i, mag in enumerate(mag_list):
            terms_re.append(re_list[i])
            terms_im.append(im_list[i])
            running += re_list[i] if is_real else complex(re_list[i], im_list[i])
            abs_total += mag
            rounding += (abs(log_list[i]) + 4.0) * mag
            if mag <= tol * max(1.0, abs(running)):
                small_run += 1
            else:
                small_run = 0
            if small_run >= SMALL_RUN:
                if mag == 0.0:
                    tail = 0.0
                elif prev_mag > 0.0 and mag < prev_mag:
                    rho = mag / prev_mag
                    tail = mag * rho / (1.0 - rho)
                else:
                    tail = math.inf
                if tail <= tol:
                    if is_real:
                        value: Number = math.fsum(terms_re)
                    else:
                        value = complex(math.fsum(terms_re), math.fsum(terms_im))
                    n_used = int(k[i]) + 1
                    return value, tail, EPS * rounding, n_used, math.log(max(abs_total, 1e-300))
            prev_mag = mag
        k0 = k1

    raise NonConvergence(
        f"Wright series at z={w} (order {order}) did not converge within {max_terms} terms",
        terms_used=max_terms,
        last_term=prev_mag,
    )


def _sum_extended(p: WrightParams, w: Number, order: int, max_terms: int, tol: float, log_abs_hint: float):
    """mpmath 扩展精度求和，精度按项的量级与 tol 选取"""
    digits = (max(0.0, log_abs_hint) - math.log(tol)) / math.log(10.0)
    dps = 20 + int(math.ceil(digits))
    dps = 16 * ((dps + 15) // 16)  # 按档位取整，便于缓存

    with _MP_LOCK, mpmath.workdps(dps):
        wm = mpmath.mpf(w) if isinstance(w, float) else mpmath.mpc(w)
        total = mpmath.mpf(0)
        abs_total = mpmath.mpf(0)
        power = mpmath.mpf(1)
        small_run = 0
        prev_mag = mpmath.mpf(0)
        coeffs = _memo.mp_coefficients(p, dps, CHUNK)
        for k in range(order, max_terms):
            if k >= len(coeffs):
                coeffs = _memo.mp_coefficients(p, dps, 2 * len(coeffs))
            term = _falling_factorial(k, order) * coeffs[k] * power
            total += term
            mag = abs(term)
            abs_total += mag
            if mag <= tol * max(1, abs(total)):
                small_run += 1
            else:
                small_run = 0
            if small_run >= SMALL_RUN:
                if mag == 0:
                    tail = 0.0
                elif 0 < prev_mag and mag < prev_mag:
                    rho = mag / prev_mag
                    tail = float(mag * rho / (1 - rho))
                else:
                    tail = math.inf
                if tail <= tol:
                    rounding = float(abs_total) * 10.0 ** (-(dps - 2))
                    value: Number = float(total) if isinstance(w, float) else complex(total)
                    return value, tail, rounding, k + 1, dps
            prev_mag = mag
            power *= wm

    raise NonConvergence(
        f"Extended-precision Wright series at z={w} (order {order}) did not converge within {max_terms} terms",
        terms_used=max_terms,
        last_term=float(prev_mag),
    )


def _eval_series(
    p: WrightParams, z, order: int, max_terms: Optional[int], tol: Optional[float]
) -> EvalResult:
    settings = get_settings()
    max_terms = settings.max_terms if max_terms is None else int(max_terms)
    tol = settings.tol if tol is None else float(tol)
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if max_terms < 1:
        raise DomainError(f"max_terms must be >= 1, got {max_terms}")

    w = _as_argument(z)
    if w == 0:
        # 只剩 k = order 一项
        if order >= max_terms:
            raise NonConvergence("max_terms too small for the requested derivative order", terms_used=max_terms)
        log_c = float(_memo.log_coefficients(p, order + 1)[order])
        coeff = math.factorial(order) * math.exp(log_c)
        value: Number = coeff if isinstance(w, float) else complex(coeff)
        return EvalResult(value=value, error_bound=(abs(log_c) + 4.0) * EPS * coeff, terms_used=order + 1)

    value, tail, rounding, n_used, log_hint = _sum_double(p, w, order, max_terms, tol)
    if value is not None and rounding <= tol:
        return EvalResult(value=value, error_bound=tail + rounding, terms_used=n_used)

    logger.debug(f"Switching to extended precision for W^({order}) at z={w} (rounding estimate {rounding:.2e})")
    value, tail, rounding, n_used, _dps = _sum_extended(p, w, order, max_terms, tol, log_hint)
    # 转回双精度时的舍入
    rounding += EPS * abs(value)
    return EvalResult(value=value, error_bound=tail + rounding, terms_used=n_used, extended=True)


def eval_wright(p: WrightParams, z, max_terms: Optional[int] = None, tol: Optional[float] = None) -> EvalResult:
    """
    W(z) = Σ z^k / (Γ(a+kμ)Γ(b+kν))

    Args:
        p: 参数
        z: 实数或复数参数
        max_terms: 项数上限 (默认: 配置值 10000)
        tol: 截断容差 (默认: 配置值 1e-14)

    Returns:
        EvalResult

    Raises:
        NonConvergence: max_terms 内未满足停止准则
    """
    return _eval_series(p, z, 0, max_terms, tol)


def eval_wright_derivative(
    p: WrightParams, z, order: int = 1, max_terms: Optional[int] = None, tol: Optional[float] = None
) -> EvalResult:
    """W 的 1 阶或 2 阶导数，逐项求导，停止准则同 eval_wright"""
    if order not in (1, 2):
        raise DomainError(f"derivative order must be 1 or 2, got {order}")
    return _eval_series(p, z, order, max_terms, tol)


def eval_frak_w(p: WrightParams, z, max_terms: Optional[int] = None, tol: Optional[float] = None) -> EvalResult:
    """𝔚(z) = W(-z²)"""
    z = _as_argument(z)
    return eval_wright(p, -z * z, max_terms, tol)


def eval_frak_w_derivative(
    p: WrightParams, z, order: int = 1, max_terms: Optional[int] = None, tol: Optional[float] = None
) -> EvalResult:
    """
    𝔚'(z) = -2z W'(-z²)
    𝔚''(z) = -2W'(-z²) + 4z² W''(-z²)

    误差界按链式法则传播
    """
    if order not in (1, 2):
        raise DomainError(f"derivative order must be 1 or 2, got {order}")
    z = _as_argument(z)
    w = -z * z
    d1 = eval_wright_derivative(p, w, 1, max_terms, tol)
    if order == 1:
        return EvalResult(
            value=-2.0 * z * d1.value,
            error_bound=2.0 * abs(z) * d1.error_bound,
            terms_used=d1.terms_used,
            extended=d1.extended,
        )
    d2 = eval_wright_derivative(p, w, 2, max_terms, tol)
    return EvalResult(
        value=-2.0 * d1.value + 4.0 * z * z * d2.value,
        error_bound=2.0 * d1.error_bound + 4.0 * abs(z) ** 2 * d2.error_bound,
        terms_used=max(d1.terms_used, d2.terms_used),
        extended=d1.extended or d2.extended,
    )


def eval_kernel(
    p: WrightParams, z, kappa: float, order: int = 0, max_terms: Optional[int] = None, tol: Optional[float] = None
) -> EvalResult:
    """
    核函数 K_κ(z) = κ𝔚(z) + z𝔚'(z) 及其导数 K_κ'(z) = (κ+1)𝔚'(z) + z𝔚''(z)

    K_κ 的零点：κ = ab 时为 Ψ' 的零点，κ = 1 时为 g' 的零点，κ = 2 时为 h' 零点的平方根
    """
    z = _as_argument(z)
    d1 = eval_frak_w_derivative(p, z, 1, max_terms, tol)
    if order == 0:
        w0 = eval_frak_w(p, z, max_terms, tol)
        return EvalResult(
            value=kappa * w0.value + z * d1.value,
            error_bound=abs(kappa) * w0.error_bound + abs(z) * d1.error_bound,
            terms_used=max(w0.terms_used, d1.terms_used),
            extended=w0.extended or d1.extended,
        )
    if order == 1:
        d2 = eval_frak_w_derivative(p, z, 2, max_terms, tol)
        return EvalResult(
            value=(kappa + 1.0) * d1.value + z * d2.value,
            error_bound=abs(kappa + 1.0) * d1.error_bound + abs(z) * d2.error_bound,
            terms_used=max(d1.terms_used, d2.terms_used),
            extended=d1.extended or d2.extended,
        )
    raise DomainError(f"kernel order must be 0 or 1, got {order}")


def clear_coefficient_cache() -> None:
    _memo.clear()


__all__ = [
    "EvalResult",
    "log_gamma",
    "taylor_coefficients",
    "eval_wright",
    "eval_wright_derivative",
    "eval_frak_w",
    "eval_frak_w_derivative",
    "eval_kernel",
    "clear_coefficient_cache",
]

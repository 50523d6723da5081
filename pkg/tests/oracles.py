"""
闭式解与 mpmath oracle

bessel: (1, 1, 1, 1)，𝔚(z) = J₀(2z)
sine:   (1, 1.5, 1, 1)，Γ(a)Γ(b)𝔚(z) = sin(2z)/(2z)
b = 1:  (1, a, 1, 1)，𝔚(z) = z^{1-a} J_{a-1}(2z)，零点全为实数
"""

import math
from typing import List

import mpmath
import numpy as np
from scipy.optimize import brentq

from wright_radii.models import WrightParams


def j(order: int, x: float) -> float:
    return float(mpmath.besselj(order, x))


def bessel_zero(n: int) -> float:
    """j_{0,n}"""
    return float(mpmath.besseljzero(0, n))


def solve(f, lo: float, hi: float) -> float:
    return brentq(f, lo, hi, xtol=1e-15, rtol=1e-15)


def bessel_star_g(beta: float) -> float:
    """g = zJ₀(2z)：xJ₁(x) = βJ₀(x)，r = x/2"""
    x = solve(lambda x: x * j(1, x) - beta * j(0, x), 1e-9, bessel_zero(1) - 1e-12)
    return x / 2.0


def bessel_star_h(beta: float) -> float:
    """h = zJ₀(2√z)：yJ₁(y) = 2βJ₀(y)，r = y²/4"""
    y = solve(lambda y: y * j(1, y) - 2.0 * beta * j(0, y), 1e-9, bessel_zero(1) - 1e-12)
    return y * y / 4.0


def bessel_convex_g(beta: float) -> float:
    """g' = J₀(2z) - 2zJ₁(2z)：(β - x²)J₀(x) = (1 + β)xJ₁(x)，r = x/2"""
    first = solve(lambda x: j(0, x) - x * j(1, x), 0.5, 2.0)
    x = solve(lambda x: (beta - x * x) * j(0, x) - (1.0 + beta) * x * j(1, x), 1e-9, first - 1e-12)
    return x / 2.0


def sine_star_g(beta: float) -> float:
    """g = sin(2z)/2：1 - 2r·cot(2r) = β"""
    return solve(lambda r: 1.0 - 2.0 * r / math.tan(2.0 * r) - beta, 1e-9, math.pi / 2 - 1e-12)


def sine_star_f(beta: float, ab: float = 1.5) -> float:
    """(1/ab)(1 - 2r·cot(2r)) = β"""
    return solve(lambda r: (1.0 - 2.0 * r / math.tan(2.0 * r)) / ab - beta, 1e-9, math.pi / 2 - 1e-12)


def sine_star_h(beta: float) -> float:
    """1/2 - s·cot(2s) = β，r = s²"""
    s = solve(lambda s: 0.5 - s / math.tan(2.0 * s) - beta, 1e-9, math.pi / 2 - 1e-12)
    return s * s


def sine_convex_g(beta: float) -> float:
    """g' = cos(2z)：2r·tan(2r) = β"""
    return solve(lambda r: 2.0 * r * math.tan(2.0 * r) - beta, 1e-12, math.pi / 4 - 1e-12)


def bessel_family_draws(seed: int, n: int) -> List[WrightParams]:
    """μ = ν = 1，a 或 b 之一为 1，另一个在 [0.25, 3] 上随机"""
    rng = np.random.default_rng(seed)
    draws = []
    for k in range(n):
        free = float(rng.uniform(0.25, 3.0))
        if k % 2 == 0:
            draws.append(WrightParams(mu=1.0, a=free, nu=1.0, b=1.0))
        else:
            draws.append(WrightParams(mu=1.0, a=1.0, nu=1.0, b=free))
    return draws


def bessel_family_frak_w(p: WrightParams, x: float) -> float:
    """z^{-v} J_v(2z)，v = a + b - 2（a, b 之一为 1）"""
    v = p.a + p.b - 2.0
    return float(mpmath.besselj(v, 2 * x) * mpmath.mpf(x) ** (-v))


def wright_reference(p: WrightParams, z, order: int = 0, dps: int = 60) -> complex:
    """W^{(order)}(z) 的 mpmath 直接求和，逐项直到项可忽略"""
    with mpmath.workdps(dps):
        zm = mpmath.mpc(z)
        mu, a, nu, b = (mpmath.mpf(v) for v in p.as_tuple())
        total = mpmath.mpc(0)
        prev = mpmath.inf
        for k in range(order, 20_000):
            ff = math.prod(range(k - order + 1, k + 1))
            term = ff * mpmath.rgamma(a + k * mu) * mpmath.rgamma(b + k * nu) * zm ** (k - order)
            total += term
            mag = abs(term)
            if k > order + 10 and mag < prev and mag < mpmath.mpf(10) ** (-dps - 10) * max(1, abs(total)):
                break
            prev = mag
        return complex(total)


# 求解/验证网格用的非单位参数，均满足 0 < a, b <= 1
GENERAL_PARAMS = {
    "half": WrightParams(mu=1.0, a=0.5, nu=1.0, b=0.5),
    "cosine": WrightParams(mu=1.0, a=1.0, nu=1.0, b=0.5),
    "quarter": WrightParams(mu=1.0, a=0.75, nu=1.0, b=1.0),
}

# 网格第 i 组参数对应的 (β, γ, α)
GRID_SETTINGS = ((0.25, 0.0, 0.0), (0.5, 0.9, 0.5), (0.75, -0.9, 0.5))
GRID_FAMILIES = ("star", "convex", "exp-star", "exp-convex", "spiral")


def grid_kwargs(family: str, index: int) -> dict:
    beta, gamma, alpha = GRID_SETTINGS[index]
    if family in ("star", "convex"):
        return {"beta": beta}
    if family == "spiral":
        return {"gamma": gamma, "alpha": alpha}
    return {}

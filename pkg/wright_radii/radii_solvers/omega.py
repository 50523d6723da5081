"""
Ω_e = {w : |log w| < 1} 的圆盘判定
"""

import cmath
import math

from ..errors import DomainError

E = math.e
OMEGA_LEFT = (1.0 + 1.0 / E) / 2.0
OMEGA_MID = (E + 1.0 / E) / 2.0
OMEGA_RIGHT = (1.0 + E) / 2.0


def omega_e_inner_radius(a_center: float) -> float:
    """
    以实数 a 为圆心、含于 Ω_e 的最大圆盘半径 r_a

    r_a = a - 1/e,  (1+1/e)/2 <= a <= (e+1/e)/2
    r_a = e - a,    (e+1/e)/2 <= a <= (1+e)/2

    Raises:
        DomainError: a 不在 [(1+1/e)/2, (1+e)/2] 内
    """
    a_center = float(a_center)
    if not (OMEGA_LEFT <= a_center <= OMEGA_RIGHT):
        raise DomainError(f"centre must lie in [{OMEGA_LEFT:.12g}, {OMEGA_RIGHT:.12g}], got {a_center!r}")
    if a_center <= OMEGA_MID:
        return a_center - 1.0 / E
    return E - a_center


def omega_e_contains(w) -> bool:
    """|log w| < 1（主支）；Re w <= 0 的点不在 Ω_e 内"""
    w = complex(w)
    if w.real <= 0.0:
        return False
    return abs(cmath.log(w)) < 1.0


def disk_in_omega_e(centre: float, radius: float, slack: float = 1e-12) -> bool:
    """圆心为实数的圆盘 {|w - centre| < radius} 是否含于 Ω_e"""
    if not (OMEGA_LEFT <= centre <= OMEGA_RIGHT):
        return False
    return radius <= omega_e_inner_radius(centre) + slack

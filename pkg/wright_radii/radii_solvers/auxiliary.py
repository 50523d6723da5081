"""
Auxiliary - 指数类半径的圆盘构造

对 |z| = r 上的泛函值，取圆心 F(r) = ½(ratio(r) + ratio(ωr))、半径 D(r) = ½|ratio(r) - ratio(ωr)|，
ω = i (f, g) 或 ω = -1 (h)。若圆盘含于 Ω_e，则 |log ratio| < 1 在 |z| <= r 上成立。

根：
    t₃: F(r) = 0
    t₂: F(r) = ½(1 + 1/e)
    t₁: ξ(r) = 1/e - ratio(r) = 0（即指数半径本身）
"""

import math
from typing import List, Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from ..errors import BracketFailure, InvalidProblem
from ..models import Normalization, RadiusFamily, RadiusProblem
from ..normalized_functions import functional, functional_domain
from ..zeros import ZeroTable
from .base import root_on_interval
from .omega import OMEGA_LEFT, OMEGA_RIGHT, disk_in_omega_e, omega_e_inner_radius

GRID_POINTS = 16


class AuxiliaryReport(BaseModel):
    """圆盘构造报告"""

    model_config = ConfigDict(frozen=True)

    family: RadiusFamily
    norm: Normalization
    omega: str
    t1: Optional[float] = None
    t2: Optional[float] = None
    t3: Optional[float] = None
    t1_le_t2: Optional[bool] = None
    grid_points: int = 0
    disks_inside: bool = False
    worst_margin: Optional[float] = None


def _rotation(norm: Normalization) -> complex:
    return -1.0 + 0j if norm is Normalization.H else 1j


def disk_centre_roots(
    prob: RadiusProblem, t: ZeroTable, tol: float = 1e-12, grid_points: int = GRID_POINTS
) -> AuxiliaryReport:
    """
    计算 t₁, t₂, t₃ 并检查 (0, t₁] 网格上的圆盘是否含于 Ω_e

    Raises:
        InvalidProblem: 非指数类问题
    """
    if not prob.family.is_exponential:
        raise InvalidProblem(f"disk construction applies to exponential families, got {prob.family.value}")
    kind, norm = prob.kind, prob.norm
    omega = _rotation(norm)
    bound = functional_domain(kind, norm, t)

    def ratio(z):
        return functional(kind, norm, t, z)

    def centre(r: float) -> float:
        return 0.5 * float(np.real(ratio(r) + ratio(omega * r)))

    def disk_radius(r: float) -> float:
        return 0.5 * abs(ratio(r) - ratio(omega * r))

    def _root(f, label: str) -> Optional[float]:
        try:
            return root_on_interval(f, bound, tol, label)[0]
        except BracketFailure as e:
            logger.warning(f"⚠️  {label}: {e}")
            return None

    half = 0.5 * (1.0 + 1.0 / math.e)
    t3 = _root(lambda r: -centre(r), "F(r) = 0")
    t2 = _root(lambda r: half - centre(r), "F(r) = (1 + 1/e)/2")
    t1 = _root(lambda r: 1.0 / math.e - float(np.real(ratio(r))), "ξ(r) = 0")

    margins: List[float] = []
    inside = t1 is not None
    if t1 is not None:
        for r in np.linspace(t1 / grid_points, t1, grid_points):
            c, d = centre(float(r)), disk_radius(float(r))
            inside = inside and disk_in_omega_e(c, d)
            if OMEGA_LEFT <= c <= OMEGA_RIGHT:
                margins.append(omega_e_inner_radius(c) - d)

    report = AuxiliaryReport(
        family=prob.family,
        norm=norm,
        omega="-1" if norm is Normalization.H else "i",
        t1=t1,
        t2=t2,
        t3=t3,
        t1_le_t2=(t1 <= t2) if (t1 is not None and t2 is not None) else None,
        grid_points=grid_points if t1 is not None else 0,
        disks_inside=inside,
        worst_margin=min(margins) if margins else None,
    )
    logger.debug(f"Disk construction for {prob.describe()}: t1={t1}, t2={t2}, t3={t3}, inside={inside}")
    return report

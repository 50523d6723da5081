"""
Convex Engine - 凸性类半径

ConvexPhi(β)、ExpConvex、ConvexSpiral(γ, α) 化为 |1 + zu''/u' - 1| < β：
ExpConvex: β = 1 - 1/e；ConvexSpiral: β = (1-α)cos γ

规范残差 (1 - (1 + ru''/u')) - β：
    F: Σ 2r²/(ψ̃_n²-r²) + (1/ab - 1)·Σ 2r²/(ψ_n²-r²) - β    区间 (0, ψ̃₁)
    G: -rg''/g' - β                                        区间 (0, g' 的第一个零点)
    H: -rh''/h' - β                                        区间 (0, h' 的第一个零点)

主方程 ru''/u' + β = 0 为主；陈述式方程另行求根并报告：
    F: 1 + rf''/f' = 1 - abβ
    H: r·h''(√r) + β·h'(√r) = 0，区间 (0, ψ₁²)
"""

import math
from typing import Callable, Optional, Tuple

from ..errors import InvalidProblem
from ..models import Normalization, RadiusFamily, RadiusProblem
from ..normalized_functions import convex_ratio_direct, derivative_zero, h_derivatives
from ..wright_core import eval_kernel
from ..zeros import ZeroKind, ZeroTable, ZeroWeights, zero_sum
from .base import RadiusEngine


class ConvexRadiusEngine(RadiusEngine):
    """凸性、指数凸性与螺旋凸性半径"""

    FAMILIES = {RadiusFamily.CONVEX_PHI, RadiusFamily.EXP_CONVEX, RadiusFamily.CONVEX_SPIRAL}
    ENGINE_NAME = "convex"
    ENGINE_DESCRIPTION = "convexity radii: disk, exponential and γ-spirallike-convex classes"

    def validate(self, prob: RadiusProblem) -> None:
        super().validate(prob)
        p = prob.params
        if prob.family is RadiusFamily.EXP_CONVEX and prob.norm is Normalization.F and (p.a > 1.0 or p.b > 1.0):
            raise InvalidProblem(
                f"exponential convexity of f requires 0 < a, b <= 1, got a={p.a:g}, b={p.b:g}"
            )

    def interval_bound(self, prob: RadiusProblem, t: ZeroTable) -> float:
        return derivative_zero(prob.norm, t)

    def deficit(self, prob: RadiusProblem, t: ZeroTable, r: float) -> float:
        """1 - (1 + ru''/u') 在 z = r 处的值"""
        if prob.norm is Normalization.F:
            s_deriv = zero_sum(t, r, ZeroWeights.QUADRATIC, kind=ZeroKind.PSI_DERIV).value
            ab = prob.params.ab
            if ab == 1.0:
                return s_deriv
            return s_deriv + (1.0 / ab - 1.0) * zero_sum(t, r, ZeroWeights.QUADRATIC).value
        return 1.0 - convex_ratio_direct(prob.norm, prob.params, r)

    def residual(self, prob: RadiusProblem, t: ZeroTable, r: float) -> float:
        return self.deficit(prob, t, r) - prob.canonical_beta

    def literal_residual(self, prob: RadiusProblem, t: ZeroTable, r: float) -> float:
        p = prob.params
        beta = prob.canonical_beta
        if prob.norm is Normalization.F:
            # 1 + rΨ''/Ψ' + (1/ab - 1)rΨ'/Ψ = 1 - β
            return (1.0 - convex_ratio_direct(Normalization.F, p, r)) - beta
        if prob.norm is Normalization.G:
            k0 = eval_kernel(p, r, 1.0, 0).value
            k1 = eval_kernel(p, r, 1.0, 1).value
            return -(r * k1 + beta * k0)
        d1, d2 = h_derivatives(p, r)
        return -(r * d2 + beta * d1)

    def statement_residual(
        self, prob: RadiusProblem, t: ZeroTable
    ) -> Optional[Tuple[Callable[[float], float], float]]:
        if prob.family is not RadiusFamily.CONVEX_PHI:
            return None
        beta = prob.canonical_beta
        if prob.norm is Normalization.F:
            ab = prob.params.ab
            return (lambda r: self.deficit(prob, t, r) - ab * beta), self.interval_bound(prob, t)
        if prob.norm is Normalization.G:
            return (lambda r: self.literal_residual(prob, t, r)), self.interval_bound(prob, t)

        def h_statement(r: float) -> float:
            d1, d2 = h_derivatives(prob.params, math.sqrt(r))
            return -(r * d2 + beta * d1)

        return h_statement, t.psi[0] ** 2

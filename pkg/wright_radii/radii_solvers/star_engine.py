"""
Star Engine - 星形类半径

StarPhi(β)、ExpStar、Spiral(γ, α) 都化为 |zu'/u - 1| < β 的圆盘问题：
ExpStar: β = 1 - 1/e；Spiral: β = (1-α)cos γ

规范残差（零点和路径）：
    F: (1/ab)·Σ 2r²/(ψ_n²-r²) - β    区间 (0, ψ₁)
    G: Σ 2r²/(ψ_n²-r²) - β           区间 (0, ψ₁)
    H: Σ r/(ψ_n²-r) - β              区间 (0, ψ₁²)

原始方程（直接级数路径）：
    F: r𝔚'(r) + abβ𝔚(r) = 0
    G: r𝔚'(r) + β𝔚(r) = 0
    H: √r𝔚'(√r) + 2β𝔚(√r) = 0
"""

import math

from ..models import Normalization, RadiusFamily, RadiusProblem
from ..wright_core import eval_frak_w, eval_frak_w_derivative
from ..zeros import ZeroTable, ZeroWeights, zero_sum
from .base import RadiusEngine


class StarRadiusEngine(RadiusEngine):
    """星形、指数星形与螺旋形半径"""

    FAMILIES = {RadiusFamily.STAR_PHI, RadiusFamily.EXP_STAR, RadiusFamily.SPIRAL}
    ENGINE_NAME = "star"
    ENGINE_DESCRIPTION = "starlikeness radii: disk, exponential and γ-spirallike classes"

    def interval_bound(self, prob: RadiusProblem, t: ZeroTable) -> float:
        first = t.psi[0]
        return first * first if prob.norm is Normalization.H else first

    def deficit(self, prob: RadiusProblem, t: ZeroTable, r: float) -> float:
        """1 - zu'/u 在 z = r 处的值"""
        if prob.norm is Normalization.H:
            return zero_sum(t, r, ZeroWeights.LINEAR).value
        s = zero_sum(t, r, ZeroWeights.QUADRATIC).value
        return s / prob.params.ab if prob.norm is Normalization.F else s

    def residual(self, prob: RadiusProblem, t: ZeroTable, r: float) -> float:
        return self.deficit(prob, t, r) - prob.canonical_beta

    def literal_residual(self, prob: RadiusProblem, t: ZeroTable, r: float) -> float:
        p = prob.params
        beta = prob.canonical_beta
        if prob.norm is Normalization.H:
            x = math.sqrt(r)
            coeff = 2.0 * beta
        else:
            x = r
            coeff = p.ab * beta if prob.norm is Normalization.F else beta
        w0 = eval_frak_w(p, x).value
        w1 = eval_frak_w_derivative(p, x, 1).value
        return -(x * w1 + coeff * w0)

"""
Verify - 独立验证

- check_radius: 圆周采样 + 极值点外检 + 锐性残差
- sampled_condition_radius: 不依赖求解器的采样半径
- lemma_inequality_suite: 半径估计所用不等式的随机检验
- cross_oracle_suite: 零点和路径与直接级数路径的一致性
"""

from .cross_oracle import CrossOracleReport, OracleCheck, cross_oracle_suite
from .lemmas import LemmaCheck, LemmaSuiteResult, lemma_inequality_suite
from .radius_check import check_radius, condition_margin, sampled_condition_radius

__all__ = [
    "check_radius",
    "condition_margin",
    "sampled_condition_radius",
    "lemma_inequality_suite",
    "LemmaCheck",
    "LemmaSuiteResult",
    "cross_oracle_suite",
    "CrossOracleReport",
    "OracleCheck",
]

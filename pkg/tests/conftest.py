"""
公共测试夹具

两组有闭式解的参数：
- bessel: (μ, a, ν, b) = (1, 1, 1, 1)，W(z) = I₀(2√z)，𝔚(z) = J₀(2z)
- sine:   (μ, a, ν, b) = (1, 1.5, 1, 1)，Γ(a)Γ(b)𝔚(z) = sin(2z)/(2z)，ψ_n = nπ/2

以及一般参数下用于求解与验证网格的几组参数
"""

import pytest
from oracles import GENERAL_PARAMS

from wright_radii.config import get_settings
from wright_radii.models import WrightParams
from wright_radii.zeros import locate_zeros


@pytest.fixture(autouse=True)
def _fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(scope="session")
def bessel_params():
    return WrightParams(mu=1.0, a=1.0, nu=1.0, b=1.0)


@pytest.fixture(scope="session")
def sine_params():
    return WrightParams(mu=1.0, a=1.5, nu=1.0, b=1.0)


@pytest.fixture(scope="session")
def bessel_table(bessel_params):
    return locate_zeros(bessel_params, 20)


@pytest.fixture(scope="session")
def bessel_table_50(bessel_params):
    return locate_zeros(bessel_params, 50)


@pytest.fixture(scope="session")
def sine_table(sine_params):
    return locate_zeros(sine_params, 20)


@pytest.fixture(scope="session")
def general_tables():
    return {name: locate_zeros(p, 20) for name, p in GENERAL_PARAMS.items()}


@pytest.fixture(scope="session")
def wide_table():
    """ab = 2.5 > 1"""
    return locate_zeros(WrightParams(mu=1.0, a=2.5, nu=1.0, b=1.0), 20)

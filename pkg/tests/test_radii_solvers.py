import math

import pytest
from oracles import (
    GENERAL_PARAMS,
    GRID_FAMILIES,
    GRID_SETTINGS,
    bessel_convex_g,
    bessel_star_g,
    bessel_star_h,
    grid_kwargs,
    sine_convex_g,
    sine_star_f,
    sine_star_g,
    sine_star_h,
)

from wright_radii.errors import BracketFailure, InvalidProblem, PoleProximity
from wright_radii.models import EXP_BETA, Normalization, RadiusFamily, RadiusProblem
from wright_radii.normalized_functions import convex_ratio_direct, h_derivatives, star_ratio_direct
from wright_radii.radii_solvers import (
    ConvexRadiusEngine,
    RadiusEngineRegistry,
    StarRadiusEngine,
    get_engine,
    solve_radius,
    statement_radius,
)
from wright_radii.radii_solvers.base import guarded_upper_end, root_on_interval

F, G, H = Normalization.F, Normalization.G, Normalization.H


def _problem(family, norm, params, **kwargs):
    return RadiusProblem.build(family=family, norm=norm, params=params, **kwargs)


@pytest.mark.parametrize("beta", [0.25, 0.5, 1.0])
def test_star_g_bessel(bessel_table, beta):
    prob = _problem(RadiusFamily.STAR_PHI, G, bessel_table.params, beta=beta)
    res = solve_radius(prob, bessel_table)
    assert res.radius == pytest.approx(bessel_star_g(beta), rel=1e-10)
    assert res.bracket[0] <= res.radius <= res.bracket[1]
    assert res.literal_radius == pytest.approx(res.radius, rel=1e-10)
    assert res.interval_bound == bessel_table.psi[0]


def test_star_f_equals_g_when_ab_is_one(bessel_table):
    p = bessel_table.params
    rf = solve_radius(_problem(RadiusFamily.STAR_PHI, F, p, beta=0.5), bessel_table).radius
    rg = solve_radius(_problem(RadiusFamily.STAR_PHI, G, p, beta=0.5), bessel_table).radius
    assert rf == pytest.approx(rg, rel=1e-12)


def test_star_h_bessel(bessel_table):
    res = solve_radius(_problem(RadiusFamily.STAR_PHI, H, bessel_table.params, beta=0.5), bessel_table)
    assert res.radius == pytest.approx(bessel_star_h(0.5), rel=1e-10)
    assert res.interval_bound == pytest.approx(bessel_table.psi[0] ** 2)


def test_exp_star_g_bessel(bessel_table):
    res = solve_radius(_problem(RadiusFamily.EXP_STAR, G, bessel_table.params), bessel_table)
    assert res.canonical_beta == pytest.approx(1.0 - 1.0 / math.e)
    assert res.radius == pytest.approx(bessel_star_g(EXP_BETA), rel=1e-10)
    # 极值点处 zg'/g = 1/e
    assert star_ratio_direct(G, bessel_table.params, res.radius) == pytest.approx(1.0 / math.e, abs=1e-10)


@pytest.mark.parametrize(
    "norm, oracle",
    [(F, sine_star_f), (G, sine_star_g), (H, sine_star_h)],
)
def test_star_sine_closed_forms(sine_table, norm, oracle):
    res = solve_radius(_problem(RadiusFamily.STAR_PHI, norm, sine_table.params, beta=0.4), sine_table)
    assert res.radius == pytest.approx(oracle(0.4), rel=1e-10)


def test_spiral_reduces_to_star(sine_table):
    p = sine_table.params
    gamma, alpha = 0.6, 0.25
    spiral = solve_radius(_problem(RadiusFamily.SPIRAL, G, p, gamma=gamma, alpha=alpha), sine_table)
    star = solve_radius(
        _problem(RadiusFamily.STAR_PHI, G, p, beta=(1 - alpha) * math.cos(gamma)), sine_table
    )
    assert spiral.family is RadiusFamily.SPIRAL
    assert spiral.radius == pytest.approx(star.radius, rel=1e-12)


def test_convex_g_sine(sine_table):
    res = solve_radius(_problem(RadiusFamily.CONVEX_PHI, G, sine_table.params, beta=0.5), sine_table)
    assert res.radius == pytest.approx(sine_convex_g(0.5), rel=1e-10)
    assert res.interval_bound == pytest.approx(math.pi / 4, abs=1e-12)
    assert res.statement_agrees is True


@pytest.mark.parametrize("beta", [0.3, 1.0])
def test_convex_g_bessel(bessel_table, beta):
    res = solve_radius(_problem(RadiusFamily.CONVEX_PHI, G, bessel_table.params, beta=beta), bessel_table)
    assert res.radius == pytest.approx(bessel_convex_g(beta), rel=1e-10)


def test_convex_f_bessel_matches_g(bessel_table):
    p = bessel_table.params
    res = solve_radius(_problem(RadiusFamily.CONVEX_PHI, F, p, beta=0.5), bessel_table)
    assert res.radius == pytest.approx(bessel_convex_g(0.5), rel=1e-10)
    assert res.statement_radius == pytest.approx(res.radius, rel=1e-10)
    assert res.statement_agrees is True


def test_convex_f_sine_reports_statement_root(sine_table):
    p = sine_table.params
    prob = _problem(RadiusFamily.CONVEX_PHI, F, p, beta=0.5)
    res = solve_radius(prob, sine_table)
    assert 1.0 - convex_ratio_direct(F, p, res.radius) == pytest.approx(0.5, abs=1e-10)
    assert res.radius < res.interval_bound == sine_table.psi_deriv[0]
    assert res.statement_radius is not None
    assert statement_radius(prob, sine_table) == pytest.approx(res.statement_radius)


def test_convex_h_bessel(bessel_table):
    p = bessel_table.params
    res = solve_radius(_problem(RadiusFamily.CONVEX_PHI, H, p, beta=0.5), bessel_table)
    d1, d2 = h_derivatives(p, res.radius)
    assert res.radius * d2 / d1 == pytest.approx(-0.5, abs=1e-10)


def test_exp_convex_g_bessel(bessel_table):
    p = bessel_table.params
    res = solve_radius(_problem(RadiusFamily.EXP_CONVEX, G, p), bessel_table)
    assert convex_ratio_direct(G, p, res.radius) == pytest.approx(1.0 / math.e, abs=1e-10)
    assert res.statement_radius is None


def test_convex_spiral_reduces_to_convex(bessel_table):
    p = bessel_table.params
    spiral = solve_radius(_problem(RadiusFamily.CONVEX_SPIRAL, G, p, gamma=-0.4, alpha=0.1), bessel_table)
    assert spiral.radius == pytest.approx(bessel_convex_g(0.9 * math.cos(0.4)), rel=1e-10)


def test_exp_convex_f_requires_small_a_b(sine_table):
    prob = _problem(RadiusFamily.EXP_CONVEX, F, sine_table.params)
    with pytest.raises(InvalidProblem):
        solve_radius(prob, sine_table)


def test_mismatched_table(bessel_table, sine_params):
    with pytest.raises(InvalidProblem):
        solve_radius(_problem(RadiusFamily.STAR_PHI, G, sine_params, beta=0.5), bessel_table)


def test_invalid_tolerance(bessel_table):
    with pytest.raises(InvalidProblem):
        solve_radius(_problem(RadiusFamily.STAR_PHI, G, bessel_table.params, beta=0.5), bessel_table, tol=-1.0)


def test_radius_increases_with_beta(sine_table):
    p = sine_table.params
    radii = [
        solve_radius(_problem(RadiusFamily.STAR_PHI, G, p, beta=beta), sine_table).radius for beta in (0.2, 0.5, 0.8)
    ]
    assert radii == sorted(radii)


def test_registry_covers_all_families():
    assert set(RadiusEngineRegistry.families()) == set(RadiusFamily)
    names = {info["name"] for info in RadiusEngineRegistry.list_engines()}
    assert names == {"star", "convex"}


@pytest.mark.parametrize("family", list(RadiusFamily))
def test_get_engine(family, bessel_params):
    prob = _problem(family, G, bessel_params, beta=0.5)
    engine = get_engine(prob)
    expected = StarRadiusEngine if family in StarRadiusEngine.FAMILIES else ConvexRadiusEngine
    assert isinstance(engine, expected)


def test_engine_rejects_foreign_family(bessel_table):
    prob = _problem(RadiusFamily.CONVEX_PHI, G, bessel_table.params, beta=0.5)
    with pytest.raises(InvalidProblem):
        StarRadiusEngine().solve(prob, bessel_table, 1e-12)


def test_root_on_interval_without_sign_change():
    with pytest.raises(BracketFailure) as info:
        root_on_interval(lambda r: -1.0, 1.0, 1e-12, "constant")
    assert info.value.residuals[1] == -1.0


def test_root_on_interval_finds_least_root():
    # 三个根 0.25, 0.5, 0.75
    root, bracket, residual, _ = root_on_interval(lambda r: (r - 0.25) * (r - 0.5) * (r - 0.75), 1.0, 1e-13, "cubic")
    assert root == pytest.approx(0.25, abs=1e-12)
    assert bracket[0] <= root <= bracket[1]
    assert abs(residual) < 1e-12


def test_guarded_upper_end_steps_inward():
    calls = []

    def f(r):
        calls.append(r)
        if r > 0.999:
            raise PoleProximity("near the end")
        return 1.0

    hi, value = guarded_upper_end(f, 1.0)
    assert hi <= 0.999
    assert value == 1.0
    assert len(calls) > 1


def test_guarded_upper_end_gives_up():
    def f(r):
        raise PoleProximity("always")

    with pytest.raises(BracketFailure):
        guarded_upper_end(f, 1.0)


# ---------------------------------------------------------------------------
# 一般参数
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("norm", [F, G, H])
@pytest.mark.parametrize("family", GRID_FAMILIES)
@pytest.mark.parametrize("index, name", list(enumerate(GENERAL_PARAMS)))
def test_residual_within_solver_tolerance(general_tables, index, name, family, norm):
    table = general_tables[name]
    prob = _problem(RadiusFamily(family), norm, table.params, **grid_kwargs(family, index))
    res = solve_radius(prob, table)
    assert abs(res.residual) <= 1e-12
    assert res.bracket[0] <= res.radius <= res.bracket[1]


@pytest.mark.parametrize("norm", [F, G, H])
@pytest.mark.parametrize("index, name", list(enumerate(GENERAL_PARAMS)))
def test_canonical_equivalences(general_tables, index, name, norm):
    table = general_tables[name]
    p = table.params
    _, gamma, alpha = GRID_SETTINGS[index]

    exp_star = solve_radius(_problem(RadiusFamily.EXP_STAR, norm, p), table).radius
    star_exp = solve_radius(_problem(RadiusFamily.STAR_PHI, norm, p, beta=EXP_BETA), table).radius
    assert exp_star == pytest.approx(star_exp, rel=1e-10)

    spiral = solve_radius(_problem(RadiusFamily.SPIRAL, norm, p, gamma=gamma, alpha=alpha), table).radius
    beta = (1.0 - alpha) * math.cos(gamma)
    star = solve_radius(_problem(RadiusFamily.STAR_PHI, norm, p, beta=beta), table).radius
    assert spiral == pytest.approx(star, rel=1e-10)


def test_f_below_g_when_ab_below_one(general_tables):
    table = general_tables["quarter"]
    rf = solve_radius(_problem(RadiusFamily.STAR_PHI, F, table.params, beta=0.5), table).radius
    rg = solve_radius(_problem(RadiusFamily.STAR_PHI, G, table.params, beta=0.5), table).radius
    assert rf < rg


def test_f_above_g_when_ab_above_one(wide_table):
    rf = solve_radius(_problem(RadiusFamily.STAR_PHI, F, wide_table.params, beta=0.5), wide_table).radius
    rg = solve_radius(_problem(RadiusFamily.STAR_PHI, G, wide_table.params, beta=0.5), wide_table).radius
    assert rf > rg


@pytest.mark.parametrize("norm", [F, G, H])
@pytest.mark.parametrize("beta", [0.25, 0.5, 0.75])
def test_convex_radius_below_star_radius(general_tables, norm, beta):
    table = general_tables["quarter"]
    convex = solve_radius(_problem(RadiusFamily.CONVEX_PHI, norm, table.params, beta=beta), table).radius
    star = solve_radius(_problem(RadiusFamily.STAR_PHI, norm, table.params, beta=beta), table).radius
    assert convex <= star


def test_root_on_interval_polishes_residual():
    # 根两侧斜率相差 1e6，区间宽度达到 tol 时陡峭一侧的残差仍远大于 ftol
    def f(r):
        return 1e3 * (r - 0.3) if r < 0.3 else 1e-3 * (r - 0.3)

    root, _, residual, _ = root_on_interval(f, 1.0, 1e-6, "kinked", ftol=1e-12)
    assert abs(residual) <= 1e-12
    assert root == pytest.approx(0.3, abs=1e-9)


def test_root_on_interval_unreachable_residual():
    # 在 0.3 处跳变，没有残差小于 ftol 的浮点数
    f = lambda r: -1.0 if r < 0.3 else 1.0  # noqa: E731
    with pytest.raises(BracketFailure):
        root_on_interval(f, 1.0, 1e-12, "jump", ftol=1e-12)

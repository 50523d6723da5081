import math

import pytest
from oracles import bessel_star_g, sine_star_g

from wright_radii.config import get_settings
from wright_radii.errors import EXIT_INVALID_PROBLEM
from wright_radii.models import Normalization, RadiusFamily
from wright_radii.sweep_scheduler import CSV_HEADER, SweepScheduler
from wright_radii.zeros import locate_zeros


def _base(params, **overrides):
    base = {
        "mu": params.mu,
        "a": params.a,
        "nu": params.nu,
        "b": params.b,
        "family": RadiusFamily.STAR_PHI,
        "norm": Normalization.G,
        "beta": 0.5,
        "gamma": 0.0,
        "alpha": 0.0,
    }
    base.update(overrides)
    return base


def test_csv_header():
    assert ",".join(CSV_HEADER) == "mu,a,nu,b,family,norm,beta,gamma,alpha,radius,residual,verified"


def test_build_points(sine_params):
    points = SweepScheduler.build_points(_base(sine_params), "beta", [0.1, 0.2])
    assert [p["beta"] for p in points] == [0.1, 0.2]
    assert all(p["a"] == 1.5 for p in points)


def test_build_points_rejects_unknown_axis(sine_params):
    with pytest.raises(ValueError):
        SweepScheduler.build_points(_base(sine_params), "delta", [0.1])


def test_sweep_preserves_grid_order(sine_table):
    calls = []

    def provider(p):
        calls.append(p)
        return sine_table

    grid = [0.8, 0.2, 0.5, 0.3]
    scheduler = SweepScheduler(provider, threads=4)
    rows = scheduler.run(SweepScheduler.build_points(_base(sine_table.params), "beta", grid))
    assert [r.index for r in rows] == [0, 1, 2, 3]
    assert [r.beta for r in rows] == grid
    for r, beta in zip(rows, grid):
        assert r.ok
        assert r.radius == pytest.approx(sine_star_g(beta), rel=1e-10)
    # 同一参数只构建一次零点表
    assert len(calls) == 1


def test_sweep_records_failures(sine_table):
    # exp-convex f 要求 a <= 1，而 a = 1.5
    scheduler = SweepScheduler(lambda p: sine_table, threads=2)
    points = SweepScheduler.build_points(
        _base(sine_table.params, family=RadiusFamily.EXP_CONVEX, norm=Normalization.F), "gamma", [0.0, 0.1]
    )
    rows = scheduler.run(points)
    assert all(not r.ok for r in rows)
    assert all(r.exit_code == EXIT_INVALID_PROBLEM for r in rows)
    assert all("InvalidProblem" in r.error for r in rows)


def test_sweep_over_parameter_axis(bessel_params):
    tables = {}

    def provider(p):
        tables[p] = locate_zeros(p, 10)
        return tables[p]

    scheduler = SweepScheduler(provider, threads=2)
    # a = 1: 𝔚 = J₀(2z)；a = 2: 𝔚 = J₁(2z)/z
    rows = scheduler.run(SweepScheduler.build_points(_base(bessel_params), "a", [1.0, 2.0]))
    assert len(tables) == 2
    assert all(r.ok for r in rows)
    assert rows[0].radius == pytest.approx(bessel_star_g(0.5), rel=1e-9)
    assert not math.isclose(rows[0].radius, rows[1].radius)


def test_sweep_with_verification(sine_table):
    scheduler = SweepScheduler(lambda p: sine_table, threads=1, verify=True, n_samples=90)
    rows = scheduler.run(SweepScheduler.build_points(_base(sine_table.params), "beta", [0.5]))
    assert rows[0].verified is True


def test_empty_sweep_rejected(sine_table):
    with pytest.raises(ValueError):
        SweepScheduler(lambda p: sine_table).run([])


def test_thread_cap_from_environment(monkeypatch, sine_table):
    monkeypatch.setenv("WRIGHT_RADII_THREADS", "2")
    get_settings.cache_clear()
    scheduler = SweepScheduler(lambda p: sine_table, threads=16)
    assert scheduler.threads == 2

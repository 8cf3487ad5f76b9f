import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agentheat.engine import diagnostics, init_state, run, step
from agentheat.lattice import All, GridSpec, Material, Point, Rect, Row
from agentheat.output import MemorySink
from agentheat.physics import (
    Convective,
    Dirichlet,
    FluxMode,
    FluxSchedule,
    Insulated,
    VolumetricConstant,
    VolumetricLinear,
    schedule_value,
)
from agentheat.scenario import OutputPlan, Probe, Scenario, ScenarioError, SourceSpec, builtin
from reference import reference_run

PLATE = Material(1.5, 1000.0, 1500.0)
UNIT = Material(1.0, 1.0, 1.0)


def plain(nx=5, ny=5, **kw):
    kw.setdefault("dt", 0.005)
    kw.setdefault("steps", 10)
    return Scenario(grid=GridSpec(nx, ny, 0.001), material=PLATE, **kw)


class TestInit:
    def test_fig2(self):
        T = init_state(builtin("fig2")).temperature
        assert np.all(T[0] == 20.0)
        assert np.all(T[1:] == 0.0)

    def test_no_sources(self):
        T = init_state(plain(initial_temperature=3.5)).temperature
        assert np.all(T == 3.5)

    def test_fig4_pulse(self):
        T = init_state(builtin("fig4")).temperature
        assert T[20, 20] == 50.0
        T = T.copy()
        T[20, 20] = 0.0
        assert np.all(T == 0.0)

    def test_override_order(self):
        s = plain(initial_overrides=((Rect(0, 0, 2, 2), 1.0), (Point(1, 1), 7.0)))
        T = init_state(s).temperature
        assert T[1, 1] == 7.0 and T[0, 0] == 1.0 and T[4, 4] == 0.0

    def test_refuses_invalid(self):
        s = plain(sources=(SourceSpec(Point(9, 9), Dirichlet(((0.0, 1.0),))),))
        with pytest.raises(ScenarioError, match="point"):
            init_state(s)

    def test_bad_workers(self):
        with pytest.raises(ValueError):
            init_state(plain(), workers=0)


class TestStep:
    def test_uniform_field_is_fixed(self, backend):
        st_ = init_state(plain(initial_temperature=4.0), backend=backend)
        h0 = diagnostics(st_).enthalpy
        run(st_, 50)
        assert np.all(st_.temperature == 4.0)
        assert diagnostics(st_).enthalpy == h0

    def test_fig2_first_step(self, backend):
        st_ = init_state(builtin("fig2"), backend=backend)
        step(st_)
        assert st_.temperature[1] == pytest.approx(np.full(41, 0.1), rel=1e-14)
        assert np.all(st_.temperature[2:] == 0.0)
        assert np.all(st_.temperature[0] == 20.0)

    def test_3x3_two_steps_by_hand(self, backend):
        # h = lambda = C = rho = 1, dt = 0.1: each contact moves 0.1 * dT per step.
        s = Scenario(grid=GridSpec(3, 3, 1.0), material=UNIT, dt=0.1, steps=2,
                     initial_overrides=((Point(1, 1), 10.0),))
        st_ = init_state(s, backend=backend)
        step(st_)
        np.testing.assert_allclose(st_.temperature, [[0, 1, 0], [1, 6, 1], [0, 1, 0]], rtol=1e-15, atol=1e-15)
        step(st_)
        np.testing.assert_allclose(
            st_.temperature, [[0.2, 1.3, 0.2], [1.3, 4.0, 1.3], [0.2, 1.3, 0.2]], rtol=1e-15
        )
        assert st_.step_index == 2
        assert st_.t == pytest.approx(0.2)

    def test_dirichlet_follows_schedule(self, backend):
        ramp = ((0.0, 0.0), (0.05, 10.0))
        s = plain(sources=(SourceSpec(Point(2, 2), Dirichlet(ramp)),))
        st_ = init_state(s, backend=backend)
        for _ in range(15):
            step(st_)
            assert st_.temperature[2, 2] == schedule_value(ramp, st_.t)

    def test_flux_source_adds_like_gamma(self, backend):
        s = plain(nx=1, ny=1, sources=(SourceSpec(All(), FluxSchedule(((0.0, 3e6),))),))
        st_ = init_state(s, backend=backend)
        step(st_)
        assert st_.temperature[0, 0] == pytest.approx(0.01, rel=1e-14)

    def test_non_finite_is_not_trapped(self, backend):
        s = plain(nx=1, ny=1, initial_temperature=1.0,
                  sources=(SourceSpec(All(), VolumetricLinear(1e308)),))
        st_ = init_state(s, backend=backend)
        with np.errstate(all="ignore"):
            run(st_, 5)
            d = diagnostics(st_)
        assert not d.finite


def random_scenario(seed, n=8, boundary=None, mode=FluxMode.HARMONIC):
    rng = np.random.default_rng(seed)
    mats = tuple(
        (Point(i, j), Material(float(rng.uniform(0.01, 2.0)), float(rng.uniform(500, 2000)),
                               float(rng.uniform(1000, 3000))))
        for j in range(n) for i in range(n)
    )
    temps = tuple((Point(i, j), float(rng.uniform(-20, 60))) for j in range(n) for i in range(n))
    sources = (
        SourceSpec(Point(1, 2), Dirichlet(((0.0, 30.0), (0.2, 80.0)))),
        SourceSpec(Rect(3, 3, n - 2, n - 1), VolumetricLinear(2e5)),
        SourceSpec(Rect(n - 3, 0, n - 1, 1), FluxSchedule(((0.0, 0.0), (0.3, -4e6)))),
        SourceSpec(Row(n - 1), VolumetricConstant(1.5e5)),
    )
    return Scenario(
        grid=GridSpec(n, n, 0.001), material=PLATE, dt=0.005, steps=100,
        material_regions=mats, initial_overrides=temps, sources=sources,
        boundary=boundary or Insulated(), flux_mode=mode,
    )


@pytest.mark.parametrize("boundary", [None, Convective(25.0, 15.0)])
@pytest.mark.parametrize("mode", list(FluxMode))
def test_matches_reference(backend, boundary, mode):
    s = random_scenario(3, n=6, boundary=boundary, mode=mode)
    st_ = init_state(s, backend=backend)
    expected = reference_run(s, st_.lattice.copy(), 0)
    assert np.array_equal(st_.temperature, expected)
    run(st_, 20)
    lattice0 = init_state(s).lattice
    assert np.array_equal(st_.temperature, reference_run(s, lattice0, 20))


@pytest.mark.parametrize("workers", [1, 2, 3, 8])
def test_worker_count_is_bit_identical(backend, workers):
    s = random_scenario(11, n=13)
    base = run(init_state(s, backend=backend), 60).temperature
    other = run(init_state(s, workers=workers, backend=backend), 60).temperature
    assert np.array_equal(base, other)


def test_backends_agree():
    from agentheat.kernels import BACKENDS

    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    s = random_scenario(5, n=17, boundary=Convective(40.0, -3.0))
    fields = [run(init_state(s, backend=b), 200).temperature for b in BACKENDS.values()]
    assert np.array_equal(fields[0], fields[1])


class TestRun:
    def test_zero_steps(self):
        sink = MemorySink()
        st_ = init_state(builtin("fig3"))
        run(st_, 0, [sink])
        assert [k for k, _, _ in sink.snapshots] == [0]
        assert st_.step_index == 0

    def test_snapshot_and_probe_cadence(self):
        s = dataclasses.replace(
            plain(), output=OutputPlan(snapshot_every=4, probes=(Probe("c", Point(2, 2)),)))
        sink = MemorySink()
        run(init_state(s), 10, [sink])
        assert [k for k, _, _ in sink.snapshots] == [0, 4, 8]
        assert len(sink.probes) == 11
        assert sink.probes[3][0] == pytest.approx(0.015)

    def test_composition(self, backend):
        s = random_scenario(7, n=7)
        a = init_state(s, backend=backend)
        run(a, 13)
        run(a, 29)
        b = run(init_state(s, backend=backend), 42)
        assert a.step_index == b.step_index == 42
        assert np.array_equal(a.temperature, b.temperature)

    def test_negative(self):
        with pytest.raises(ValueError):
            run(init_state(plain()), -1)


class TestDiagnostics:
    def test_zero(self):
        d = diagnostics(init_state(plain()))
        assert (d.t_min, d.t_max, d.t_mean, d.enthalpy) == (0.0, 0.0, 0.0, 0.0)

    def test_fig3_initial(self):
        st_ = init_state(builtin("fig3"))
        d = diagnostics(st_)
        assert d.t_max == 50.0 and st_.temperature[20, 20] == 50.0
        assert d.t_min == 0.0
        assert d.t_mean == 50.0 / 1681


def test_closed_form_uniform_combustion(backend):
    k, t0, n = 3e5, 2.0, 300
    s = plain(initial_temperature=t0, sources=(SourceSpec(All(), VolumetricLinear(k)),))
    st_ = run(init_state(s, backend=backend), n)
    expected = t0 * (1 + k * 0.005 / 1.5e6) ** n
    np.testing.assert_allclose(st_.temperature, expected, rtol=1e-12)
    assert np.all(st_.temperature == st_.temperature[0, 0])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 9), st.integers(2, 9))
def test_maximum_principle(seed, nx, ny):
    rng = np.random.default_rng(seed)
    temps = tuple((Point(i, j), float(rng.uniform(-5, 5))) for j in range(ny) for i in range(nx))
    s = plain(nx=nx, ny=ny, initial_overrides=temps)
    st_ = init_state(s)
    lo, hi = st_.temperature.min(), st_.temperature.max()
    for _ in range(200):
        step(st_)
        assert st_.temperature.min() >= lo and st_.temperature.max() <= hi


def test_monotone_heating_short():
    st_ = init_state(builtin("fig2"))
    prev = st_.temperature.copy()
    for _ in range(2000):
        step(st_)
        assert np.all(st_.temperature >= prev)
        prev = st_.temperature.copy()

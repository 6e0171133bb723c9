import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvsizing.dispatch import annual_import, simulate, sustainable_start, write_trace
from pvsizing.errors import InputError
from pvsizing.solar import generation_profile
from pvsizing.storage import StorageParams, size_storage, unconstrained_profile
from tests.conftest import mw

TOL = 1e-9


def balance_residuals(D, G, r, p):
    """Per-hour residuals of the demand-side and generation-side balances."""
    d, g = D.values * p.dt, G.values * p.dt
    delta = np.diff(r.storage_levels)
    charge = np.clip(delta, 0, None)
    draw = np.clip(-delta, 0, None)
    direct = np.minimum(d, g)
    demand_side = d - (direct + p.eta_d * draw + r.grid_import.values)
    gen_side = g - (direct + charge / p.eta_c + r.curtailment.values)
    return demand_side, gen_side


def test_no_storage_passthrough():
    D, G = mw([3, 1, 0, 2]), mw([1, 2, 0, 2])
    r = simulate(D, G, 0.0, StorageParams(), 0.0)
    np.testing.assert_array_equal(r.grid_import.values, [2, 0, 0, 0])
    np.testing.assert_array_equal(r.curtailment.values, [0, 1, 0, 0])


def test_toy_empty_start(toy, lossless):
    D, F = toy
    r = simulate(D, generation_profile(F, 2.0), 1.0, lossless, 0.0)
    np.testing.assert_array_equal(r.grid_import.values, [1, 0, 0, 0])
    np.testing.assert_array_equal(r.storage_levels, [0, 0, 0, 1, 0])
    np.testing.assert_array_equal(r.curtailment.values, 0)


def test_toy_storage_fills():
    D, G = mw([1, 1, 1, 1]), mw([0, 3, 3, 0])
    r = simulate(D, G, 2.0, StorageParams(1, 1, 1), 1.0)
    np.testing.assert_array_equal(r.grid_import.values, 0)
    np.testing.assert_array_equal(r.curtailment.values, [0, 0, 2, 0])
    np.testing.assert_array_equal(r.storage_levels, [1, 0, 2, 2, 1])


def test_lossy_discharge_delivers_level_times_eta():
    # 1 MWh stored at eta_d 0.8 delivers 0.8 MWh, so 0.2 MWh is imported
    r = simulate(mw([1.0]), mw([0.0]), 1.0, StorageParams(0.8, 0.8, 1.0), 1.0)
    assert r.grid_import.values[0] == pytest.approx(0.2)
    assert r.end_level == 0.0


def test_lossy_charge_curtails_rest():
    r = simulate(mw([0.0]), mw([2.0]), 1.0, StorageParams(0.8, 0.8, 1.0), 0.0)
    assert r.end_level == 1.0
    assert r.curtailment.values[0] == pytest.approx(2.0 - 1.0 / 0.8)


def test_start_outside_bounds_rejected():
    with pytest.raises(InputError):
        simulate(mw([1]), mw([0]), 1.0, StorageParams(), 1.5)
    with pytest.raises(InputError):
        simulate(mw([1]), mw([0]), 1.0, StorageParams(), -0.1)


def test_sustainable_start_balanced():
    D = mw([1, 2, 3])
    assert sustainable_start(D, D, 5.0, StorageParams()) == 0.0


def test_sustainable_start_toys(toy, lossless):
    D, F = toy
    assert sustainable_start(D, generation_profile(F, 2.0), 1.0, lossless) == 0.0
    G = mw([0, 3, 3, 0])
    s = sustainable_start(D, G, 2.0, lossless)
    assert s == 1.0
    assert simulate(D, G, 2.0, lossless, s).end_level == 1.0


def test_annual_import():
    r = simulate(mw(np.ones(8760)), mw(np.zeros(8760)), 0.0, StorageParams(), 0.0)
    assert annual_import(r) == 8760
    r = simulate(mw([1, 1, 1, 1]), mw([0, 1, 2, 0]), 1.0, StorageParams(1, 1, 1), 0.0)
    assert annual_import(r) == 1


series_pair = st.integers(1, 72).flatmap(
    lambda n: st.tuples(
        st.lists(st.floats(0, 5), min_size=n, max_size=n),
        st.lists(st.floats(0, 5), min_size=n, max_size=n),
    )
)


@settings(max_examples=150, deadline=None)
@given(series_pair, st.floats(0, 20), st.floats(0, 1), st.sampled_from([1.0, 0.8, 0.95]))
def test_bounds_and_energy_balance(pair, e, start_frac, eta):
    D, G = mw(pair[0]), mw(pair[1])
    p = StorageParams(eta, eta, 1.0)
    r = simulate(D, G, e, p, start_frac * e)
    assert np.all(r.storage_levels >= 0) and np.all(r.storage_levels <= e)
    assert np.all(r.grid_import.values >= 0) and np.all(r.curtailment.values >= 0)
    demand_side, gen_side = balance_residuals(D, G, r, p)
    assert np.max(np.abs(demand_side)) < TOL
    assert np.max(np.abs(gen_side)) < TOL


@settings(max_examples=60, deadline=None)
@given(series_pair, st.floats(0, 10), st.floats(0, 10))
def test_more_storage_never_imports_more(pair, e1, extra):
    D, G = mw(pair[0]), mw(pair[1])
    p = StorageParams()
    small = simulate(D, G, e1, p, sustainable_start(D, G, e1, p))
    large = simulate(D, G, e1 + extra, p, sustainable_start(D, G, e1 + extra, p))
    assert np.all(large.grid_import.values <= small.grid_import.values + TOL)


def test_fixed_point_iteration_closes():
    rng = np.random.default_rng(11)
    p = StorageParams()
    for _ in range(20):
        D, G = mw(rng.uniform(0, 5, 96)), mw(rng.uniform(0, 6, 96))
        e = rng.uniform(0, 30)
        s = sustainable_start(D, G, e, p, fixed_point_iters=200)
        r = simulate(D, G, e, p, s)
        assert abs(r.end_level - s) < TOL


def test_sized_storage_cycles_fully(week):
    D, F, _ = week
    p = StorageParams()
    G = generation_profile(F, 300.0)
    e = size_storage(unconstrained_profile(D, G, p))
    r = simulate(D, G, e, p, sustainable_start(D, G, e, p))
    assert annual_import(r) < TOL
    assert r.storage_levels.min() < TOL
    assert r.storage_levels.max() > e - TOL


def test_trace_file(tmp_path, toy, lossless):
    D, F = toy
    G = generation_profile(F, 2.0)
    r = simulate(D, G, 1.0, lossless, 0.0)
    write_trace(tmp_path / "t.csv", D, G, r)
    lines = (tmp_path / "t.csv").read_text().splitlines()
    assert lines[0] == "hour,demand,generation,storage_level,import,curtailment"
    assert lines[1] == "0,1,0,0,1,0"
    assert lines[3] == "2,1,2,1,0,0"
    assert len(lines) == 5

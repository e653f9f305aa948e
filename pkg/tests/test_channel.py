import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rissim.channel import (
    ISOTROPIC,
    AntennaPattern,
    LinkModel,
    Scenario,
    combined_pattern,
    exponent_for_gain,
    ideal_phase_profile,
    pattern_value,
    plate_gamma,
    power_upper_bound,
    received_power,
    reference_plate_power,
    to_db,
    watts_to_dbm,
)
from rissim.codebook import Codebook, ReflectionState
from rissim.experiment import load_bundled_scenario
from rissim.geometry import GeometryError, build_grid, column_groups
from rissim.optimizer import exhaustive_optimize, greedy_optimize

from helpers import F0, random_grid, random_scenario

seeds = st.integers(0, 2**32 - 1)


def test_pattern_examples():
    p = AntennaPattern.cosine_power(2)
    assert pattern_value(p, 0.0) == 1.0
    assert pattern_value(p, math.radians(60)) == pytest.approx(0.0625)
    assert pattern_value(p, math.radians(100)) == 0.0
    assert pattern_value(ISOTROPIC, math.radians(100)) == 1.0


@given(st.floats(0, 8), st.lists(st.floats(0, math.pi / 2), min_size=2, max_size=20))
def test_pattern_monotone_in_front(q, thetas):
    t = np.sort(thetas)
    v = pattern_value(AntennaPattern("cosine-power", q, 1.0), t)
    assert np.all((v >= 0) & (v <= 1))
    assert np.all(np.diff(v) <= 1e-15)


def test_pattern_validation():
    with pytest.raises(ValueError):
        AntennaPattern("dipole")
    with pytest.raises(ValueError):
        AntennaPattern("cosine-power", -1.0)
    with pytest.raises(ValueError):
        AntennaPattern(gain=0.0)


def test_gain_exponent_helper():
    assert exponent_for_gain(10.0) == pytest.approx(4.0)
    assert exponent_for_gain(2.0) == 0.0
    assert exponent_for_gain(1.0) == 0.0


def test_scenario_validation():
    with pytest.raises(ValueError):
        Scenario((1, 0, 0), (1, 0, 0), f=0.0)
    with pytest.raises(ValueError):
        Scenario((1, 0, 0), (1, 0, 0), f=F0, p_t=-1.0)


def test_combined_pattern_isotropic():
    g = build_grid(3, 4, 0.02, 0.02)
    sc = Scenario((1, 0.3, 0.1), (2, -1, 0.5), F0)
    np.testing.assert_array_equal(combined_pattern(sc, sc.geometry(g)), 1.0)


def test_combined_pattern_behind_tx_boresight():
    g = build_grid(1, 3, 0.5, 0.5)
    # Tx aims away from the left element
    sc = Scenario((1, 0, 0), (1, 0, 0), F0, tx_pattern=AntennaPattern.cosine_power(1), tx_boresight=(-1, 2, 0))
    F = combined_pattern(sc, sc.geometry(g))
    assert F[0] == 0.0 and F[2] > 0.0


def test_combined_pattern_centre_broadside():
    g = build_grid(3, 3, 0.02, 0.02)
    pat = AntennaPattern.cosine_power(4, 10)
    sc = Scenario((2, 0, 0), (3, 0, 0), F0, tx_pattern=pat, rx_pattern=pat, cell_pattern=AntennaPattern.cosine_power(0.5))
    assert combined_pattern(sc, sc.geometry(g))[4] == 1.0


def test_single_element_closed_form():
    g = build_grid(1, 1, 0.0225, 0.015)
    sc = Scenario((1, 0, 0), (1, 0, 0), F0)
    lam = 299_792_458.0 / F0
    assert lam == pytest.approx(0.07995, abs=1e-5)
    expected = 0.0225 * 0.015 * lam**2 / (64 * math.pi**3)
    got = received_power(sc, g, [1.0])
    assert abs(got - expected) / expected < 1e-12
    assert got == pytest.approx(1.087e-9, rel=1e-3)
    assert to_db(got) == pytest.approx(-89.6, abs=0.05)


def test_absorbing_surface():
    g = build_grid(4, 4, 0.02, 0.02)
    sc = Scenario((1, 0.2, 0), (2, -0.4, 0.1), F0)
    assert received_power(sc, g, np.zeros(16)) == 0.0


def test_symmetric_pair_doubles_field():
    sc = Scenario((1, 0, 0), (1, 0, 0), F0)
    single = received_power(sc, build_grid(1, 1, 0.0225, 0.015), [1.0])
    # pair at y = +-d/2: equal path lengths, so one element offset by the same amount
    pair = received_power(sc, build_grid(1, 2, 0.0225, 0.015), [1.0, 1.0])
    off = received_power(Scenario((1, -0.01125, 0), (1, -0.01125, 0), F0), build_grid(1, 1, 0.0225, 0.015), [1.0])
    assert pair == pytest.approx(4 * off, rel=1e-12)
    assert pair / single == pytest.approx(4.0, rel=1e-3)


def test_gamma_length_checked():
    with pytest.raises(ValueError):
        received_power(Scenario((1, 0, 0), (1, 0, 0), F0), build_grid(2, 2, 0.01, 0.01), [1.0])


def test_degenerate_geometry_propagates():
    with pytest.raises(GeometryError):
        received_power(Scenario((0, 1, 0), (1, 0, 0), F0), build_grid(2, 2, 0.01, 0.01), np.ones(4))


def _reference_power(sc, g, gamma):
    """Straight double loop over rows and columns with scalar math."""
    lam = 299_792_458.0 / sc.f
    pos = g.positions
    ctr = pos.mean(axis=0)

    def ang(u, v):
        dot = sum(a * b for a, b in zip(u, v))
        nu = math.sqrt(sum(a * a for a in u))
        nv = math.sqrt(sum(a * a for a in v))
        return math.acos(max(-1.0, min(1.0, dot / (nu * nv))))

    def pat(p, t):
        if p.kind == "isotropic":
            return 1.0
        return math.cos(t) ** (2 * p.q) if t < math.pi / 2 else 0.0

    tx_bs = [c - t for c, t in zip(ctr, sc.tx_pos)]
    rx_bs = [c - r for c, r in zip(ctr, sc.rx_pos)]
    total = 0j
    for n in range(g.n_rows):
        for m in range(g.n_cols):
            e = pos[n * g.n_cols + m]
            to_tx = [t - x for t, x in zip(sc.tx_pos, e)]
            to_rx = [r - x for r, x in zip(sc.rx_pos, e)]
            rt = math.sqrt(sum(a * a for a in to_tx))
            rr = math.sqrt(sum(a * a for a in to_rx))
            F = (
                pat(sc.tx_pattern, ang(tx_bs, [-a for a in to_tx]))
                * pat(sc.cell_pattern, ang((1, 0, 0), to_tx))
                * pat(sc.cell_pattern, ang((1, 0, 0), to_rx))
                * pat(sc.rx_pattern, ang(rx_bs, [-a for a in to_rx]))
            )
            total += math.sqrt(F) * gamma[n * g.n_cols + m] / (rt * rr) * cmath.exp(-2j * math.pi / lam * (rt + rr))
    pre = sc.p_t * sc.tx_pattern.gain * sc.rx_pattern.gain * g.d_x * g.d_y * lam**2 / (64 * math.pi**3)
    return pre * abs(total) ** 2


@pytest.mark.parametrize("name", ["scenario2_pos4", "scenario3", "scenario1_F"])
def test_matches_double_loop_reference(name):
    bundle = load_bundled_scenario(name)
    rng = np.random.default_rng(5)
    gamma = np.exp(1j * rng.uniform(-np.pi, np.pi, bundle.grid.n_elements)) * rng.uniform(0.3, 1.0, bundle.grid.n_elements)
    got = received_power(bundle.scenario, bundle.grid, gamma)
    ref = _reference_power(bundle.scenario, bundle.grid, gamma)
    assert abs(got - ref) / ref < 1e-12


def test_bit_stable_repeat():
    b = load_bundled_scenario("scenario3")
    link = LinkModel(b.scenario, b.grid)
    gam = plate_gamma(b.grid)
    assert link.power(gam) == link.power(gam.copy()) == received_power(b.scenario, b.grid, gam)


def _random_case(seed):
    rng = np.random.default_rng(seed)
    g = random_grid(rng)
    sc = random_scenario(rng)
    gamma = rng.uniform(0.1, 1.0, g.n_elements) * np.exp(1j * rng.uniform(-np.pi, np.pi, g.n_elements))
    return rng, g, sc, gamma


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_reciprocity(seed):
    _, g, sc, gamma = _random_case(seed)
    a = received_power(sc, g, gamma)
    b = received_power(sc.swapped(), g, gamma)
    assert b == pytest.approx(a, rel=1e-12, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(seeds, st.floats(-10, 10))
def test_global_phase_invariance(seed, alpha):
    _, g, sc, gamma = _random_case(seed)
    a = received_power(sc, g, gamma)
    assert received_power(sc, g, gamma * np.exp(1j * alpha)) == pytest.approx(a, rel=1e-12, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(seeds, st.floats(0.01, 1.0))
def test_magnitude_scaling(seed, s):
    _, g, sc, gamma = _random_case(seed)
    a = received_power(sc, g, gamma)
    assert received_power(sc, g, gamma * s) == pytest.approx(s * s * a, rel=1e-12, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_upper_bound(seed):
    _, g, sc, gamma = _random_case(seed)
    assert received_power(sc, g, gamma) <= power_upper_bound(sc, g, np.abs(gamma)) * (1 + 1e-12)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_ideal_profile_reaches_bound(seed):
    _, g, sc, _ = _random_case(seed)
    phi = ideal_phase_profile(sc, g)
    link = LinkModel(sc, g)
    terms = link.coeffs * np.exp(1j * phi)
    np.testing.assert_allclose(terms.imag, 0.0, atol=1e-9 * np.max(np.abs(terms)))
    assert np.all(terms.real >= 0)
    assert received_power(sc, g, np.exp(1j * phi)) == pytest.approx(power_upper_bound(sc, g), rel=1e-12)


def test_ideal_profile_constant_when_equidistant():
    g = build_grid(2, 2, 0.02, 0.02)
    phi = ideal_phase_profile(Scenario((3, 0, 0), (5, 0, 0), F0), g)
    np.testing.assert_allclose(phi, phi[0], atol=1e-12)


@pytest.mark.parametrize("n", [2, 4, 8])
def test_coherent_doubling_far_field(n):
    f = F0
    lam = 299_792_458.0 / f
    sc = Scenario((400, 30, 20), (300, -50, 10), f)
    small = build_grid(n, n, lam / 2, lam / 2)
    big = build_grid(n, 2 * n, lam / 2, lam / 2)
    p1 = received_power(sc, small, np.exp(1j * ideal_phase_profile(sc, small)))
    p2 = received_power(sc, big, np.exp(1j * ideal_phase_profile(sc, big)))
    assert to_db(p2 / p1) == pytest.approx(6.0206, abs=0.1)


def test_plate_is_uniform_180():
    g = build_grid(4, 4, 0.0225, 0.015)
    sc = Scenario((2, 0.3, 0), (1, -0.5, 0.2), F0)
    assert reference_plate_power(sc, g) == received_power(sc, g, np.full(16, np.exp(1j * np.pi)))


@pytest.mark.parametrize("shape", [(2, 2), (3, 3), (1, 4)])
def test_plate_optimal_at_broadside(shape):
    g = build_grid(*shape, 0.0225, 0.015)
    sc = Scenario((5, 0, 0), (5, 0, 0), F0)
    states = tuple(ReflectionState(f"p{k}", (F0,), (1.0,), (math.pi / 2 * k - math.pi,)) for k in range(4))
    cb = Codebook(states)
    groups = column_groups(g, 1)
    best = exhaustive_optimize(sc, g, groups, cb)
    p_best = received_power(sc, g, best.expand(cb, F0))
    assert reference_plate_power(sc, g) >= p_best * (1 - 1e-12)


def test_plate_far_below_optimized_in_deep_nlos():
    from rissim.codebook import measured_codebook

    b = load_bundled_scenario("scenario2_pos4")
    cb = measured_codebook()
    sc = b.scenario.at_frequency(3.75e9)
    _, trace = greedy_optimize(sc, b.grid, b.groups, cb)
    assert to_db(trace.final_power / reference_plate_power(sc, b.grid)) > 20.0


def test_dbm_conversion():
    assert watts_to_dbm(1e-3) == pytest.approx(0.0)
    assert watts_to_dbm(1.0) == pytest.approx(30.0)
    assert watts_to_dbm(0.0) == -math.inf
    np.testing.assert_allclose(watts_to_dbm(np.array([1e-3, 1e-6])), [0.0, -30.0])

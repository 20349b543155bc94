import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bellsim.polarizer import (
    AnalyzerSettings,
    amplitudes_at_ports,
    port_intensities,
    sequential_polarizers,
)
from bellsim.source import SourceParams, apply_pair_constraints, sample_draw_block


def _random_draws(n, seed=0, mean=1.0):
    return sample_draw_block(SourceParams(mean), np.random.default_rng(seed), n)


def test_aligned_and_crossed_axes():
    d = apply_pair_constraints(1.0, 0.0, 0.0, 0.0)
    u1n, u1p, _, _ = amplitudes_at_ports(d, AnalyzerSettings(0.0, 0.0))
    assert u1n == pytest.approx(1.0 + 0.0j, abs=1e-12)
    assert u1p == pytest.approx(0.0j, abs=1e-12)

    d = apply_pair_constraints(0.0, 1.0, 0.0, 0.0)
    u1n, u1p, _, _ = amplitudes_at_ports(d, AnalyzerSettings(0.0, 0.0))
    assert u1n == pytest.approx(0.0j, abs=1e-12)
    assert u1p == pytest.approx(1.0 + 0.0j, abs=1e-12)


def test_amplitudes_match_intensities():
    draws = _random_draws(100, seed=3)
    settings = AnalyzerSettings(0.37, 1.11)
    u1n, u1p, u2n, u2p = amplitudes_at_ports(draws, settings)
    ports = port_intensities(draws, settings)
    for amp, intensity in ((u1n, ports.i1n), (u1p, ports.i1p), (u2n, ports.i2n), (u2p, ports.i2p)):
        np.testing.assert_allclose(np.abs(amp) ** 2, intensity, rtol=1e-10, atol=1e-12)
    total = np.abs(u1n) ** 2 + np.abs(u1p) ** 2
    np.testing.assert_allclose(total, draws.i1h + draws.i1v, rtol=1e-12)


def test_port_intensity_examples():
    d = apply_pair_constraints(2.0, 0.0, 0.0, 0.0)
    ports = port_intensities(d, AnalyzerSettings(np.pi / 6, 0.0))
    assert ports.i1n == pytest.approx(1.5, abs=1e-12)
    assert ports.i1p == pytest.approx(0.5, abs=1e-12)

    d = apply_pair_constraints(1.0, 1.0, 0.8, 0.8)
    ports = port_intensities(d, AnalyzerSettings(np.pi / 8, 0.0))
    assert ports.i1n == pytest.approx(1.0 + np.sin(np.pi / 4), abs=1e-12)


def test_equal_angles_swap_sides():
    draws = _random_draws(200, seed=11)
    for theta in (0.0, 0.3, np.pi / 4, 2.0):
        ports = port_intensities(draws, AnalyzerSettings(theta, theta))
        np.testing.assert_allclose(ports.i2n, ports.i1p, rtol=1e-12, atol=1e-14)
        np.testing.assert_allclose(ports.i2p, ports.i1n, rtol=1e-12, atol=1e-14)


def test_conservation():
    draws = _random_draws(10_000, seed=21)
    for t1, t2 in ((0.0, 0.0), (0.3, 1.2), (np.pi / 5, -0.7), (2.9, 4.4)):
        ports = port_intensities(draws, AnalyzerSettings(t1, t2))
        total = draws.i1h + draws.i1v
        np.testing.assert_allclose(ports.i1n + ports.i1p, total, rtol=1e-12)
        np.testing.assert_allclose(ports.i2n + ports.i2p, total, rtol=1e-12)


def test_half_turn_shift_is_exact():
    draws = _random_draws(500, seed=31)
    rng = np.random.default_rng(8)
    for theta1 in rng.uniform(-10, 10, size=20):
        base = port_intensities(draws, AnalyzerSettings(theta1, 0.4))
        shifted = port_intensities(draws, AnalyzerSettings(theta1 + np.pi, 0.4))
        assert np.array_equal(base.i1n, shifted.i1n)
        assert np.array_equal(base.i1p, shifted.i1p)


def test_quarter_turn_swaps_side2_ports_exactly():
    draws = _random_draws(500, seed=41)
    rng = np.random.default_rng(9)
    for theta2 in rng.uniform(-10, 10, size=20):
        base = port_intensities(draws, AnalyzerSettings(0.2, theta2))
        shifted = port_intensities(draws, AnalyzerSettings(0.2, theta2 + np.pi / 2))
        assert np.array_equal(shifted.i2p, base.i2n)
        assert np.array_equal(shifted.i2n, base.i2p)


def test_nonnegativity_large_sample():
    draws = _random_draws(1_000_000, seed=51)
    rng = np.random.default_rng(10)
    for t1, t2 in zip(rng.uniform(0, np.pi, 5), rng.uniform(0, np.pi, 5)):
        ports = port_intensities(draws, AnalyzerSettings(t1, t2))
        for x in (ports.i1n, ports.i1p, ports.i2n, ports.i2p):
            assert np.all(x >= 0.0)


@settings(max_examples=50)
@given(
    i1h=st.floats(0, 100),
    i1v=st.floats(0, 100),
    ph=st.floats(0, 6.28),
    pv=st.floats(0, 6.28),
    t1=st.floats(-10, 10),
    t2=st.floats(-10, 10),
)
def test_conservation_property(i1h, i1v, ph, pv, t1, t2):
    d = apply_pair_constraints(i1h, i1v, ph, pv)
    ports = port_intensities(d, AnalyzerSettings(t1, t2))
    total = i1h + i1v
    assert ports.i1n + ports.i1p == pytest.approx(total, rel=1e-12, abs=1e-12)
    assert ports.i2n + ports.i2p == pytest.approx(total, rel=1e-12, abs=1e-12)


def test_sequential_polarizers_order_matters():
    assert sequential_polarizers(0.0, 1.0, [np.pi / 4, np.pi / 2]) == 0.25
    assert sequential_polarizers(0.0, 1.0, [np.pi / 2, np.pi / 4]) == 0.0
    assert sequential_polarizers(0.0, 1.0, []) == 1.0


def test_sequential_polarizers_rejects_negative_intensity():
    with pytest.raises(ValueError):
        sequential_polarizers(0.0, -1.0, [0.1])


def test_settings_validation():
    with pytest.raises(ValueError):
        AnalyzerSettings(float("nan"), 0.0)

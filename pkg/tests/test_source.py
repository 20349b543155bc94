import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats

from bellsim.source import SourceParams, sample_draw, sample_draw_block, apply_pair_constraints

TWO_PI = 2.0 * np.pi


def test_sample_draw_moments():
    rng = np.random.default_rng(1234)
    draw = sample_draw_block(SourceParams(1.0), rng, 1_000_000)
    n = draw.i1h.size
    se_mean = 1.0 / np.sqrt(n)  # exponential: std = mean
    assert abs(draw.i1h.mean() - 1.0) < 3 * se_mean
    # Var(exp) = mean^2; SE of sample variance ~ sqrt(8/n) for exp(1)
    assert abs(draw.i1h.var() - 1.0) < 0.01


def test_pairing_constraints_exact():
    rng = np.random.default_rng(5)
    draw = sample_draw_block(SourceParams(2.0), rng, 1000)
    assert np.array_equal(draw.i2v, draw.i1h)
    assert np.array_equal(draw.i2h, draw.i1v)
    expected = (draw.phase1h - draw.phase1v + np.pi) % TWO_PI
    assert np.allclose(draw.phase_diff2, expected, atol=1e-12, rtol=0)


def test_scalar_draw():
    rng = np.random.default_rng(7)
    d = sample_draw(SourceParams(1.5), rng)
    assert d.i1h >= 0 and d.i1v >= 0
    assert 0 <= d.phase1h < TWO_PI
    assert d.i2v == d.i1h and d.i2h == d.i1v


def test_exponential_goodness_of_fit():
    rng = np.random.default_rng(99)
    draw = sample_draw_block(SourceParams(1.0), rng, 100_000)
    # chi-square against equiprobable exponential bins
    nbins = 50
    edges = np.append(-np.log1p(-np.arange(nbins) / nbins), np.inf)
    observed, _ = np.histogram(draw.i1h, bins=edges)
    result = stats.chisquare(observed)
    assert result.pvalue > 0.01


def test_independence_correlations():
    rng = np.random.default_rng(2024)
    draw = sample_draw_block(SourceParams(1.0), rng, 1_000_000)
    r_ii = np.corrcoef(draw.i1h, draw.i1v)[0, 1]
    r_pi = np.corrcoef(draw.phase1h, draw.i1h)[0, 1]
    assert abs(r_ii) < 0.005
    assert abs(r_pi) < 0.005


def test_apply_pair_constraints_examples():
    d = apply_pair_constraints(1.0, 2.0, 0.0, 0.0)
    assert (d.i2v, d.i2h) == (1.0, 2.0)
    assert d.phase_diff2 == pytest.approx(np.pi, abs=1e-12)

    d = apply_pair_constraints(0.0, 0.0, 0.3, 0.7)
    assert d.i2v == 0.0 and d.i2h == 0.0
    assert d.phase_diff2 == pytest.approx((-0.4 + np.pi) % TWO_PI, abs=1e-12)

    d = apply_pair_constraints(5.0, 5.0, np.pi, np.pi)
    assert d.phase_diff2 == pytest.approx(np.pi, abs=1e-12)


def test_apply_pair_constraints_rejects_negative():
    with pytest.raises(ValueError):
        apply_pair_constraints(-0.1, 1.0, 0.0, 0.0)


def test_apply_pair_constraints_idempotent():
    d1 = apply_pair_constraints(0.4, 1.7, 2.2, 5.9)
    d2 = apply_pair_constraints(d1.i1h, d1.i1v, d1.phase1h, d1.phase1v)
    assert d1 == d2


@given(
    i1h=st.floats(0, 1e6, allow_nan=False),
    i1v=st.floats(0, 1e6, allow_nan=False),
    ph=st.floats(-100, 100, allow_nan=False),
    pv=st.floats(-100, 100, allow_nan=False),
)
def test_constraint_properties(i1h, i1v, ph, pv):
    d = apply_pair_constraints(i1h, i1v, ph, pv)
    assert d.i2v == i1h and d.i2h == i1v
    assert 0 <= d.phase_diff2 < TWO_PI
    # modular identity to 1e-12
    diff = (d.phase_diff2 - (ph - pv + np.pi)) % TWO_PI
    assert min(diff, TWO_PI - diff) < 1e-9 * max(1.0, abs(ph) + abs(pv))


def test_params_validation():
    with pytest.raises(ValueError):
        SourceParams(0.0)
    with pytest.raises(ValueError):
        SourceParams(-1.0)

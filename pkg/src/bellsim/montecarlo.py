"""Trial engine: source -> analyzers -> (counts) -> product moments.

Trials are processed in fixed-size blocks. Each block owns a Philox
stream keyed by (seed, block index) and its partial sums are reduced in
block order, so results are bit-identical no matter how many threads run
the blocks.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from bellsim.oracle import (
    PortPairKind,
    CROSS_KINDS,
    normalized_correlation,
)
from bellsim.polarizer import AnalyzerSettings, port_intensities
from bellsim.photon_stats import poisson_inverse_cdf, binomial_inverse_cdf
from bellsim.rng import block_generator, derive_seed
from bellsim.source import apply_pair_constraints

_BLOCK = 1 << 16
TWO_PI = 2.0 * np.pi

COUNT_MODES = ("intensity_only", "independent_poisson", "matched_pairs")

_KIND_ORDER = (
    PortPairKind.CROSS_NP,
    PortPairKind.CROSS_PN,
    PortPairKind.CROSS_NN,
    PortPairKind.CROSS_PP,
    PortPairKind.SAME_SIDE_1,
    PortPairKind.SAME_SIDE_2,
)


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class SimConfig:
    """Full description of one experiment run."""

    trials: int
    mean_intensity: float = 1.0
    theta1: float = 0.0
    theta2: float = 0.0
    seed: int = 0x5EEDB311
    count_mode: str = "independent_poisson"
    postselect_single_pairs: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not (self.mean_intensity > 0):
            raise ConfigError("mean_intensity must be positive")
        if self.count_mode not in COUNT_MODES:
            raise ConfigError(f"unknown count_mode {self.count_mode!r}")
        if not (0 <= self.seed < 1 << 64):
            raise ConfigError("seed must fit in 64 bits")


@dataclass(frozen=True)
class EstimateSet:
    """Product-moment estimates for one run, raw and offset-corrected."""

    raw_mean: dict
    std_error: dict
    offset_estimate: float
    corrected_mean: dict
    normalized_correlation_estimate: float
    normalized_correlation_std_error: float
    trials_used: int


@dataclass(frozen=True)
class PostselectedTally:
    """Joint port outcomes on windows with exactly one count per side."""

    n1n_n2n: int
    n1n_n2p: int
    n1p_n2n: int
    n1p_n2p: int
    trials_selected: int
    trials_total: int


@dataclass(frozen=True)
class SweepRow:
    delta: float
    estimate: float
    std_error: float
    oracle: float


def _block_draw(config: SimConfig, block: int, m: int, rows: int):
    """Uniforms and the source draw for one block; fixed stream layout."""
    rng = block_generator(config.seed, block)
    u = rng.random((rows, _BLOCK))[:, :m]
    mean = config.mean_intensity
    draw = apply_pair_constraints(
        -mean * np.log1p(-u[0]),
        -mean * np.log1p(-u[1]),
        TWO_PI * u[2],
        TWO_PI * u[3],
    )
    return u, draw


def _stats_vector(products):
    """Partial sums for the six products plus the correlation numerator
    and corrected denominator (with their second moments)."""
    p = np.stack(products)
    sums = p.sum(axis=1)
    sq = (p * p).sum(axis=1)
    num = p[2] + p[3] - p[0] - p[1]
    den = (p[0] + p[1] + p[2] + p[3]) - 2.0 * (p[4] + p[5])
    extra = np.array(
        [num.sum(), den.sum(), (num * num).sum(), (den * den).sum(), (num * den).sum()]
    )
    return np.concatenate([sums, sq, extra])


def _intensity_block(config: SimConfig, block: int, m: int):
    _, draw = _block_draw(config, block, m, rows=4)
    ports = port_intensities(draw, AnalyzerSettings(config.theta1, config.theta2))
    return _stats_vector(
        (
            ports.i1n * ports.i2p,
            ports.i1p * ports.i2n,
            ports.i1n * ports.i2n,
            ports.i1p * ports.i2p,
            ports.i1n * ports.i1p,
            ports.i2n * ports.i2p,
        )
    )


def _sample_counts(config: SimConfig, block: int, m: int):
    u, draw = _block_draw(config, block, m, rows=8)
    ports = port_intensities(draw, AnalyzerSettings(config.theta1, config.theta2))
    total = draw.i1h + draw.i1v
    safe = np.where(total > 0, total, 1.0)
    p1n = np.clip(np.where(total > 0, ports.i1n / safe, 0.0), 0.0, 1.0)
    p2n = np.clip(np.where(total > 0, ports.i2n / safe, 0.0), 0.0, 1.0)

    n1 = poisson_inverse_cdf(u[4], total)
    n1n = binomial_inverse_cdf(u[5], n1, p1n)
    if config.count_mode == "matched_pairs":
        n2 = n1
    else:
        n2 = poisson_inverse_cdf(u[6], total)
    n2n = binomial_inverse_cdf(u[7], n2, p2n)
    return n1n, n1 - n1n, n2n, n2 - n2n


def _count_block(config: SimConfig, block: int, m: int):
    n1n, n1p, n2n, n2p = (x.astype(float) for x in _sample_counts(config, block, m))
    return _stats_vector(
        (n1n * n2p, n1p * n2n, n1n * n2n, n1p * n2p, n1n * n1p, n2n * n2p)
    )


def _postselect_block(config: SimConfig, block: int, m: int):
    n1n, n1p, n2n, n2p = _sample_counts(config, block, m)
    single = (n1n + n1p == 1) & (n2n + n2p == 1)
    return np.array(
        [
            np.sum(single & (n1n == 1) & (n2n == 1)),
            np.sum(single & (n1n == 1) & (n2p == 1)),
            np.sum(single & (n1p == 1) & (n2n == 1)),
            np.sum(single & (n1p == 1) & (n2p == 1)),
            np.sum(single),
        ],
        dtype=np.int64,
    )


def _reduce_blocks(config: SimConfig, block_fn, threads: int):
    nblocks = -(-config.trials // _BLOCK)

    def run(b):
        m = _BLOCK if b < nblocks - 1 else config.trials - (nblocks - 1) * _BLOCK
        return block_fn(config, b, m)

    if threads <= 1:
        parts = [run(b) for b in range(nblocks)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(run, range(nblocks)))
    return np.sum(np.stack(parts), axis=0)


def _build_estimates(total, n: int) -> EstimateSet:
    means = total[:6] / n
    if n > 1:
        var = np.maximum(total[6:12] - n * means**2, 0.0) / (n - 1)
    else:
        var = np.zeros(6)
    se = np.sqrt(var / n)
    raw_mean = dict(zip(_KIND_ORDER, means))
    std_error = dict(zip(_KIND_ORDER, se))
    offset = (means[4] + means[5]) / 2.0
    corrected = {k: raw_mean[k] - offset for k in CROSS_KINDS}

    mu_num = total[12] / n
    mu_den = total[13] / n
    var_num = max(total[14] / n - mu_num**2, 0.0)
    var_den = max(total[15] / n - mu_den**2, 0.0)
    cov = total[16] / n - mu_num * mu_den
    corr = mu_num / mu_den if mu_den != 0 else float("nan")
    if mu_den != 0:
        var_corr = (
            var_num / mu_den**2
            + mu_num**2 * var_den / mu_den**4
            - 2.0 * mu_num * cov / mu_den**3
        ) / n
        se_corr = float(np.sqrt(max(var_corr, 0.0)))
    else:
        se_corr = float("nan")

    return EstimateSet(
        raw_mean={k: float(v) for k, v in raw_mean.items()},
        std_error={k: float(v) for k, v in std_error.items()},
        offset_estimate=float(offset),
        corrected_mean={k: float(v) for k, v in corrected.items()},
        normalized_correlation_estimate=float(corr),
        normalized_correlation_std_error=se_corr,
        trials_used=n,
    )


def run_intensity_experiment(config: SimConfig, threads: int = 1) -> EstimateSet:
    """Accumulate wave-intensity products over N windows."""
    if config.count_mode != "intensity_only":
        raise ConfigError("run_intensity_experiment requires count_mode='intensity_only'")
    total = _reduce_blocks(config, _intensity_block, threads)
    return _build_estimates(total, config.trials)


def run_count_experiment(config: SimConfig, threads: int = 1) -> EstimateSet:
    """Accumulate photon-count products over N windows.

    Side-1 totals are Poisson with the window's total intensity as mean;
    side-2 totals are either an independent Poisson draw of the same mean
    or forced equal to side 1, per count_mode.
    """
    if config.count_mode not in ("independent_poisson", "matched_pairs"):
        raise ConfigError("run_count_experiment requires a photon count_mode")
    total = _reduce_blocks(config, _count_block, threads)
    return _build_estimates(total, config.trials)


def run_postselected_experiment(config: SimConfig, threads: int = 1) -> PostselectedTally:
    """Tally joint outcomes on windows with exactly one count per side."""
    if not config.postselect_single_pairs:
        raise ConfigError("postselect_single_pairs must be set")
    if config.count_mode == "intensity_only":
        raise ConfigError("post-selection requires a photon count_mode")
    t = _reduce_blocks(config, _postselect_block, threads)
    return PostselectedTally(
        n1n_n2n=int(t[0]),
        n1n_n2p=int(t[1]),
        n1p_n2n=int(t[2]),
        n1p_n2p=int(t[3]),
        trials_selected=int(t[4]),
        trials_total=config.trials,
    )


def _run_for_mode(config: SimConfig, threads: int) -> EstimateSet:
    if config.count_mode == "intensity_only":
        return run_intensity_experiment(config, threads)
    return run_count_experiment(config, threads)


def sweep_angles(config: SimConfig, deltas, threads: int = 1):
    """One run per angle difference, with per-delta derived seeds."""
    deltas = list(deltas)
    if not deltas:
        raise ConfigError("deltas must be nonempty")
    rows = []
    for i, delta in enumerate(deltas):
        cfg = replace(config, theta1=float(delta), theta2=0.0, seed=derive_seed(config.seed, i))
        est = _run_for_mode(cfg, threads)
        rows.append(
            SweepRow(
                delta=float(delta),
                estimate=est.normalized_correlation_estimate,
                std_error=est.normalized_correlation_std_error,
                oracle=normalized_correlation(float(delta)),
            )
        )
    return rows


def chsh_experiment(config: SimConfig, a, a_prime, b, b_prime, threads: int = 1):
    """CHSH S from four independent angle-pair runs; returns (S, std error)."""
    pairs = ((a, b), (a, b_prime), (a_prime, b), (a_prime, b_prime))
    corr = []
    errs = []
    for i, (t1, t2) in enumerate(pairs):
        cfg = replace(
            config, theta1=float(t1), theta2=float(t2), seed=derive_seed(config.seed, i)
        )
        est = _run_for_mode(cfg, threads)
        corr.append(est.normalized_correlation_estimate)
        errs.append(est.normalized_correlation_std_error)
    s = abs(corr[0] - corr[1]) + abs(corr[2] + corr[3])
    se = float(np.sqrt(sum(e**2 for e in errs)))
    return s, se

"""Photon-count machinery.

Poisson counting conditional on wave intensity, binomial splitting at the
analyzer (photons leave one port or the other, never both), the
p(1-p)(n^2 - n) split-product identity, and the Bose-Einstein marginal of
the exponential-Poisson mixture.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

# Above this mean the sequential search is replaced by the library
# inverse CDF; both are inversions of the same uniform, so the choice
# is per-element on the mean and stays deterministic.
_SEARCH_MEAN_LIMIT = 10.0
_LOG_SPACE_N = 20


@dataclass(frozen=True)
class CountPair:
    """Counts at the two output ports of one analyzer for one window."""

    n_transmit: int
    n_reflect: int

    def __post_init__(self):
        if self.n_transmit < 0 or self.n_reflect < 0:
            raise ValueError("counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.n_transmit + self.n_reflect


@dataclass(frozen=True)
class TrialCounts:
    """Both analyzers' counts for one observation window."""

    side1: CountPair
    side2: CountPair
    n_total_1: int
    n_total_2: int

    def __post_init__(self):
        if self.side1.total != self.n_total_1 or self.side2.total != self.n_total_2:
            raise ValueError("port counts must sum to the side total")


def poisson_pmf(n: int, mean: float) -> float:
    """P(n | mean) = exp(-mean) mean^n / n!."""
    if mean < 0:
        raise ValueError("mean must be nonnegative")
    if n < 0:
        return 0.0
    if mean == 0.0:
        return 1.0 if n == 0 else 0.0
    if n <= _LOG_SPACE_N:
        return math.exp(-mean) * mean**n / math.factorial(n)
    return math.exp(n * math.log(mean) - mean - math.lgamma(n + 1))


def poisson_inverse_cdf(u, mean):
    """Smallest n with CDF(n) > u, vectorized over equal-shape arrays.

    Sequential search from n = 0 for small means; library inverse CDF
    above _SEARCH_MEAN_LIMIT where the search would crawl.
    """
    u = np.asarray(u, dtype=float)
    mean = np.broadcast_to(np.asarray(mean, dtype=float), u.shape)
    if np.any(mean < 0) or not np.all(np.isfinite(mean)):
        raise ValueError("mean must be nonnegative and finite")
    out = np.zeros(u.shape, dtype=np.int64)

    small = mean < _SEARCH_MEAN_LIMIT
    if np.any(small):
        m = mean[small]
        uu = u[small]
        p = np.exp(-m)
        cdf = p.copy()
        n = np.zeros(m.shape, dtype=np.int64)
        k = 0
        active = uu >= cdf
        while np.any(active):
            k += 1
            if k > 400:  # CDF mass beyond here is < 1e-300 for mean < 10
                break
            p = p * (m / k)
            cdf = cdf + p
            n[active] += 1
            active = uu >= cdf
        out[small] = n
    large = ~small
    if np.any(large):
        out[large] = stats.poisson.ppf(u[large], mean[large]).astype(np.int64)
    return out


def sample_poisson(mean: float, rng: np.random.Generator) -> int:
    """Poisson variate via inverse CDF on one uniform."""
    if mean < 0:
        raise ValueError("mean must be nonnegative")
    return int(poisson_inverse_cdf(np.array([rng.random()]), np.array([mean]))[0])


def binomial_inverse_cdf(u, n_total, p_transmit):
    """Smallest k with Binomial CDF(k) > u, vectorized."""
    u = np.asarray(u, dtype=float)
    n_total = np.broadcast_to(np.asarray(n_total, dtype=np.int64), u.shape)
    p = np.broadcast_to(np.asarray(p_transmit, dtype=float), u.shape)
    if np.any(p < 0) or np.any(p > 1):
        raise ValueError("p_transmit must be in [0, 1]")
    out = np.zeros(u.shape, dtype=np.int64)
    certain = p >= 1.0
    out[certain] = n_total[certain]
    todo = (~certain) & (p > 0.0) & (n_total > 0)
    if np.any(todo):
        nn = n_total[todo].astype(float)
        pp = p[todo]
        uu = u[todo]
        ratio = pp / (1.0 - pp)
        pmf = (1.0 - pp) ** nn
        cdf = pmf.copy()
        k = np.zeros(nn.shape, dtype=np.int64)
        step = 0
        active = (uu >= cdf) & (k < n_total[todo])
        while np.any(active):
            step += 1
            pmf = pmf * ratio * (nn - (step - 1)) / step
            cdf = cdf + pmf
            k[active] += 1
            active = (uu >= cdf) & (k < n_total[todo])
        out[todo] = k
    return out


def binomial_split(n_total: int, p_transmit: float, rng: np.random.Generator) -> CountPair:
    """Split n_total photons between the two ports; pair sums to n_total."""
    if not 0.0 <= p_transmit <= 1.0:
        raise ValueError("p_transmit must be in [0, 1]")
    if n_total < 0:
        raise ValueError("n_total must be nonnegative")
    k = int(binomial_inverse_cdf(np.array([rng.random()]), np.array([n_total]), np.array([p_transmit]))[0])
    return CountPair(n_transmit=k, n_reflect=n_total - k)


def split_product_mean_conditional(n_total: int, p_transmit: float) -> float:
    """E[n_t * n_r | n_total] = p(1-p)(n_total^2 - n_total).

    Zero for n_total <= 1: a single photon is never split.
    """
    if not 0.0 <= p_transmit <= 1.0:
        raise ValueError("p_transmit must be in [0, 1]")
    return p_transmit * (1.0 - p_transmit) * (n_total**2 - n_total)


def split_product_mean_poisson(mean_total: float, p_transmit: float) -> float:
    """Poisson average of the conditional split product: p(1-p)*mean^2."""
    if mean_total < 0:
        raise ValueError("mean_total must be nonnegative")
    if not 0.0 <= p_transmit <= 1.0:
        raise ValueError("p_transmit must be in [0, 1]")
    return p_transmit * (1.0 - p_transmit) * mean_total**2


def bose_einstein_pmf(n: int, mean_intensity: float) -> float:
    """Geometric marginal of the exponential-Poisson mixture."""
    if not mean_intensity > 0:
        raise ValueError("mean_intensity must be positive")
    if n < 0:
        return 0.0
    q = mean_intensity / (mean_intensity + 1.0)
    return q**n / (mean_intensity + 1.0)


def sample_count_marginal(mean_intensity: float, rng: np.random.Generator) -> int:
    """Sample I ~ Exp(mean), then n ~ Poisson(I); marginal is Bose-Einstein."""
    if not mean_intensity > 0:
        raise ValueError("mean_intensity must be positive")
    intensity = -mean_intensity * math.log1p(-rng.random())
    return sample_poisson(intensity, rng)


def sample_count_marginal_block(mean_intensity: float, rng: np.random.Generator, n: int):
    """Vectorized counterpart of sample_count_marginal; returns int64 array."""
    if not mean_intensity > 0:
        raise ValueError("mean_intensity must be positive")
    u = rng.random((2, n))
    intensity = -mean_intensity * np.log1p(-u[0])
    return poisson_inverse_cdf(u[1], intensity)

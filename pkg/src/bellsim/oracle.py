"""Closed-form ensemble averages used as ground truth for the simulator.

All results are for twin chaotic beams with common mean intensity I0 and
analyzer angle difference delta = theta1 - theta2 (the correlation is even
in delta, so the sign convention is unobservable).
"""

import math
from dataclasses import dataclass
from enum import Enum


class PortPairKind(Enum):
    """Which pair of analyzer outputs a product moment refers to."""

    CROSS_NP = "cross_np"
    CROSS_PN = "cross_pn"
    CROSS_NN = "cross_nn"
    CROSS_PP = "cross_pp"
    SAME_SIDE_1 = "same_side_1"
    SAME_SIDE_2 = "same_side_2"


CROSS_KINDS = (
    PortPairKind.CROSS_NP,
    PortPairKind.CROSS_PN,
    PortPairKind.CROSS_NN,
    PortPairKind.CROSS_PP,
)
SAME_SIDE_KINDS = (PortPairKind.SAME_SIDE_1, PortPairKind.SAME_SIDE_2)


@dataclass(frozen=True)
class OracleParams:
    mean_intensity: float
    delta_theta: float

    def __post_init__(self):
        if not (self.mean_intensity > 0):
            raise ValueError("mean_intensity must be positive")


def raw_product_mean(kind: PortPairKind, params: OracleParams) -> float:
    """Ensemble average of one intensity product, multi-pair offset included."""
    i0_sq = params.mean_intensity**2
    if kind in (PortPairKind.CROSS_NP, PortPairKind.CROSS_PN):
        return i0_sq * (1.0 + math.cos(params.delta_theta) ** 2)
    if kind in (PortPairKind.CROSS_NN, PortPairKind.CROSS_PP):
        return i0_sq * (1.0 + math.sin(params.delta_theta) ** 2)
    return i0_sq


def corrected_product_mean(kind: PortPairKind, params: OracleParams) -> float:
    """Raw product mean with the constant I0^2 offset subtracted."""
    return raw_product_mean(kind, params) - params.mean_intensity**2


def bell_correlation_raw(params: OracleParams) -> float:
    """<nn> + <pp> - <pn> - <np> = -2 I0^2 cos(2 delta)."""
    return -2.0 * params.mean_intensity**2 * math.cos(2.0 * params.delta_theta)


def normalization_sum(params: OracleParams) -> float:
    """Sum of the four offset-corrected cross products: 2 I0^2, delta-free."""
    return 2.0 * params.mean_intensity**2


def normalized_correlation(delta_theta: float) -> float:
    """Bell correlation normalized to single-pair statistics: -cos(2 delta)."""
    return -math.cos(2.0 * delta_theta)


def chsh_value(a, a_prime, b, b_prime, correlation=normalized_correlation) -> float:
    """|C(a-b) - C(a-b')| + |C(a'-b) + C(a'-b')|."""
    return abs(correlation(a - b) - correlation(a - b_prime)) + abs(
        correlation(a_prime - b) + correlation(a_prime - b_prime)
    )

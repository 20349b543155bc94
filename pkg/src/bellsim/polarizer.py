"""Polarization-beam-splitter projections and the sequential-polarizer demo.

Analyzer angles are reduced to half-turn fractions on a fine binary grid
before any trigonometry. The grid makes the period-pi symmetries exact in
floating point: theta and theta + pi reduce to the identical float, and a
quarter-turn shift swaps the two output ports bit-for-bit.
"""

from dataclasses import dataclass

import numpy as np

# 2^-46 half-turns; coarse enough to absorb ~1 ulp reduction error,
# fine enough that the angle snap perturbs intensities by < 1e-13.
_GRID = 2.0 ** 46

_CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class AnalyzerSettings:
    """Transmit-axis angles of the two analyzers, interpreted modulo pi."""

    theta1: float
    theta2: float

    def __post_init__(self):
        if not (np.isfinite(self.theta1) and np.isfinite(self.theta2)):
            raise ValueError("analyzer angles must be finite")


@dataclass(frozen=True)
class PortIntensities:
    """The four analyzer output intensities for one draw (or draw block)."""

    i1n: float
    i1p: float
    i2n: float
    i2p: float


def half_turns(theta):
    """Angle as a snapped half-turn fraction in [0, 1)."""
    t = np.asarray(theta, dtype=float) / np.pi
    t = t % 1.0
    t = np.round(t * _GRID) / _GRID
    return t % 1.0


def _cospi(u):
    """cos(pi*u) for grid fractions, with exact quadrant folding."""
    u = np.abs(np.asarray(u, dtype=float)) % 2.0
    u = np.where(u > 1.0, 2.0 - u, u)
    sign = np.where(u > 0.5, -1.0, 1.0)
    v = np.where(u > 0.5, 1.0 - u, u)
    out = sign * np.cos(np.pi * v)
    return np.where(v == 0.5, 0.0, out)[()]


def _sinpi(u):
    """sin(pi*u) = cos(pi*(u - 1/2)); subtraction is exact on the grid."""
    return _cospi(np.asarray(u, dtype=float) - 0.5)


def _clamp(x, scale):
    x = np.asarray(x, dtype=float)
    if np.any(x < -_CLAMP_TOL * (1.0 + scale)):
        raise ValueError("port intensity below rounding tolerance; invalid draw")
    return np.where(x < 0.0, 0.0, x)[()]


def port_intensities(draw, settings: AnalyzerSettings) -> PortIntensities:
    """Transmitted/reflected intensities at both analyzers.

    Accepts scalar or array-valued draws. Side 2 uses the paired draw
    fields directly, so the source constraints (swapped intensities,
    pi-shifted phase difference) are already folded in.
    """
    t1 = half_turns(settings.theta1)
    t2 = half_turns(settings.theta2)
    c1, s1 = _cospi(2.0 * t1), _sinpi(2.0 * t1)
    c2, s2 = _cospi(2.0 * t2), _sinpi(2.0 * t2)
    ch1, sh1 = (1.0 + c1) / 2.0, (1.0 - c1) / 2.0
    ch2, sh2 = (1.0 + c2) / 2.0, (1.0 - c2) / 2.0

    cross1 = np.sqrt(draw.i1h * draw.i1v) * np.cos(draw.phase1h - draw.phase1v)
    i1n = (draw.i1h * ch1 + draw.i1v * sh1) + cross1 * s1
    i1p = (draw.i1h * sh1 + draw.i1v * ch1) - cross1 * s1

    cross2 = np.sqrt(draw.i2h * draw.i2v) * np.cos(draw.phase_diff2)
    i2n = (draw.i2h * ch2 + draw.i2v * sh2) + cross2 * s2
    i2p = (draw.i2h * sh2 + draw.i2v * ch2) - cross2 * s2

    scale = np.max(np.asarray(draw.i1h + draw.i1v))
    return PortIntensities(
        _clamp(i1n, scale), _clamp(i1p, scale), _clamp(i2n, scale), _clamp(i2p, scale)
    )


def amplitudes_at_ports(draw, settings: AnalyzerSettings):
    """Complex output amplitudes (U1n, U1p, U2n, U2p).

    Amplitudes are reconstructed as sqrt(intensity)*exp(i*phase); on side 2
    the V phase is set to 0 and the H phase to the stored difference, since
    a global phase never reaches any intensity.
    """
    t1 = half_turns(settings.theta1)
    t2 = half_turns(settings.theta2)
    c1, s1 = _cospi(t1), _sinpi(t1)
    c2, s2 = _cospi(t2), _sinpi(t2)

    u1h = np.sqrt(draw.i1h) * np.exp(1j * np.asarray(draw.phase1h))
    u1v = np.sqrt(draw.i1v) * np.exp(1j * np.asarray(draw.phase1v))
    u2h = np.sqrt(draw.i2h) * np.exp(1j * np.asarray(draw.phase_diff2))
    u2v = np.sqrt(draw.i2v) * (1.0 + 0.0j)

    u1n = u1h * c1 + u1v * s1
    u1p = -u1h * s1 + u1v * c1
    u2n = u2h * c2 + u2v * s2
    u2p = -u2h * s2 + u2v * c2
    return u1n, u1p, u2n, u2p


def sequential_polarizers(input_polarization_angle, input_intensity, analyzer_angles):
    """Intensity transmitted through ideal linear polarizers in order.

    Malus's law applied sequentially; the output polarization after each
    stage is that polarizer's axis, so the result is order-sensitive.
    """
    if input_intensity < 0:
        raise ValueError("input_intensity must be nonnegative")
    intensity = float(input_intensity)
    pol = float(input_polarization_angle)
    for angle in analyzer_angles:
        t = half_turns(angle - pol)
        cos_sq = (1.0 + _cospi(2.0 * t)) / 2.0
        intensity *= cos_sq
        pol = float(angle)
    return intensity

"""Source realizations for twin chaotic beams.

Each observation window carries two independent exponentially distributed
intensities (H and V on side 1) with uniform phases independent of them.
Side 2 is not sampled separately: its intensities are the side-1 pair
swapped, and its H-V phase difference is the side-1 difference plus pi.
"""

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class SourceParams:
    """Mean counts per observation window for each beam polarization."""

    mean_intensity: float

    def __post_init__(self):
        if not (self.mean_intensity > 0):
            raise ValueError(f"mean_intensity must be > 0, got {self.mean_intensity}")


@dataclass(frozen=True)
class SourceDraw:
    """One realization of the source hidden variables.

    Side-2 fields are deterministic functions of side 1: intensities are
    swapped across polarizations and the phase difference is offset by pi.
    Fields may be scalars or equal-shape numpy arrays.
    """

    i1h: float
    i1v: float
    phase1h: float
    phase1v: float
    i2h: float
    i2v: float
    phase_diff2: float


def apply_pair_constraints(i1h, i1v, phase1h, phase1v) -> SourceDraw:
    """Complete the side-2 fields from side 1 (deterministic, idempotent)."""
    i1h = np.asarray(i1h, dtype=float)
    i1v = np.asarray(i1v, dtype=float)
    if np.any(i1h < 0) or np.any(i1v < 0):
        raise ValueError("intensities must be nonnegative")
    phase1h = np.asarray(phase1h, dtype=float)
    phase1v = np.asarray(phase1v, dtype=float)
    phase_diff2 = (phase1h - phase1v + np.pi) % TWO_PI
    return SourceDraw(
        i1h=i1h[()],
        i1v=i1v[()],
        phase1h=phase1h[()],
        phase1v=phase1v[()],
        i2h=i1v[()],
        i2v=i1h[()],
        phase_diff2=phase_diff2[()],
    )


def sample_draw_block(params: SourceParams, rng: np.random.Generator, n: int) -> SourceDraw:
    """Vectorized draw of `n` windows; fields are arrays of shape (n,).

    Exponentials come from inverse-CDF on a single uniform each, so the
    stream layout is fixed: (i1h, i1v, phase1h, phase1v) per block.
    """
    u = rng.random((4, n))
    mean = params.mean_intensity
    i1h = -mean * np.log1p(-u[0])
    i1v = -mean * np.log1p(-u[1])
    phase1h = TWO_PI * u[2]
    phase1v = TWO_PI * u[3]
    return apply_pair_constraints(i1h, i1v, phase1h, phase1v)


def sample_draw(params: SourceParams, rng: np.random.Generator) -> SourceDraw:
    """One source realization with chaotic (CCG) statistics."""
    block = sample_draw_block(params, rng, 1)
    return SourceDraw(*(np.asarray(getattr(block, f))[0] for f in (
        "i1h", "i1v", "phase1h", "phase1v", "i2h", "i2v", "phase_diff2")))

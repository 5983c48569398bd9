"""Narrowband codebook baseline and its closed-form wideband analysis.

The conventional codebook points L response vectors at the uniform sine-space
directions (2l-1)/L - 1.  Under a wide band these beams squint: the worst
user sits at phi = +-pi/2, where the composite offset accumulates both the
half-spacing misalignment and the full squint B/(2 f_c).  That worst-case
gain has a Dirichlet closed form, which in turn yields the element count
that maximizes it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .array_model import SystemConfig, BeamVector, dirichlet_power, steering_composite
from .codebook import Codebook
from .zones import divide_zones

# argmax location of sin(Nx)^2 / (N sin(x)^2): the root of tan x = 2x in
# (0, pi], and the rounded coefficient 4x/pi used for the candidate formula
X_STAR = 1.166
N_STAR_COEFF = 1.485


@dataclass(frozen=True)
class NarrowbandAnalysis:
    """Worst-case summary of the narrowband codebook in a wideband system."""

    worst_case_gain: float
    worst_aod: float
    nonzero_condition_holds: bool
    optimal_N_candidates: tuple[int, int]


def narrowband_codebook(cfg: SystemConfig) -> Codebook:
    """Response vectors at sine-space centers (2l-1)/L - 1, uniform sine zones."""
    centers = (2.0 * np.arange(1, cfg.L + 1) - 1.0) / cfg.L - 1.0
    beams = tuple(
        BeamVector(steering_composite(cfg.N, c) / np.sqrt(cfg.N)) for c in centers
    )
    partition = divide_zones(replace(cfg, B=0.0))
    return Codebook.assemble(beams, partition, cfg, solver_cfg=None,
                             kind="narrowband")


def narrowband_worst_case_B0(cfg: SystemConfig) -> float:
    """Worst-case gain of the codebook when the band collapses to a point.

    The worst user sits half a beam spacing off a center:
    [sin(N pi/2L) / (sqrt(N) sin(pi/2L))]^2.  Assumes the usual L >= N
    operating regime (the config warns otherwise).
    """
    return float(dirichlet_power(1.0 / cfg.L, cfg.N) / cfg.N)


def _prop1_gain(f_c: float, b: float, n: int, l: int) -> float:
    """Scalar core of the wideband worst-case closed form."""
    if n >= 4.0 * f_c * l / (2.0 * f_c + b * l):
        return 0.0
    u = (2.0 * f_c + b * l) / (2.0 * f_c * l)
    return float(dirichlet_power(u, n) / n)


def prop1_worst_case(cfg: SystemConfig) -> NarrowbandAnalysis:
    """Closed-form wideband worst case of the narrowband codebook.

    Zero when N >= 4 f_c L / (2 f_c + B L): past that element count the
    worst-case composite offset reaches the first pattern null and the edge
    user gets no gain at the band edge.  The worst AoD is reported as +pi/2
    (the -pi/2 mirror is equivalent by symmetry).
    """
    holds = cfg.N < 4.0 * cfg.f_c * cfg.L / (2.0 * cfg.f_c + cfg.B * cfg.L)
    gain = _prop1_gain(cfg.f_c, cfg.B, cfg.N, cfg.L)
    return NarrowbandAnalysis(
        worst_case_gain=gain,
        worst_aod=np.pi / 2,
        nonzero_condition_holds=bool(holds),
        optimal_N_candidates=prop2_optimal_N(cfg.f_c, cfg.B, cfg.L)[0],
    )


def aligned_beam_wideband_gain(cfg: SystemConfig, phi_m: float, phi: float) -> float:
    """Band-minimum gain of the narrowband beam centered at phi_m, seen at phi.

    Valid as the exact minimum while the combined offset
    f_c |sin phi_m - sin phi| + (B/2)|sin phi| stays within the monotone
    main-lobe range 2 f_c / N; beyond that the Dirichlet ratio re-oscillates
    and a frequency sweep, not this formula, is authoritative.
    """
    if abs(phi_m) > np.pi / 2 or abs(phi) > np.pi / 2:
        raise ValueError("angles must lie in [-pi/2, pi/2]")
    u = abs(np.sin(phi_m) - np.sin(phi)) + (cfg.B / (2.0 * cfg.f_c)) * abs(np.sin(phi))
    return float(dirichlet_power(u, cfg.N) / cfg.N)


def prop2_optimal_N(f_c: float, b: float, l: int) -> tuple[tuple[int, int], int]:
    """Element count maximizing the wideband worst case, to within rounding.

    The continuous argmax is N_STAR_COEFF * f_c * L / (2 f_c + B L); the
    discrete optimum is whichever neighbor integer scores higher.
    Returns ((floor, ceil), best).
    """
    if f_c <= 0 or l < 1 or b < 0:
        raise ValueError("need f_c > 0, L >= 1, B >= 0")
    n_real = N_STAR_COEFF * f_c * l / (2.0 * f_c + b * l)
    lo = max(int(np.floor(n_real)), 1)
    hi = max(int(np.ceil(n_real)), 1)
    best = lo if _prop1_gain(f_c, b, lo, l) >= _prop1_gain(f_c, b, hi, l) else hi
    return (lo, hi), best

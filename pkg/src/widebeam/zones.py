"""Equal-width virtual zone partition of the angle range [-pi/2, pi/2].

Each angular zone maps to an interval of the composite variable
u = (1 + f/f_c) * sin(phi).  The common width delta_omega that makes the
last boundary land exactly on pi/2 is found by bisection; the terminal
boundary is monotone increasing in the trial width, which makes the root
simple.  2/delta_omega is an upper bound on any codebook's worst-case gain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .array_model import SystemConfig

CLOSURE_TOL = 1e-12  # |phi_L - pi/2| target for the bisection


@dataclass(frozen=True)
class ZonePartition:
    """Boundary angles phi_0..phi_L, the common width, and per-zone intervals."""

    boundaries: np.ndarray          # shape (L+1,), radians, increasing
    delta_omega: float              # common virtual width, sine-space units
    intervals: np.ndarray           # shape (L, 2), (lower, upper) per zone

    def __post_init__(self):
        b = np.array(self.boundaries, dtype=float)
        iv = np.array(self.intervals, dtype=float)
        if b.ndim != 1 or b.size < 2:
            raise ValueError("boundaries must hold at least two angles")
        if np.any(np.diff(b) <= 0):
            raise ValueError("boundaries must be strictly increasing")
        if iv.shape != (b.size - 1, 2):
            raise ValueError("intervals shape must be (L, 2)")
        b.setflags(write=False)
        iv.setflags(write=False)
        object.__setattr__(self, "boundaries", b)
        object.__setattr__(self, "intervals", iv)

    @property
    def n_zones(self) -> int:
        return self.boundaries.size - 1

    def centers(self) -> np.ndarray:
        """Virtual-interval midpoints; the shift targets for codebook assembly."""
        return self.intervals.mean(axis=1)


def virtual_interval(cfg: SystemConfig, phi_lo: float, phi_hi: float) -> tuple[float, float]:
    """Image of an angular zone under the composite variable, over the band.

    Three cases by the sign of the zone: the lower edge of a non-negative
    zone is reached at the bottom band edge and the upper edge at the top,
    mirrored for non-positive zones, both extremes at the top band edge for
    a zone straddling zero.
    """
    if not phi_lo < phi_hi:
        raise ValueError(f"degenerate zone [{phi_lo}, {phi_hi}]")
    plus = (cfg.f_c + cfg.B / 2) / cfg.f_c
    minus = (cfg.f_c - cfg.B / 2) / cfg.f_c
    s_lo, s_hi = np.sin(phi_lo), np.sin(phi_hi)
    if phi_lo >= 0:
        return minus * s_lo, plus * s_hi
    if phi_hi <= 0:
        return plus * s_lo, minus * s_hi
    return plus * s_lo, plus * s_hi


def next_boundary(cfg: SystemConfig, phi_prev: float, delta_omega: float) -> float:
    """Next zone boundary after phi_prev for a trial width.

    Outside the principal range the function returns a saturated sentinel
    (pi/2 + excess above, -pi/2 + deficit below) instead of raising: both
    sentinels are monotone in delta_omega, which keeps the bisection on a
    single increasing branch with no special cases.
    """
    s = np.sin(phi_prev)
    fc, B = cfg.f_c, cfg.B
    if phi_prev < 0:
        num = delta_omega * fc + (fc + B / 2) * s
        # the zone ends below zero iff its upper virtual edge is still negative
        a = num / (fc - B / 2) if num <= 0 else num / (fc + B / 2)
    else:
        a = (delta_omega * fc + (fc - B / 2) * s) / (fc + B / 2)
    if a > 1.0:
        return np.pi / 2 + (a - 1.0)
    if a < -1.0:
        return -np.pi / 2 + (a + 1.0)
    return float(np.arcsin(a))


def _terminal_boundary(cfg: SystemConfig, delta_omega: float) -> float:
    """phi_L after L recursion steps from -pi/2; sentinels short-circuit."""
    phi = -np.pi / 2
    for _ in range(cfg.L):
        phi = next_boundary(cfg, phi, delta_omega)
        if phi > np.pi / 2 or phi < -np.pi / 2:
            return phi
    return phi


def divide_zones(cfg: SystemConfig) -> ZonePartition:
    """Find the equal-width partition whose last boundary is pi/2.

    B = 0 short-circuits to the exact uniform sine partition.  Otherwise the
    width is bisected inside a bracket built from the extreme per-step sine
    increments, doubling the bracket outward if an unusual configuration
    escapes it.
    """
    L = cfg.L
    if cfg.B == 0:
        delta = 2.0 / L
        boundaries = np.arcsin(-1.0 + 2.0 * np.arange(L + 1) / L)
        boundaries[0], boundaries[-1] = -np.pi / 2, np.pi / 2
        intervals = np.stack([np.sin(boundaries[:-1]), np.sin(boundaries[1:])], axis=1)
        return ZonePartition(boundaries, delta, intervals)

    ratio_lo = (cfg.f_c - cfg.B / 2) / (cfg.f_c + cfg.B / 2)
    lo = (2.0 / L) * ratio_lo
    hi = (2.0 / L) / ratio_lo + cfg.B / cfg.f_c
    target = np.pi / 2
    for _ in range(10):
        if _terminal_boundary(cfg, lo) <= target <= _terminal_boundary(cfg, hi):
            break
        lo *= 0.5
        hi *= 2.0
    else:
        raise RuntimeError("zone bisection bracket failed to straddle pi/2")

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        phi_L = _terminal_boundary(cfg, mid)
        if abs(phi_L - target) <= CLOSURE_TOL:
            lo = hi = mid
            break
        if phi_L < target:
            lo = mid
        else:
            hi = mid
    delta = 0.5 * (lo + hi)

    # rebuild the boundary chain at the converged width; clip guards the
    # last arcsin against the leftover 1e-12 closure error
    boundaries = np.empty(L + 1)
    boundaries[0] = -np.pi / 2
    phi = -np.pi / 2
    fc, B = cfg.f_c, cfg.B
    for l in range(1, L + 1):
        s = np.sin(phi)
        if phi < 0:
            num = delta * fc + (fc + B / 2) * s
            a = num / (fc - B / 2) if num <= 0 else num / (fc + B / 2)
        else:
            a = (delta * fc + (fc - B / 2) * s) / (fc + B / 2)
        phi = float(np.arcsin(np.clip(a, -1.0, 1.0)))
        boundaries[l] = phi
    boundaries[-1] = np.pi / 2

    intervals = np.array(
        [virtual_interval(cfg, boundaries[l], boundaries[l + 1]) for l in range(L)]
    )
    return ZonePartition(boundaries, float(delta), intervals)


def prop3_upper_bound(partition: ZonePartition) -> float:
    """Worst-case gain ceiling 2/delta_omega shared by every codebook."""
    return 2.0 / partition.delta_omega

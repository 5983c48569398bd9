"""Codebook assembly and the worst-case evaluation harness.

One prototype beam is optimized over a centered virtual window and then
shifted to every zone center by an element-wise steering product; the shift
translates the whole gain pattern, so all zones inherit the same local
worst case.  Evaluation sweeps angle x frequency grids; for codebooks made
of plain response vectors the sweep collapses to Dirichlet-kernel lookups
over a few candidate beams per angle, with an envelope bound certifying
that the skipped beams cannot change the outcome.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from . import alm
from .array_model import (BeamVector, SystemConfig, composite_gain,
                          dirichlet_power, steering_composite)
from .prv import prv_beam, prv_plan
from .zones import ZonePartition, divide_zones, virtual_interval

ZONE_GRID = 1025        # per-zone virtual grid for local worst cases
GUARD_FLOOR = 5e-4      # absolute gain below which pruned beams are irrelevant


@dataclass(frozen=True)
class Codebook:
    """L beams, the partition that generated them, and a provenance record."""

    beams: tuple[BeamVector, ...]
    partition: ZonePartition
    provenance: dict

    def __post_init__(self):
        if len(self.beams) != self.partition.n_zones:
            raise ValueError(
                f"{len(self.beams)} beams for {self.partition.n_zones} zones"
            )
        object.__setattr__(self, "beams", tuple(self.beams))

    def __len__(self) -> int:
        return len(self.beams)

    @classmethod
    def assemble(cls, beams, partition: ZonePartition, cfg: SystemConfig,
                 solver_cfg, kind: str) -> "Codebook":
        prov = {
            "kind": kind,
            "config": {"f_c": cfg.f_c, "B": cfg.B, "N": cfg.N, "L": cfg.L,
                       "M": cfg.solver_grid_size},
            "solver": None if solver_cfg is None else {
                "rho1": solver_cfg.rho1, "rho2": solver_cfg.rho2,
                "beta1": solver_cfg.beta1, "beta2": solver_cfg.beta2,
                "n_ite": solver_cfg.n_ite, "eps": solver_cfg.eps,
            },
        }
        digest = hashlib.sha256(repr(sorted(prov.items(), key=str)).encode())
        prov["input_sha256"] = digest.hexdigest()
        return cls(beams=tuple(beams), partition=partition, provenance=prov)


@dataclass(frozen=True)
class EvaluationReport:
    """Per-angle best gains, the global worst case, and per-zone local minima."""

    angles: np.ndarray          # radians, sorted
    gains: np.ndarray           # best wideband gain per angle
    best_indices: np.ndarray    # 1-based winning beam per angle
    worst_case: float
    worst_angle: float
    per_zone: np.ndarray        # local worst case of each zone's own beam


def shift_beam(w: BeamVector, t: float) -> BeamVector:
    """Translate a beam's gain pattern by t in composite space.

    The element-wise product with the steering phases at t maps the pattern
    g(u) to g(u - t) exactly and preserves the modulus of every weight.
    """
    return BeamVector(w.weights * steering_composite(w.n, float(t)))


def build_codebook(cfg: SystemConfig, solver_cfg: alm.SolverConfig | None = None) -> Codebook:
    """Full pipeline: partition, wide-beam initializer, solver, zone shifts."""
    if solver_cfg is None:
        solver_cfg = alm.SolverConfig()
    partition = divide_zones(cfg)
    init = prv_beam(prv_plan(cfg.N, partition.delta_omega))
    prototype, _ = alm.solve(cfg, solver_cfg, partition.delta_omega, init)
    beams = tuple(shift_beam(prototype, c) for c in partition.centers())
    return Codebook.assemble(beams, partition, cfg, solver_cfg, kind="wideband")


def design_beam_for_aod(cfg: SystemConfig, solver_cfg: alm.SolverConfig | None,
                        phi: float) -> BeamVector:
    """One wide beam holding gain toward a known AoD across the whole band.

    The band smears sin(phi) over a window of width (B/f_c)|sin phi|
    centered on sin(phi); the prototype is solved on the centered window
    and shifted there.  B = 0 or phi = 0 degenerates to the plain matched
    beam.
    """
    if not abs(phi) <= np.pi / 2:
        raise ValueError(f"phi={phi} outside [-pi/2, pi/2]")
    if solver_cfg is None:
        solver_cfg = alm.SolverConfig()
    s = float(np.sin(phi))
    width = (cfg.B / cfg.f_c) * abs(s)
    prototype, _ = alm.solve(cfg, solver_cfg, width, prv_beam(prv_plan(cfg.N, width)))
    return shift_beam(prototype, s)


def _matched_centers(cfg: SystemConfig, cb: Codebook) -> np.ndarray | None:
    """Sine-space centers if cb is a plain response-vector codebook, else None.

    Recognized: uniform sine zone boundaries and every beam equal to the
    response vector at its zone's sine center, both within 1e-9.  This is
    what the narrowband constructor emits and what its JSON round-trip
    produces.
    """
    L = len(cb)
    expected_bounds = -1.0 + 2.0 * np.arange(L + 1) / L
    if np.abs(np.sin(cb.partition.boundaries) - expected_bounds).max() > 1e-9:
        return None
    centers = (2.0 * np.arange(1, L + 1) - 1.0) / L - 1.0
    root_n = np.sqrt(cfg.N)
    for w, c in zip(cb.beams, centers):
        if w.n != cfg.N:
            return None
        if np.abs(w.weights - steering_composite(cfg.N, c) / root_n).max() > 1e-9:
            return None
    return centers


def _windowed_min(n: int, lo: np.ndarray, hi: np.ndarray, n_samp: int) -> np.ndarray:
    """Minimum of dirichlet_power over n_samp uniform samples of [lo, hi].

    Exact, but far cheaper than evaluating every sample: the pattern is
    unimodal between consecutive multiples of 2/n (its nulls and peaks),
    so the sampled minimum is attained at a window end or at a sample
    adjacent to one of those cut points.  Only the candidate samples are
    evaluated, a handful per window instead of n_samp.
    """
    if n_samp <= 1:
        return dirichlet_power(lo, n)
    h = (hi - lo) / (n_samp - 1)
    m_lo = np.ceil(lo * (n / 2.0) - 1e-9).astype(np.int64)
    m_hi = np.floor(hi * (n / 2.0) + 1e-9).astype(np.int64)
    parts = [lo[..., None], hi[..., None]]
    ncut = int(np.max(m_hi - m_lo + 1, initial=0))
    if ncut > 0:
        m = m_lo[..., None] + np.arange(ncut)
        t = 2.0 * m / n
        with np.errstate(divide="ignore", invalid="ignore"):
            idx = np.floor((t - lo[..., None]) / h[..., None])
        idx = np.where(np.isfinite(idx), idx, 0.0)
        idx = np.clip(idx, 0, n_samp - 2).astype(np.int64)
        idx = np.where(m <= m_hi[..., None], idx, 0)
        left = lo[..., None] + idx * h[..., None]
        parts += [left, left + h[..., None]]
    args = np.concatenate(parts, axis=-1)
    return dirichlet_power(args, n).min(axis=-1)


def _matched_codebook_sweep(n: int, centers: np.ndarray, sines: np.ndarray,
                            scale: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-angle best wideband gain for a response-vector codebook.

    Only beams within a candidate radius of each angle are evaluated
    (indices wrap: the pattern is 2-periodic in composite space, so the
    far-edge beams matter at |sin phi| near 1).  Pruning is certified per
    angle by either of two facts about the skipped beams, and the radius
    doubles until one holds everywhere:

    * their pattern over the angle's frequency window stays under the
      1/(n sin^2) sidelobe envelope, which is below the achieved gain or
      below the floor under which no beam can matter, or
    * the frequency window spans a full null spacing (2/n) and, by the
      radius construction, lies entirely outside the skipped beam's main
      lobe, so it straddles an exact null of that beam's pattern; the
      beam's sampled band minimum is then at most a slope-bounded
      residue at the sample nearest that null.
    """
    L = centers.size
    F = scale.size
    spacing = 2.0 / L
    b2 = float(scale[-1] - 1.0)
    p0 = scale[0] * sines
    p1 = scale[-1] * sines
    win_lo = np.minimum(p0, p1)
    win_hi = np.maximum(p0, p1)
    rows = np.arange(sines.size)
    j0 = np.clip(np.floor((sines + 1.0) / spacing).astype(int), 0, L - 1)
    radius = int(np.ceil((b2 + 2.0 / n + 1.0 / L) / spacing)) + 1
    while True:
        offsets = np.arange(L) if 2 * radius + 1 >= L else np.arange(-radius, radius + 1)
        j = (j0[:, None] + offsets[None, :]) % L
        c = centers[j]
        g = _windowed_min(n, c - win_hi[:, None], c - win_lo[:, None], F) / n
        pick = np.argmax(g, axis=1)
        best = g[rows, pick]
        winner = j[rows, pick]
        if 2 * radius + 1 >= L:
            return best, winner
        # skipped beams sit at least (radius+1) spacings away on the circle;
        # every window point is `raw` or more from their centers
        raw = (radius + 1) * spacing - np.abs(sines - centers[j0]) - b2 * np.abs(sines)
        clipped = np.clip(raw, 1e-9, 1.0)
        bound = 1.0 / (n * np.sin(np.pi * clipped / 2.0) ** 2)
        cap = np.maximum(best, GUARD_FLOOR)
        ok = bound <= cap
        window = 2.0 * b2 * np.abs(sines)
        step = window / max(F - 1, 1)
        residue = bound * (n * np.pi * step / 4.0) ** 2
        ok |= (window >= 2.0 / n) & (raw >= 2.0 / n) & (residue <= cap)
        if np.all(ok):
            return best, winner
        radius *= 2


def _general_sweep(weights: np.ndarray, sines: np.ndarray,
                   scale: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Dense angle x frequency sweep of max-over-beams band-minimum gain."""
    L, n = weights.shape
    F = scale.size
    k = np.arange(n)
    gains = np.empty(sines.size)
    winner = np.empty(sines.size, dtype=int)
    # block the angle axis so the N x (F*block) phase matrix stays small
    block = max(1, int(4e6 / (F * max(L, n))))
    for a0 in range(0, sines.size, block):
        s = sines[a0:a0 + block]
        u = np.multiply.outer(scale, s)
        E = np.exp(-1j * np.pi * np.multiply.outer(k, u.ravel()))
        G = np.abs(weights @ E) ** 2
        G = G.reshape(L, F, s.size).min(axis=1)
        w = G.argmax(axis=0)
        gains[a0:a0 + s.size] = G[w, np.arange(s.size)]
        winner[a0:a0 + s.size] = w
    return gains, winner


def _per_zone_worst(cfg: SystemConfig, cb: Codebook,
                    centers: np.ndarray | None) -> np.ndarray:
    """Local worst case of each zone's assigned beam over the zone's image.

    The band sweep of an angular zone covers exactly the zone's virtual
    interval, so a single composite sweep over that interval is the band
    minimum taken over the whole zone.
    """
    bounds = cb.partition.boundaries
    out = np.empty(len(cb))
    for l in range(len(cb)):
        lo, hi = virtual_interval(cfg, bounds[l], bounds[l + 1])
        grid = np.linspace(lo, hi, ZONE_GRID)
        if centers is not None:
            out[l] = (dirichlet_power(grid - centers[l], cfg.N) / cfg.N).min()
        else:
            out[l] = composite_gain(cb.beams[l].weights, grid).min()
    return out


def evaluate(cfg: SystemConfig, cb: Codebook, mode: str = "grid",
             seed: int = 0) -> EvaluationReport:
    """Worst-case sweep of a codebook under the given system parameters.

    grid mode: n_angle sine-uniform points plus every zone boundary and
    both endpoints.  monte_carlo mode: n_angle seeded uniform-in-sine
    draws.  Gains are band minima over the n_freq frequency grid.
    """
    if mode == "grid":
        sines = np.unique(np.concatenate([
            np.linspace(-1.0, 1.0, cfg.n_angle),
            np.sin(cb.partition.boundaries),
            [-1.0, 1.0],
        ]))
    elif mode == "monte_carlo":
        rng = np.random.default_rng(seed)
        sines = np.sort(rng.uniform(-1.0, 1.0, cfg.n_angle))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if any(w.n != cfg.N for w in cb.beams):
        raise ValueError("codebook beam length does not match cfg.N")
    scale = 1.0 + cfg.frequency_grid() / cfg.f_c
    centers = _matched_centers(cfg, cb)
    if centers is not None:
        gains, winner = _matched_codebook_sweep(cfg.N, centers, sines, scale)
    else:
        weights = np.stack([w.weights for w in cb.beams])
        gains, winner = _general_sweep(weights, sines, scale)
    worst = int(np.argmin(gains))
    angles = np.arcsin(sines)
    return EvaluationReport(
        angles=angles,
        gains=gains,
        best_indices=winner + 1,
        worst_case=float(gains[worst]),
        worst_angle=float(angles[worst]),
        per_zone=_per_zone_worst(cfg, cb, centers),
    )


def sweep(cfg: SystemConfig, what: str, n_values, b_values,
          solver_cfg: alm.SolverConfig | None = None) -> list[tuple]:
    """(N, B) table of worst cases and the width bound, L fixed by cfg.

    what selects the worst-case column: "narrowband" uses the closed form,
    "wideband" runs the full design pipeline per cell, "bound" leaves the
    column empty.  The bound 2/delta_omega is recomputed per B only; it
    does not depend on N.
    """
    from dataclasses import replace

    from .narrowband import prop1_worst_case
    from .zones import prop3_upper_bound

    if what not in ("narrowband", "wideband", "bound"):
        raise ValueError(f"unknown sweep kind {what!r}")
    rows = []
    bound_cache: dict[float, float] = {}
    for n in n_values:
        for b in b_values:
            cell = replace(cfg, N=int(n), B=float(b))
            if b not in bound_cache:
                bound_cache[b] = prop3_upper_bound(divide_zones(cell))
            if what == "narrowband":
                worst = prop1_worst_case(cell).worst_case_gain
            elif what == "wideband":
                worst = evaluate(cell, build_codebook(cell, solver_cfg)).worst_case
            else:
                worst = None
            rows.append((int(n), float(b) / 1e9, worst, bound_cache[b]))
    return rows

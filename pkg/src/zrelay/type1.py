"""Closed forms for the relay link into the interfered receiver.

Direction 1: the interference-free receiver decodes the common part of the
interfering signal and forwards a bin index over the digital link, so the
interfered receiver can subtract it.  This module carries the per-split
pentagons, the achievable/capacity regions per regime, the sum-capacity
corner split, the high-SNR sum-rate asymptotics, and the alternative
quantize-and-forward rate pair with its Wyner-Ziv parameters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ChannelParams, Regime, RegimeLabel, classify_type1, gamma, inr2_section
from .geometry import LinearSystem, Pentagon, RateRegion, UnionHullReport, pentagon_to_region, union_hull_report


@dataclass(frozen=True)
class PowerSplit:
    """Private-message power fraction beta at transmitter 2 (1-beta is common)."""

    beta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.beta) and 0.0 <= self.beta <= 1.0):
            raise ValueError(f"beta must be in [0, 1], got {self.beta!r}")

    @property
    def common(self) -> float:
        return 1.0 - self.beta


@dataclass(frozen=True)
class WynerZivParams:
    """Quantization-noise ratio sigma^2/N and the rate penalty delta0 (bits)."""

    sigma2_over_n: float
    delta0: float

    def __post_init__(self) -> None:
        if self.sigma2_over_n < 0.0 or self.delta0 < 0.0:
            raise ValueError("Wyner-Ziv parameters must be nonnegative")


def pentagon_weak(params: ChannelParams, split: PowerSplit) -> Pentagon:
    """Achievable pentagon for one power split (valid at any operating point)."""
    s1, s2, i2, r0 = params.snr1, params.snr2, params.inr2, params.r0
    beta, common = split.beta, split.common
    r1_max = gamma(s1 / (1.0 + beta * i2))
    r2_common = gamma(beta * s2) + gamma(common * i2 / (1.0 + beta * i2)) + r0
    r2_max = min(gamma(s2), r2_common)
    sum_max = gamma(beta * s2) + gamma((s1 + common * i2) / (1.0 + beta * i2)) + r0
    return Pentagon(r1_max, r2_max, sum_max)


def corner_point(params: ChannelParams, beta: float) -> tuple[float, float]:
    """Lower-right corner of the per-split pentagon (the sweep boundary curve)."""
    s1, s2, i2, r0 = params.snr1, params.snr2, params.inr2, params.r0
    r1 = gamma(s1 / (1.0 + beta * i2))
    r2 = gamma(beta * s2) + gamma((1.0 - beta) * i2 / (1.0 + s1 + beta * i2)) + r0
    return r1, r2


def corner_curve(params: ChannelParams, betas) -> np.ndarray:
    """Corner points sampled over a list of splits, one (r1, r2) row per beta."""
    return np.asarray([corner_point(params, float(b)) for b in np.asarray(betas, dtype=float)])


@dataclass(frozen=True)
class BetaStar:
    """Sum-optimal split, clamped to [0, 1] with the raw value retained."""

    beta: float
    clamped: bool
    unclamped: float

    @property
    def split(self) -> PowerSplit:
        return PowerSplit(self.beta)


def beta_star(params: ChannelParams) -> BetaStar:
    """Split at which the two branches of the weak-regime R2 bound meet.

    Only defined in the weak regime.  Values outside [0, 1] are clamped and
    flagged; there the R2 minimum resolves on a single branch over the whole
    sweep.
    """
    regime = classify_type1(params)
    if regime.label is not RegimeLabel.WEAK:
        raise ValueError(f"sum-optimal split is defined in the weak regime only, got {regime.label.value}")
    s1, s2, i2 = params.snr1, params.snr2, params.inr2
    t = 2.0 ** (2.0 * params.r0)
    num = (1.0 + s1) * (1.0 + s2) - t * (1.0 + s1 + i2)
    den = t * s2 * (1.0 + s1 + i2) - i2 * (1.0 + s2)
    if abs(den) <= 1e-12 * max(abs(num), 1.0):
        raise ValueError("degenerate split equation: denominator vanishes")
    raw = num / den
    clamped = raw < -1e-9 or raw > 1.0 + 1e-9
    return BetaStar(min(1.0, max(0.0, raw)), clamped, raw)


def beta_star_high_snr_limit(params: ChannelParams) -> float:
    """Limit of the sum-optimal split as all power ratios grow with fixed ratios."""
    t = 2.0 ** (-2.0 * params.r0)
    return t / (1.0 + (1.0 - t) * params.inr2 / params.snr1)


def split_for_rate(params: ChannelParams, r1: float) -> float:
    """Invert the per-split user-1 bound: the beta at which r1 is the R1 cap."""
    t = 2.0 ** (2.0 * r1) - 1.0
    if t <= 0.0:
        return 1.0
    return (params.snr1 / t - 1.0) / params.inr2


def weak_boundary_betas(params: ChannelParams, n_boundary: int, beta_hi: float) -> np.ndarray:
    """Splits in [0, beta_hi] whose corner points are uniform in R1.

    The boundary curve is smooth as a graph over R1, so an R1-uniform grid
    keeps the polyline sagitta small everywhere; a beta-uniform grid badly
    undersamples the sharp bend at small beta.
    """
    s1, i2 = params.snr1, params.inr2
    r1_lo = gamma(s1 / (1.0 + beta_hi * i2))
    r1_hi = gamma(s1)
    betas = [min(beta_hi, max(0.0, split_for_rate(params, float(r1))))
             for r1 in np.linspace(r1_hi, r1_lo, n_boundary)]
    betas[0], betas[-1] = 0.0, beta_hi
    return np.asarray(betas)


def region_type1(params: ChannelParams, n_boundary: int = 201) -> tuple[RateRegion, Regime]:
    """Achievable region (capacity in the strong and very strong regimes).

    The weak-regime boundary is the corner curve up to the sum-optimal split,
    capped by the two single-user box constraints; it is sampled at
    ``n_boundary`` points uniform in R1.
    """
    if n_boundary < 2:
        raise ValueError("n_boundary must be at least 2")
    regime = classify_type1(params)
    s1, s2, i2, r0 = params.snr1, params.snr2, params.inr2, params.r0
    if regime.label is RegimeLabel.VERY_STRONG:
        return pentagon_to_region(Pentagon(gamma(s1), gamma(s2), math.inf)), regime
    if regime.label is RegimeLabel.STRONG:
        return pentagon_to_region(Pentagon(gamma(s1), gamma(s2), gamma(s1 + i2) + r0)), regime
    if s1 == 0.0 or i2 == 0.0:
        # the corner curve degenerates: the union is the full rectangle
        return pentagon_to_region(Pentagon(gamma(s1), gamma(s2), math.inf)), regime
    star = beta_star(params)
    points = [(0.0, 0.0), (gamma(s1), 0.0)]
    points.extend(map(tuple, corner_curve(params, weak_boundary_betas(params, n_boundary, star.beta))))
    top = gamma(s2)
    points.append((gamma(s1 / (1.0 + star.beta * i2)), top))
    points.append((0.0, top))
    return RateRegion.from_vertices(points), regime


def region_type1_by_union(params: ChannelParams, n_beta: int = 201) -> UnionHullReport:
    """Cross-check path: hull of the per-split pentagons over a uniform sweep."""
    if n_beta < 2:
        raise ValueError("n_beta must be at least 2")
    regions = [
        pentagon_to_region(pentagon_weak(params, PowerSplit(float(b))))
        for b in np.linspace(0.0, 1.0, n_beta)
    ]
    return union_hull_report(regions)


def sum_capacity_no_relay(params: ChannelParams) -> float:
    """Sum capacity of the plain Z-interference channel (r0 ignored).

    Piecewise in the interference strength: treat-as-noise below SNR2, the
    joint multiple-access bound up to SNR2*(1+SNR1), both single-user rates
    beyond; the pieces agree at both thresholds.
    """
    s1, s2, i2 = params.snr1, params.snr2, params.inr2
    if i2 <= s2:
        return gamma(s2) + gamma(s1 / (1.0 + i2))
    if i2 <= inr2_section(params):
        return gamma(s1 + i2)
    return gamma(s1) + gamma(s2)


def delta0(params: ChannelParams) -> float:
    """Rate penalty of the quantize-and-forward pair; always within [0, r0]."""
    s1, s2, i2, r0 = params.snr1, params.snr2, params.inr2, params.r0
    if r0 == 0.0:
        return 0.0
    t = 2.0 ** (2.0 * r0) - 1.0
    num = t * (1.0 + s2 + i2) * (1.0 + s1 + i2)
    den = (1.0 + i2) * ((1.0 + s1) * (1.0 + s2) + i2)
    return gamma(num / den)


@dataclass(frozen=True)
class CfRatePair:
    """Quantize-and-forward rate pair plus its Wyner-Ziv parameters."""

    r1: float
    r2: float
    wyner_ziv: WynerZivParams


def cf_rate_pair(params: ChannelParams) -> CfRatePair:
    """Rate pair of the quantize-and-forward alternative (no power splitting).

    Receiver 2 quantizes its signal at distortion sigma^2 chosen to fill the
    digital link exactly and forwards it; receiver 1 decodes with the
    quantized side channel.  At r0 = 0 the quantizer is useless
    (sigma^2 = inf) and the plain treat-as-noise pair is returned.
    """
    s1, s2, i2, r0 = params.snr1, params.snr2, params.inr2, params.r0
    base_r1 = gamma(s1 / (1.0 + i2))
    r2 = gamma(s2)
    if r0 == 0.0:
        return CfRatePair(base_r1, r2, WynerZivParams(math.inf, 0.0))
    sigma2 = (1.0 + s2 * (1.0 + s1) / (1.0 + s1 + i2)) / (2.0 ** (2.0 * r0) - 1.0)
    d0 = delta0(params)
    return CfRatePair(base_r1 + r0 - d0, r2, WynerZivParams(sigma2, d0))


@dataclass(frozen=True)
class ScaleGap:
    scale: float
    gap: float


def asymptotic_sum_gaps(
    params: ChannelParams,
    n_scalings: int = 8,
    factor: float = 10.0,
    scheme: str = "split-optimal",
    fixed_beta: float | None = None,
) -> list[ScaleGap]:
    """Sum-rate gap to (no-relay sum capacity + r0) on a geometric scale ladder.

    At each step all power ratios are multiplied by ``factor`` (noise shrinks
    with fixed gains); the channel must stay in the weak regime throughout.
    ``scheme`` picks the achieving strategy: "split-optimal" evaluates the
    sum-optimal split, "fixed-split" a user-chosen beta in (0, beta*],
    "compress-forward" the quantize-and-forward pair.
    """
    if scheme not in ("split-optimal", "fixed-split", "compress-forward"):
        raise ValueError(f"unknown scheme {scheme!r}")
    if scheme == "fixed-split":
        if fixed_beta is None or not 0.0 < fixed_beta <= 1.0:
            raise ValueError("fixed-split requires fixed_beta in (0, 1]")
    gaps = []
    for k in range(n_scalings):
        scale = factor**k
        p = params.scaled(scale)
        if classify_type1(p).label is not RegimeLabel.WEAK:
            raise ValueError(f"channel leaves the weak regime at scale {scale:g}")
        target = sum_capacity_no_relay(p) + p.r0
        if scheme == "split-optimal":
            star = beta_star(p)
            achieved = gamma(p.snr1 / (1.0 + star.beta * p.inr2)) + gamma(p.snr2)
        elif scheme == "fixed-split":
            if fixed_beta > beta_star(p).beta + 1e-12:
                raise ValueError(f"fixed_beta exceeds the sum-optimal split at scale {scale:g}")
            r1, r2 = corner_point(p, fixed_beta)
            achieved = r1 + r2
        else:
            pair = cf_rate_pair(p)
            achieved = pair.r1 + pair.r2
        gaps.append(ScaleGap(scale, achieved - target))
    return gaps


def constraint_system(params: ChannelParams, beta: float) -> LinearSystem:
    """Auxiliary-rate constraint system whose (R1, R2) projection is the pentagon.

    Decoding at receiver 2 bounds (S2, T2) by a plain multiple-access region;
    decoding at receiver 1 bounds (S1, T2) by a multiple-access region whose
    T2 rows gain the relay rate.  R1 = S1 and R2 = S2 + T2.
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must be in [0, 1], got {beta!r}")
    s1, s2, i2, r0 = params.snr1, params.snr2, params.inr2, params.r0
    common = 1.0 - beta
    sys = LinearSystem(["R1", "R2", "S1", "S2", "T2"])
    sys.add_equality({"R1": 1.0, "S1": -1.0}, 0.0)
    sys.add_equality({"R2": 1.0, "S2": -1.0, "T2": -1.0}, 0.0)
    sys.add_nonnegative("S1", "S2", "T2")
    # receiver 2 decodes (U2, W2)
    sys.add({"T2": 1.0}, gamma(common * s2))
    sys.add({"S2": 1.0}, gamma(beta * s2))
    sys.add({"S2": 1.0, "T2": 1.0}, gamma(s2))
    # receiver 1 decodes (X1, W2) with the relay's help, U2 treated as noise
    sys.add({"S1": 1.0}, gamma(s1 / (1.0 + beta * i2)))
    sys.add({"T2": 1.0}, gamma(common * i2 / (1.0 + beta * i2)) + r0)
    sys.add({"S1": 1.0, "T2": 1.0}, gamma((s1 + common * i2) / (1.0 + beta * i2)) + r0)
    return sys

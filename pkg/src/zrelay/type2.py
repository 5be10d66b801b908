"""Closed forms for the relay link out of the interfered receiver.

Direction 2: the interfered receiver decodes the common message, forwards its
bin index with part of the digital link (rate rb), and quantizes a
recombination of what remains toward the interference-free receiver with the
rest (rate ra).  This module carries the quantizer statistics, the optimal
recombination coefficient, the per-scheme pentagons, the four regime regions,
and the large-relay-rate sum capacity with its half-bit gain bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ChannelParams, Regime, RegimeLabel, classify_type2, gamma, inr2_section
from .geometry import LinearSystem, Pentagon, RateRegion, pentagon_to_region, pentagon_vertices
from .type1 import sum_capacity_no_relay


@dataclass(frozen=True)
class Type2Scheme:
    """One operating point of the combined forwarding scheme.

    ``alpha`` recombines the common signal into the quantizer input, ``beta``
    is the private power fraction, ``ra``/``rb`` split the digital link
    between quantization and bin-index forwarding.
    """

    alpha: float
    beta: float
    ra: float
    rb: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be finite, got {self.alpha!r}")
        if not (math.isfinite(self.beta) and 0.0 <= self.beta <= 1.0):
            raise ValueError(f"beta must be in [0, 1], got {self.beta!r}")
        if self.ra < 0.0 or self.rb < 0.0:
            raise ValueError("link shares ra, rb must be >= 0")


@dataclass(frozen=True)
class QuantizerStats:
    """Quantization-noise ratio and the two side-information rate bonuses (bits)."""

    sigma2_over_n: float
    zeta: float
    eta: float


def quantizer_stats(params: ChannelParams, scheme: Type2Scheme) -> QuantizerStats:
    """Wyner-Ziv statistics of the recombined quantizer at one scheme point.

    ``sigma2_over_n`` fills the quantization share of the link exactly;
    ``zeta`` is the private-decoding bonus (common signal known), ``eta`` the
    joint-decoding bonus.  At ra = 0 the quantizer carries nothing: sigma^2
    is infinite and both bonuses vanish.
    """
    s2, i2 = params.snr2, params.inr2
    alpha, beta, ra = scheme.alpha, scheme.beta, scheme.ra
    if ra == 0.0:
        return QuantizerStats(math.inf, 0.0, 0.0)
    common = 1.0 - beta
    mix = 1.0 + 2.0 * alpha * common + alpha * alpha * common
    cross = beta * common * alpha * alpha * i2 * s2
    excess = max(mix * i2 + cross, 0.0)  # residual variance above the noise floor
    sigma2 = (1.0 + s2 + excess) / ((2.0 ** (2.0 * ra) - 1.0) * (1.0 + s2))
    zeta = gamma(beta * i2 / ((1.0 + beta * s2) * (1.0 + sigma2)))
    eta = gamma(excess / ((1.0 + s2) * (1.0 + sigma2)))
    return QuantizerStats(sigma2, zeta, eta)


def alpha_star(params: ChannelParams, beta: float) -> float:
    """Recombination coefficient minimizing the quantization noise: -1/(1+beta*SNR2)."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must be in [0, 1], got {beta!r}")
    return -1.0 / (1.0 + beta * params.snr2)


def delta_weak(params: ChannelParams, beta: float) -> float:
    """Weak-regime boundary lift: the private-decoding bonus at the optimal scheme.

    Equals the quantizer bonus zeta at alpha_star with the whole link used
    for quantization; nondecreasing in both beta and r0, and zero when either
    is zero.
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must be in [0, 1], got {beta!r}")
    s2, i2, r0 = params.snr2, params.inr2, params.r0
    t = 2.0 ** (2.0 * r0)
    return gamma(beta * (t - 1.0) * i2 / (t * (1.0 + beta * s2) + beta * i2))


def pentagon_type2(params: ChannelParams, scheme: Type2Scheme) -> Pentagon:
    """Achievable pentagon at one scheme point of the combined strategy."""
    if scheme.ra + scheme.rb > params.r0 + 1e-12:
        raise ValueError(
            f"link shares ra + rb = {scheme.ra + scheme.rb!r} exceed r0 = {params.r0!r}"
        )
    s1, s2, i2 = params.snr1, params.snr2, params.inr2
    beta, common = scheme.beta, 1.0 - scheme.beta
    stats = quantizer_stats(params, scheme)
    r1_max = gamma(s1 / (1.0 + beta * i2))
    branch_joint = gamma(s2) + scheme.rb + stats.eta
    branch_private = gamma(beta * s2) + gamma(common * i2 / (1.0 + beta * i2)) + stats.zeta
    sum_max = gamma(beta * s2) + gamma((s1 + common * i2) / (1.0 + beta * i2)) + stats.zeta
    return Pentagon(r1_max, min(branch_joint, branch_private), sum_max)


def corner_point(params: ChannelParams, beta: float) -> tuple[float, float]:
    """Weak-regime boundary point at one split: the no-relay corner lifted by delta."""
    s1, s2, i2 = params.snr1, params.snr2, params.inr2
    r1 = gamma(s1 / (1.0 + beta * i2))
    r2 = gamma(beta * s2) + gamma((1.0 - beta) * i2 / (1.0 + s1 + beta * i2)) + delta_weak(params, beta)
    return r1, r2


def corner_curve(params: ChannelParams, betas) -> np.ndarray:
    """Weak-regime boundary samples, one (r1, r2) row per beta."""
    return np.asarray([corner_point(params, float(b)) for b in np.asarray(betas, dtype=float)])


@dataclass(frozen=True)
class SweepConfig:
    """Grid for the moderately-strong hull sweep (CLI-overridable).

    ``alpha`` runs on ``n_alpha`` points centered at the per-beta optimum
    spanning +-alpha_span, ``beta`` on ``n_beta`` points in [0, 1], ``ra`` on
    ``n_ra`` points in [0, r0] with rb = r0 - ra always saturated.
    """

    n_alpha: int = 41
    alpha_span: float = 1.0
    n_beta: int = 41
    n_ra: int = 17

    def __post_init__(self) -> None:
        if min(self.n_alpha, self.n_beta, self.n_ra) < 2 or self.alpha_span <= 0.0:
            raise ValueError("sweep grids need >= 2 points and a positive alpha span")


def region_type2(
    params: ChannelParams,
    sweep: SweepConfig | None = None,
    n_boundary: int = 201,
) -> tuple[RateRegion, Regime]:
    """Achievable region (capacity in the strong and very strong regimes).

    Weak: closed-form boundary curve lifted by delta, sampled on
    ``n_boundary`` splits (no hull needed; the curve is concave).
    Moderately strong: convex hull of the pentagon sweep over
    (alpha, beta, ra).  Strong: pentagon with the full-link R2 bonus.
    Very strong: rectangle with the full-link R2 bonus.
    """
    if n_boundary < 2:
        raise ValueError("n_boundary must be at least 2")
    regime = classify_type2(params)
    s1, s2, i2, r0 = params.snr1, params.snr2, params.inr2, params.r0
    if regime.label is RegimeLabel.VERY_STRONG:
        return pentagon_to_region(Pentagon(gamma(s1), gamma(s2) + r0, math.inf)), regime
    if regime.label is RegimeLabel.STRONG:
        return pentagon_to_region(Pentagon(gamma(s1), gamma(s2) + r0, gamma(s1 + i2))), regime
    if regime.label is RegimeLabel.WEAK:
        if s1 == 0.0 or i2 == 0.0:
            # degenerate curve: a rectangle up to the lifted single-user bound
            top = corner_point(params, 1.0)[1]
            return pentagon_to_region(Pentagon(gamma(s1), top, math.inf)), regime
        from .type1 import weak_boundary_betas

        curve = corner_curve(params, weak_boundary_betas(params, n_boundary, 1.0))
        points = [(0.0, 0.0), (gamma(s1), 0.0)]
        points.extend(map(tuple, curve))
        points.append((0.0, float(curve[-1, 1])))
        return RateRegion.from_vertices(points), regime
    cfg = sweep or SweepConfig()
    vertex_blocks = []
    ras = np.unique(np.linspace(0.0, r0, cfg.n_ra))
    for beta in np.linspace(0.0, 1.0, cfg.n_beta):
        center = alpha_star(params, float(beta))
        alphas = np.linspace(center - cfg.alpha_span, center + cfg.alpha_span, cfg.n_alpha)
        for ra in ras:
            rb = max(r0 - float(ra), 0.0)
            if ra == 0.0:
                # alpha is inert without a quantization share; canonical alpha = 0
                schemes = [Type2Scheme(0.0, float(beta), 0.0, rb)]
            else:
                schemes = [Type2Scheme(float(a), float(beta), float(ra), rb) for a in alphas]
            for scheme in schemes:
                vertex_blocks.append(pentagon_vertices(pentagon_type2(params, scheme)))
    return RateRegion.from_vertices(np.vstack(vertex_blocks)), regime


@dataclass(frozen=True)
class InfiniteRelaySum:
    """Large-relay-rate sum capacity, the gain over no relay, and the bound flag."""

    c_inf: float
    gain: float
    half_bit_regime: bool


def sum_capacity_infinite_relay(params: ChannelParams) -> InfiniteRelaySum:
    """Sum capacity in the limit of an unbounded digital link.

    The gain over the no-relay sum capacity stays below half a bit whenever
    the interference is below the no-relay very-strong threshold
    SNR2*(1+SNR1); beyond it the gain is unbounded.
    """
    s1, s2, i2 = params.snr1, params.snr2, params.inr2
    c_inf = gamma(s1 + i2) + gamma(s2 / (1.0 + i2))
    gain = c_inf - sum_capacity_no_relay(params)
    return InfiniteRelaySum(c_inf, gain, i2 <= inr2_section(params))


def constraint_system(params: ChannelParams, scheme: Type2Scheme, xi: float) -> LinearSystem:
    """Auxiliary-rate system whose (R1, R2) projection is the per-scheme pentagon.

    Receiver 1 decodes (X1, W2) without relay help; receiver 2 decodes
    (U2, W2) helped by the quantized side channel and the forwarded bin index.
    ``xi`` is the common-message quantizer bonus I(W2; Yhat1 | Y2, U2), which
    has no closed form here and is supplied by the caller (it never binds
    after projection).
    """
    s1, s2, i2 = params.snr1, params.snr2, params.inr2
    beta, common = scheme.beta, 1.0 - scheme.beta
    stats = quantizer_stats(params, scheme)
    sys = LinearSystem(["R1", "R2", "S1", "S2", "T2"])
    sys.add_equality({"R1": 1.0, "S1": -1.0}, 0.0)
    sys.add_equality({"R2": 1.0, "S2": -1.0, "T2": -1.0}, 0.0)
    sys.add_nonnegative("S1", "S2", "T2")
    # receiver 1 decodes (X1, W2), U2 treated as noise, no relay on this side
    sys.add({"S1": 1.0}, gamma(s1 / (1.0 + beta * i2)))
    sys.add({"T2": 1.0}, gamma(common * i2 / (1.0 + beta * i2)))
    sys.add({"S1": 1.0, "T2": 1.0}, gamma((s1 + common * i2) / (1.0 + beta * i2)))
    # receiver 2 decodes (U2, W2) with the quantized side channel and bin index
    sys.add({"S2": 1.0}, gamma(beta * s2) + stats.zeta)
    sys.add({"T2": 1.0}, gamma(common * s2) + xi + scheme.rb)
    sys.add({"S2": 1.0, "T2": 1.0}, gamma(s2) + stats.eta + scheme.rb)
    return sys

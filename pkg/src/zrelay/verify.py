"""Randomized cross-verification suites behind the CLI ``verify`` command.

Each suite draws random operating points from a seeded generator and checks a
family of identities: closed forms against the Gaussian log-det oracle,
Fourier-Motzkin projections against the pentagon formulas, boundary-curve
concavity, the half-bit gain bound, and the scale-ladder sum-rate
asymptotics.  Results are deterministic given the seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ChannelParams, RegimeLabel, classify_type1, gamma, inr2_section
from .gaussian import (
    combined_forwarding_system,
    quantize_forward_system,
)
from .geometry import (
    check_boundary_concavity,
    fourier_motzkin_project,
    hausdorff_distance,
    pentagon_to_region,
    pentagon_vertices,
    union_over_sweep,
)
from . import type1, type2

#: agreement tolerance (bits) for closed-form vs oracle and projection checks
ORACLE_TOL = 1e-9


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    checks: int
    max_error: float
    detail: str


def draw_params(
    rng: np.random.Generator,
    snr_db: tuple[float, float] = (0.0, 35.0),
    inr_db: tuple[float, float] = (-5.0, 45.0),
    r0: tuple[float, float] = (0.1, 4.0),
) -> ChannelParams:
    """One random operating point, log-uniform in the power ratios."""
    return ChannelParams(
        10.0 ** (rng.uniform(*snr_db) / 10.0),
        10.0 ** (rng.uniform(*snr_db) / 10.0),
        10.0 ** (rng.uniform(*inr_db) / 10.0),
        rng.uniform(*r0),
    )


def draw_weak_type1(rng: np.random.Generator) -> ChannelParams:
    """Rejection-sample an operating point in the weak regime (relay direction 1)."""
    while True:
        params = draw_params(rng, snr_db=(10.0, 35.0), inr_db=(-5.0, 30.0), r0=(0.1, 2.0))
        if classify_type1(params).label is RegimeLabel.WEAK:
            return params


def draw_weak_type2(rng: np.random.Generator) -> ChannelParams:
    """Rejection-sample an operating point with the interference below SNR2."""
    while True:
        params = draw_params(rng, snr_db=(5.0, 35.0), inr_db=(-5.0, 30.0), r0=(0.1, 4.0))
        if params.inr2 < params.snr2:
            return params


def suite_oracle(seed: int, draws: int) -> SuiteResult:
    """Closed-form rates and quantizer statistics vs Gaussian log-det evaluations."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    checks = 0
    for _ in range(draws):
        params = draw_params(rng)

        # quantize-and-forward pair: sigma^2 from the conditional variance,
        # the user-1 rate from I(X1; Y1, Yhat2)
        pair = type1.cf_rate_pair(params)
        sys_cf = quantize_forward_system(params, pair.wyner_ziv.sigma2_over_n)
        cond = sys_cf.conditional_variance("Y2", ["Y1"])
        sigma_oracle = cond / (2.0 ** (2.0 * params.r0) - 1.0)
        worst = max(worst, abs(pair.wyner_ziv.sigma2_over_n - sigma_oracle))
        r1_oracle = sys_cf.mutual_information("X1", ["Y1", "Yhat2"])
        worst = max(worst, abs(pair.r1 - r1_oracle))

        # recombined quantizer statistics for the reverse relay direction
        scheme = type2.Type2Scheme(
            rng.uniform(-3.0, 1.0), rng.uniform(0.0, 1.0), rng.uniform(0.05, params.r0), 0.0
        )
        stats = type2.quantizer_stats(params, scheme)
        sys2 = combined_forwarding_system(params, scheme.alpha, scheme.beta, stats.sigma2_over_n)
        cond_bar = sys2.conditional_variance("Ybar1", ["Y2"])
        sigma2_oracle = cond_bar / (2.0 ** (2.0 * scheme.ra) - 1.0)
        worst = max(worst, abs(stats.sigma2_over_n - sigma2_oracle))
        worst = max(worst, abs(stats.zeta - sys2.mutual_information("U2", "Yhat1", ["Y2", "W2"])))
        worst = max(worst, abs(stats.eta - sys2.mutual_information(["U2", "W2"], "Yhat1", ["Y2"])))
        # the quantizer fills its link share exactly
        worst = max(worst, abs(scheme.ra - sys2.mutual_information("Yhat1", "Ybar1", ["Y2"])))

        # optimal recombination: predicted noise ratio and the boundary-lift identity
        beta = rng.uniform(0.0, 1.0)
        a_star = type2.alpha_star(params, beta)
        full = type2.Type2Scheme(a_star, beta, params.r0, 0.0)
        stats_star = type2.quantizer_stats(params, full)
        predicted = (1.0 + beta * params.inr2 / (1.0 + beta * params.snr2)) / (
            2.0 ** (2.0 * params.r0) - 1.0
        )
        worst = max(worst, abs(stats_star.sigma2_over_n - predicted))
        worst = max(worst, abs(stats_star.zeta - type2.delta_weak(params, beta)))
        checks += 8
    return SuiteResult("oracle", worst <= ORACLE_TOL, checks, worst, f"max |closed - oracle| = {worst:.3e} bits")


def suite_fm(seed: int, draws: int) -> SuiteResult:
    """Fourier-Motzkin projections of the decoding constraints vs the pentagons."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    checks = 0
    for _ in range(draws):
        params = draw_params(rng)
        beta = rng.uniform(0.0, 1.0)
        projected = fourier_motzkin_project(type1.constraint_system(params, beta), ("R1", "R2"))
        direct = pentagon_to_region(type1.pentagon_weak(params, type1.PowerSplit(beta)))
        worst = max(worst, hausdorff_distance(projected, direct))

        ra = rng.uniform(0.05, params.r0)
        scheme = type2.Type2Scheme(rng.uniform(-3.0, 1.0), beta, ra, params.r0 - ra)
        stats = type2.quantizer_stats(params, scheme)
        sys2 = combined_forwarding_system(params, scheme.alpha, scheme.beta, stats.sigma2_over_n)
        xi = sys2.mutual_information("W2", "Yhat1", ["Y2", "U2"])
        projected2 = fourier_motzkin_project(
            type2.constraint_system(params, scheme, xi), ("R1", "R2")
        )
        direct2 = pentagon_to_region(type2.pentagon_type2(params, scheme))
        worst = max(worst, hausdorff_distance(projected2, direct2))
        checks += 2
    return SuiteResult("fm", worst <= ORACLE_TOL, checks, worst, f"max projection deviation = {worst:.3e} bits")


def suite_convexity(seed: int, draws: int, n_samples: int = 200) -> SuiteResult:
    """Weak-regime boundary curves: nonincreasing and concave on a beta grid."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    checks = 0
    ok = True
    betas = np.linspace(0.0, 1.0, n_samples)
    for _ in range(draws):
        p1 = draw_weak_type1(rng)
        curve = type1.corner_curve(p1, betas)[::-1]  # reversed so r1 increases
        report = check_boundary_concavity(curve[:, 0], curve[:, 1])
        ok = ok and report.monotone_ok and report.concave_ok
        worst = max(worst, report.max_violation)

        p2 = draw_weak_type2(rng)
        curve2 = type2.corner_curve(p2, betas)[::-1]
        report2 = check_boundary_concavity(curve2[:, 0], curve2[:, 1])
        ok = ok and report2.monotone_ok and report2.concave_ok
        worst = max(worst, report2.max_violation)
        checks += 2
    return SuiteResult("convexity", ok, checks, worst, f"max curve violation = {worst:.3e}")


def suite_halfbit(seed: int, draws: int) -> SuiteResult:
    """Relay gain bound below the no-relay very-strong threshold, plus the unbounded case."""
    rng = np.random.default_rng(seed)
    max_gain = -math.inf
    checks = 0
    ok = True
    for _ in range(draws):
        while True:
            params = draw_params(rng, snr_db=(-5.0, 40.0), inr_db=(-10.0, 60.0))
            if params.inr2 <= inr2_section(params):
                break
        result = type2.sum_capacity_infinite_relay(params)
        ok = ok and result.half_bit_regime and result.gain <= 0.5 + 1e-12
        max_gain = max(max_gain, result.gain)
        checks += 1
    # far above the threshold the gain is unbounded; one constructed point
    strong = ChannelParams(100.0, 100.0, 1e6 * 100.0 * 100.0, 1.0)
    unbounded = type2.sum_capacity_infinite_relay(strong)
    ok = ok and not unbounded.half_bit_regime and unbounded.gain > 2.0
    checks += 1
    return SuiteResult(
        "halfbit",
        ok,
        checks,
        max_gain,
        f"max gain below threshold = {max_gain:.6f} bits; constructed gain = {unbounded.gain:.2f}",
    )


#: weak-regime ladder bases (snr1, snr2, inr2) used by the asymptotic suite
ASYMPTOTIC_BASES = ((10.0, 10.0, 1.0, 1.0), (100.0, 100.0, 3.0, 2.0), (31.6, 100.0, 10.0, 1.0))


def suite_asymptotic(seed: int, draws: int = 0) -> SuiteResult:
    """Scale-ladder sum-rate gaps: monotone shrinking, below 0.02 bits at the top."""
    del seed, draws  # deterministic ladder over fixed bases
    worst_final = 0.0
    checks = 0
    ok = True
    for s1, s2, i2, r0 in ASYMPTOTIC_BASES:
        base = ChannelParams(s1, s2, i2, r0)
        fixed = min(type1.beta_star(base.scaled(10.0**k)).beta for k in range(8)) * 0.999
        for scheme, kwargs in (
            ("split-optimal", {}),
            ("compress-forward", {}),
            ("fixed-split", {"fixed_beta": fixed}),
        ):
            gaps = [abs(g.gap) for g in type1.asymptotic_sum_gaps(base, 8, 10.0, scheme, **kwargs)]
            ok = ok and all(gaps[i + 1] < gaps[i] for i in range(len(gaps) - 1))
            ok = ok and gaps[-1] < 0.02
            worst_final = max(worst_final, gaps[-1])
            checks += len(gaps)
    return SuiteResult(
        "asymptotic", ok, checks, worst_final, f"max final-gap magnitude = {worst_final:.3e} bits"
    )


def suite_hull(seed: int, draws: int) -> SuiteResult:
    """Weak-regime sweeps add nothing beyond the closed-form regions.

    Every pentagon of a beta-uniform sweep must stay under the exact
    closed-form boundary (checked pointwise, not against its polyline), and
    for the reverse relay direction the hull of a grid-matched sweep must
    coincide with the exported closed-form region.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    checks = 0
    betas = np.linspace(0.0, 1.0, 101)
    for _ in range(draws):
        p1 = draw_weak_type1(rng)
        for beta in betas:
            pent = type1.pentagon_weak(p1, type1.PowerSplit(float(beta)))
            for x, y in pentagon_vertices(pent):
                worst = max(worst, y - type1_weak_boundary_r2(p1, float(x)))
        checks += 1

        p2 = draw_weak_type2(rng)
        for beta in betas:
            s = type2.Type2Scheme(type2.alpha_star(p2, float(beta)), float(beta), p2.r0, 0.0)
            for x, y in pentagon_vertices(type2.pentagon_type2(p2, s)):
                worst = max(worst, y - type2_weak_boundary_r2(p2, float(x)))
        closed, _ = type2.region_type2(p2, n_boundary=101)
        matched = type1.weak_boundary_betas(p2, 101, 1.0)
        schemes = [type2.Type2Scheme(type2.alpha_star(p2, float(b)), float(b), p2.r0, 0.0) for b in matched]
        regions = [pentagon_to_region(type2.pentagon_type2(p2, s)) for s in schemes]
        worst = max(worst, hausdorff_distance(union_over_sweep(regions), closed))
        checks += 2
    return SuiteResult(
        "hull", worst <= 1e-6, checks, worst, f"max excess beyond closed form = {worst:.3e} bits"
    )


def type1_weak_boundary_r2(params: ChannelParams, r1: float, tol: float = 1e-12) -> float:
    """Exact weak-regime boundary height at a given r1 (membership oracle).

    Inverts the r1(beta) map in closed form and evaluates the boundary curve,
    the flat cap, or the vertical edge as appropriate.
    """
    s1, s2, i2 = params.snr1, params.snr2, params.inr2
    if r1 < -tol or r1 > gamma(s1) + tol:
        return -math.inf
    star = type1.beta_star(params).beta
    if r1 <= gamma(s1 / (1.0 + star * i2)) + tol:
        return gamma(s2)
    beta = max(type1.split_for_rate(params, min(r1, gamma(s1))), 0.0)
    return type1.corner_point(params, beta)[1]


def type2_weak_boundary_r2(params: ChannelParams, r1: float, tol: float = 1e-12) -> float:
    """Exact lifted-boundary height at a given r1 for the reverse relay direction."""
    s1, i2 = params.snr1, params.inr2
    if r1 < -tol or r1 > gamma(s1) + tol:
        return -math.inf
    if r1 <= gamma(s1 / (1.0 + i2)) + tol:
        return type2.corner_point(params, 1.0)[1]
    beta = min(1.0, max(type1.split_for_rate(params, min(r1, gamma(s1))), 0.0))
    return type2.corner_point(params, beta)[1]


SUITES = {
    "oracle": suite_oracle,
    "fm": suite_fm,
    "convexity": suite_convexity,
    "halfbit": suite_halfbit,
    "asymptotic": suite_asymptotic,
    "hull": suite_hull,
}


def run_suites(
    names: list[str] | None = None, seed: int = 12345, draws: int = 100
) -> list[SuiteResult]:
    chosen = list(SUITES) if names is None else names
    results = []
    for name in chosen:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
        results.append(SUITES[name](seed, draws))
    return results

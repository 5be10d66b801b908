"""Scalar primitives shared by the whole toolkit.

Conventions used everywhere in this package:

* rates are in bits per real channel use; the point-to-point capacity
  function ``gamma`` carries the 1/2 factor,
* SNR/INR values are linear power ratios internally; decibels are
  converted exactly once at the I/O boundary (CLI flags, constructors).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

_LN2 = math.log(2.0)


def db_to_linear(value_db: float) -> float:
    """Convert a power ratio from dB to linear scale."""
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    """Convert a linear power ratio to dB; zero maps to -inf."""
    if value < 0.0:
        raise ValueError(f"negative power ratio: {value}")
    return -math.inf if value == 0.0 else 10.0 * math.log10(value)


def gamma(x: float) -> float:
    """Gaussian capacity function 0.5*log2(1+x) in bits per channel use."""
    if not (math.isfinite(x) and x >= 0.0):
        raise ValueError(f"gamma requires a finite x >= 0, got {x!r}")
    return 0.5 * math.log1p(x) / _LN2


@dataclass(frozen=True)
class ChannelParams:
    """One operating point of the Z-interference channel with a digital relay link.

    ``snr1``, ``snr2``, ``inr2`` are linear power ratios (direct links of the
    two users and the cross link into receiver 1); ``r0`` is the relay link
    rate in bits per channel use.
    """

    snr1: float
    snr2: float
    inr2: float
    r0: float

    def __post_init__(self) -> None:
        for name in ("snr1", "snr2", "inr2", "r0"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")

    @classmethod
    def from_db(cls, snr1_db: float, snr2_db: float, inr2_db: float, r0: float) -> "ChannelParams":
        """Build from dB-valued power ratios; ``r0`` stays in bits."""
        return cls(db_to_linear(snr1_db), db_to_linear(snr2_db), db_to_linear(inr2_db), r0)

    @classmethod
    def from_physical(
        cls,
        p1: float,
        p2: float,
        h11: float,
        h22: float,
        h21: float,
        noise: float,
        r0: float,
    ) -> "ChannelParams":
        """Build from transmit powers, real channel gains and noise power."""
        if noise <= 0.0:
            raise ValueError(f"noise power must be positive, got {noise!r}")
        return cls(h11 * h11 * p1 / noise, h22 * h22 * p2 / noise, h21 * h21 * p2 / noise, r0)

    def scaled(self, factor: float) -> "ChannelParams":
        """Scale all three power ratios by a common factor (noise shrink with fixed gains)."""
        if factor <= 0.0:
            raise ValueError(f"scale factor must be positive, got {factor!r}")
        return ChannelParams(self.snr1 * factor, self.snr2 * factor, self.inr2 * factor, self.r0)

    def with_r0(self, r0: float) -> "ChannelParams":
        return ChannelParams(self.snr1, self.snr2, self.inr2, r0)


class RegimeLabel(enum.Enum):
    WEAK = "weak"
    MODERATELY_STRONG = "moderately-strong"
    STRONG = "strong"
    VERY_STRONG = "very-strong"


@dataclass(frozen=True)
class Regime:
    """Interference-regime classification plus the thresholds that produced it."""

    label: RegimeLabel
    thresholds: dict[str, float] = field(default_factory=dict)


def inr2_star(params: ChannelParams) -> float:
    """Very-strong boundary for a relay link into the interfered receiver.

    Equals ((1+SNR1)(2^(-2*r0)(1+SNR2)-1))^+; at r0=0 it reduces to the
    classical very-strong threshold SNR2*(1+SNR1).
    """
    value = (1.0 + params.snr1) * (2.0 ** (-2.0 * params.r0) * (1.0 + params.snr2) - 1.0)
    return max(value, 0.0)


def inr2_dagger(params: ChannelParams) -> float:
    """Moderately-strong/strong boundary for a relay link out of the interfered receiver."""
    return 2.0 ** (2.0 * params.r0) * (1.0 + params.snr2) - 1.0


def inr2_ddagger(params: ChannelParams) -> float:
    """Strong/very-strong boundary for a relay link out of the interfered receiver."""
    return (1.0 + params.snr1) * inr2_dagger(params)


def inr2_section(params: ChannelParams) -> float:
    """No-relay very-strong threshold SNR2*(1+SNR1) bounding the half-bit relay gain."""
    return params.snr2 * (1.0 + params.snr1)


def classify_type1(params: ChannelParams) -> Regime:
    """Regime of the channel with the relay link into the interfered receiver.

    Weak below min(SNR2, inr2_star), very strong at or above inr2_star, strong
    in between; there is no moderately-strong label for this direction.
    Boundary ties resolve to the stronger regime.
    """
    star = inr2_star(params)
    thresholds = {"SNR2": params.snr2, "INR2_star": star}
    if params.inr2 >= star:
        label = RegimeLabel.VERY_STRONG
    elif params.inr2 >= min(params.snr2, star):
        label = RegimeLabel.STRONG
    else:
        label = RegimeLabel.WEAK
    return Regime(label, thresholds)


def classify_type2(params: ChannelParams) -> Regime:
    """Regime of the channel with the relay link out of the interfered receiver.

    Weak below SNR2, moderately strong up to inr2_dagger, strong up to
    inr2_ddagger, very strong beyond. Boundary ties resolve to the stronger
    regime.
    """
    dagger = inr2_dagger(params)
    ddagger = inr2_ddagger(params)
    thresholds = {
        "SNR2": params.snr2,
        "INR2_dagger": dagger,
        "INR2_ddagger": ddagger,
        "INR2_section": inr2_section(params),
    }
    if params.inr2 >= ddagger:
        label = RegimeLabel.VERY_STRONG
    elif params.inr2 >= dagger:
        label = RegimeLabel.STRONG
    elif params.inr2 >= params.snr2:
        label = RegimeLabel.MODERATELY_STRONG
    else:
        label = RegimeLabel.WEAK
    return Regime(label, thresholds)

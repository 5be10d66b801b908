"""Rate regions and sum-capacity asymptotics for the Gaussian Z-interference
channel with a unidirectional digital relay link."""

from .core import (
    ChannelParams,
    Regime,
    RegimeLabel,
    classify_type1,
    classify_type2,
    db_to_linear,
    gamma,
    inr2_dagger,
    inr2_ddagger,
    inr2_section,
    inr2_star,
    linear_to_db,
)
from .gaussian import GaussianSystem, SingularSystemError
from .geometry import (
    ConcavityReport,
    LinearSystem,
    Pentagon,
    RateRegion,
    check_boundary_concavity,
    fourier_motzkin_project,
    hausdorff_distance,
    pentagon_to_region,
    union_hull_report,
    union_over_sweep,
)
from .type1 import (
    BetaStar,
    CfRatePair,
    PowerSplit,
    WynerZivParams,
    beta_star,
    cf_rate_pair,
    pentagon_weak,
    region_type1,
    sum_capacity_no_relay,
)
from .type2 import (
    InfiniteRelaySum,
    QuantizerStats,
    SweepConfig,
    Type2Scheme,
    alpha_star,
    delta_weak,
    pentagon_type2,
    quantizer_stats,
    region_type2,
    sum_capacity_infinite_relay,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelParams",
    "Regime",
    "RegimeLabel",
    "classify_type1",
    "classify_type2",
    "db_to_linear",
    "gamma",
    "inr2_dagger",
    "inr2_ddagger",
    "inr2_section",
    "inr2_star",
    "linear_to_db",
    "GaussianSystem",
    "SingularSystemError",
    "ConcavityReport",
    "LinearSystem",
    "Pentagon",
    "RateRegion",
    "check_boundary_concavity",
    "fourier_motzkin_project",
    "hausdorff_distance",
    "pentagon_to_region",
    "union_hull_report",
    "union_over_sweep",
    "BetaStar",
    "CfRatePair",
    "PowerSplit",
    "WynerZivParams",
    "beta_star",
    "cf_rate_pair",
    "pentagon_weak",
    "region_type1",
    "sum_capacity_no_relay",
    "InfiniteRelaySum",
    "QuantizerStats",
    "SweepConfig",
    "Type2Scheme",
    "alpha_star",
    "delta_weak",
    "pentagon_type2",
    "quantizer_stats",
    "region_type2",
    "sum_capacity_infinite_relay",
]

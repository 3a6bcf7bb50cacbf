"""Numerical verification of fractional Hardy-type and Riesz-type operators
of variable order on Herz-Morrey spaces with variable exponent."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigError,
    DivergentConstant,
    HerzError,
    InsufficientData,
    InvalidGrid,
    InvalidSobolev,
    NonConjugable,
    NonFiniteIntegrand,
    SingularityBudgetExceeded,
)
from .exponents import (  # noqa: E402
    Conjugate,
    Constant,
    ExponentField,
    LogDecay,
    LogDecayShifted,
    Role,
    Sobolev,
    conjugate,
    estimate_stats,
    evaluate,
    gamma_weight,
    sobolev_exponent,
    validate_pair,
)
from .functions import ZERO, CharAnnulus, CharBall, Combination, GaussBump, Power, restrict_to_annulus  # noqa: E402
from .geometry import DyadicGrid, build_grid, integrate_radial, sphere_constants  # noqa: E402
from .norms import (  # noqa: E402
    SpaceParams,
    ball_norm_product,
    delta_estimate,
    herz_morrey_norm,
    holder_pairing_check,
    luxemburg_norm,
    modular,
    weighted_norm,
)
from .operators import (  # noqa: E402
    apply_weight,
    fractional_maximal,
    hardy,
    hardy_star,
    riesz_lower_bound_check,
    riesz_radial,
    spherical_mean,
)

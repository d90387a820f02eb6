"""Phase-estimation sensitivity of nonlinear interferometers.

Models the Yurke, Mandel and tunable hybrid topologies with internal loss,
provides their closed-form interference patterns and phase uncertainties,
and cross-verifies every closed form against an independent Gaussian-moment
oracle built on Wick contractions.
"""

__version__ = "0.1.0"

from .algebra import (
    ArmChannel,
    InterferometerSpec,
    PortCoefficients,
    SqueezerGain,
    bogoliubov_pair,
    hybrid_ports,
    hybrid_spec,
    mandel_ports,
    mandel_spec,
    yurke_ports,
    yurke_spec,
)
from .analytic import (
    FringeModel,
    diff_variance,
    hybrid_fringes,
    mandel_fringe,
    mandel_sum_diff,
    thermal_variance,
    yurke_fringe,
)
from .moments import MomentReport, diff_moments, port_covariance, port_mean, port_variance
from .sensitivity import (
    HighGainExpansion,
    SensitivityResult,
    fisher_series,
    fisher_thermal,
    numeric_phi_min,
    phi_min_thermal,
    sigma_diff,
    sigma_hybrid,
    sigma_min_thermal,
    sigma_sm_min,
    sigma_thermal,
    yurke_highgain,
)
from .verify import VerifyReport, run_verify

__all__ = [
    "ArmChannel",
    "FringeModel",
    "HighGainExpansion",
    "InterferometerSpec",
    "MomentReport",
    "PortCoefficients",
    "SensitivityResult",
    "SqueezerGain",
    "VerifyReport",
    "bogoliubov_pair",
    "diff_moments",
    "diff_variance",
    "fisher_series",
    "fisher_thermal",
    "hybrid_fringes",
    "hybrid_ports",
    "hybrid_spec",
    "mandel_fringe",
    "mandel_ports",
    "mandel_spec",
    "mandel_sum_diff",
    "numeric_phi_min",
    "phi_min_thermal",
    "port_covariance",
    "port_mean",
    "port_variance",
    "run_verify",
    "sigma_diff",
    "sigma_hybrid",
    "sigma_min_thermal",
    "sigma_sm_min",
    "sigma_thermal",
    "thermal_variance",
    "yurke_fringe",
    "yurke_highgain",
    "yurke_ports",
    "yurke_spec",
]

"""Exact symbolic engine for twisted Moyal star products in two dimensions.

The deformation is truncated in two formal parameters (the noncommutativity
``theta`` and the frame deformation ``omega``) and every coefficient is an
exact complex rational, so identities are checked to zero, not to a tolerance.
"""

from .coeff_algebra import (
    I_UNIT,
    DeformedPolynomial,
    ExactComplexRational,
    Monomial,
    TruncationOrders,
)
from .gauge_dynamics import (
    EpsilonOmegaConstraint,
    GaugeField,
    GaugeParameter,
    covariance_residual,
    divergence_check,
    eom_residual,
    faraday,
    noether_current,
)
from .report import CheckReport, emit
from .schwartz_trace import GaussianDensity, PiScalar, cyclicity_residual, integral
from .star_kernel import (
    PlaneWaveSum,
    associativity_residual,
    moyal_product,
    star,
    star_closed,
    star_commutator,
    star_series,
)
from .twist_geometry import Flavor, TwistConfig, build_geometry

__version__ = "0.1.0"

__all__ = [
    "I_UNIT",
    "DeformedPolynomial",
    "ExactComplexRational",
    "Monomial",
    "TruncationOrders",
    "EpsilonOmegaConstraint",
    "GaugeField",
    "GaugeParameter",
    "covariance_residual",
    "divergence_check",
    "eom_residual",
    "faraday",
    "noether_current",
    "CheckReport",
    "emit",
    "GaussianDensity",
    "PiScalar",
    "cyclicity_residual",
    "integral",
    "PlaneWaveSum",
    "associativity_residual",
    "moyal_product",
    "star",
    "star_closed",
    "star_commutator",
    "star_series",
    "Flavor",
    "TwistConfig",
    "build_geometry",
]

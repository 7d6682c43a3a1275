"""Numerical verification of isometric/symmetric defect identities for
commuting tuples of complex matrices."""

from .matrix_core import DEFAULT_TOL, Tolerance, is_zero
from .transforms import (
    DefectProfile,
    cesaro_estimate,
    defect_scale,
    delta,
    isosym_defect,
    sigma_apply,
    sigma_power,
    superop_matrix,
    triangle,
)
from .tuples import (
    OperatorTuple,
    PowerConvention,
    adjoint_tuple,
    commutes_cross,
    commutes_within,
    conj_tuple,
    inverse_tuple,
    mix_by_unitary,
    nilpotency_order,
    power_tuple,
    product_tuple,
    scalar_tuple,
    sum_tuple,
    tensor_tuple,
)
from .classify import (
    defect_profile,
    is_isometric,
    is_isosymmetric,
    is_symmetric,
    spherical_reduction_check,
)
from .generators import (
    InstanceBundle,
    commuting_from_seed,
    conjugation_apply,
    jordan_isometric,
    jordan_symmetric,
    nilpotent_commuting,
    paper_example_mixing,
    paper_example_squares,
    random_instance,
)
from .verify import CampaignConfig, CampaignReport, TrialResult, run_campaign

__version__ = "0.1.0"

__all__ = [
    "CampaignConfig",
    "CampaignReport",
    "DEFAULT_TOL",
    "DefectProfile",
    "InstanceBundle",
    "OperatorTuple",
    "PowerConvention",
    "Tolerance",
    "TrialResult",
    "adjoint_tuple",
    "cesaro_estimate",
    "commutes_cross",
    "commutes_within",
    "commuting_from_seed",
    "conj_tuple",
    "conjugation_apply",
    "defect_profile",
    "defect_scale",
    "delta",
    "inverse_tuple",
    "is_isometric",
    "is_isosymmetric",
    "is_symmetric",
    "is_zero",
    "isosym_defect",
    "jordan_isometric",
    "jordan_symmetric",
    "mix_by_unitary",
    "nilpotency_order",
    "nilpotent_commuting",
    "paper_example_mixing",
    "paper_example_squares",
    "power_tuple",
    "product_tuple",
    "random_instance",
    "run_campaign",
    "scalar_tuple",
    "sigma_apply",
    "sigma_power",
    "spherical_reduction_check",
    "sum_tuple",
    "superop_matrix",
    "tensor_tuple",
    "triangle",
]

"""Exact rank-metric codes over finite-field towers.

Field towers F_p < F_q < L = F_{q^m}, Gabidulin codes in L^n and Delsarte
codes in M_{m x n}(F_q), their duals under symmetric bilinear forms, and
constructions of self-dual and Lagrangian MRD codes.
"""

from .constructions import (
    dual_basis,
    gabidulin_code,
    lagrangian_mrd_code,
    level_of_field,
    orthonormal_basis_twisted_trace,
    self_dual_mrd_code,
    self_dual_normal_basis,
)
from .errors import (
    BudgetExceeded,
    InputError,
    MRDError,
    Nonexistence,
    NotFound,
    PreconditionViolated,
)
from .gf import FieldElement, FieldTower, build_tower, tower_for
from .linalg import Matrix
from .rankcodes import (
    BilinearFormSpec,
    DelsarteCode,
    GabidulinCode,
    LBasis,
    delsarte_dual,
    delsarte_is_self_dual,
    delsarte_rank_distance,
    dual_code,
    expansion_matrix,
    is_mrd,
    is_self_dual,
    power_basis,
    rank_distance,
    rank_weight,
    to_delsarte,
)
from .verify import TheoremReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "BilinearFormSpec", "BudgetExceeded", "DelsarteCode", "FieldElement", "FieldTower",
    "GabidulinCode", "InputError", "LBasis", "MRDError", "Matrix", "Nonexistence", "NotFound",
    "PreconditionViolated", "TheoremReport", "build_tower", "delsarte_dual",
    "delsarte_is_self_dual", "delsarte_rank_distance", "dual_basis", "dual_code",
    "expansion_matrix", "gabidulin_code", "is_mrd", "is_self_dual", "lagrangian_mrd_code",
    "level_of_field", "orthonormal_basis_twisted_trace", "power_basis", "rank_distance",
    "rank_weight", "run_suite", "self_dual_mrd_code", "self_dual_normal_basis", "to_delsarte",
    "tower_for",
]

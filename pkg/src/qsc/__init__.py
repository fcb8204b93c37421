"""Exact quantum Schubert calculus with commutator-length certificates.

The algebraic layer (partitions, qh_ring, cl_bounds) is exact rational
arithmetic; sp_quasimorphism is double-precision numerics for rotation
numbers of symplectic matrix paths.
"""

from .cl_bounds import (
    BoundCertificate,
    HamiltonianProfile,
    aspherical_bound,
    cl_lower_bound_cpn,
    cl_lower_bound_grassmannian,
    spectral_lower_bound,
    stable_norm_lower_bound,
)
from .errors import DomainError
from .partitions import (
    Partition,
    RimHookRemoval,
    complement,
    lr_coefficient,
    partitions_in_box,
    reduce_mod_rim_hooks,
    remove_rim_hook,
)
from .qh_ring import (
    PostnikovReport,
    QHClass,
    RingParams,
    SplitForm,
    asymptotic_invariant,
    euler_class,
    euler_pairing_sum,
    euler_power_invariant,
    poincare_pairing,
    power,
    quantum_product,
    schubert_basis,
    split_form,
    verify_postnikov,
)
from .sp_quasimorphism import (
    DefectSurvey,
    LagrangianFrame,
    SymplecticPath,
    defect_survey,
    det_squared,
    is_symplectic,
    standard_symplectic_form,
    tau,
    tau_det,
    tau_estimates,
)

__all__ = [
    "BoundCertificate",
    "DefectSurvey",
    "DomainError",
    "HamiltonianProfile",
    "LagrangianFrame",
    "Partition",
    "PostnikovReport",
    "QHClass",
    "RimHookRemoval",
    "RingParams",
    "SplitForm",
    "SymplecticPath",
    "aspherical_bound",
    "asymptotic_invariant",
    "cl_lower_bound_cpn",
    "cl_lower_bound_grassmannian",
    "complement",
    "defect_survey",
    "det_squared",
    "euler_class",
    "euler_pairing_sum",
    "euler_power_invariant",
    "is_symplectic",
    "lr_coefficient",
    "partitions_in_box",
    "poincare_pairing",
    "power",
    "quantum_product",
    "reduce_mod_rim_hooks",
    "remove_rim_hook",
    "schubert_basis",
    "spectral_lower_bound",
    "split_form",
    "stable_norm_lower_bound",
    "standard_symplectic_form",
    "tau",
    "tau_det",
    "tau_estimates",
    "verify_postnikov",
]

__version__ = "0.1.0"

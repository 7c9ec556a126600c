"""Certificates, constructions and kernel interpolation for weighted holomorphic spaces."""

from ._core import (
    CertificateReport,
    ConditioningError,
    DomainError,
    GluedExtension,
    HermitianWeight,
    InputError,
    Interpolant,
    KernelSpace,
    ModelSpace,
    NumericalGuardError,
    QuadratureError,
    SizeError,
    UnsupportedSpaceError,
    auxiliary_weight_value,
    ball_volume_bound,
    bos_certificate,
    count_in_ball,
    curvature_eigen_min,
    distance,
    exp_map,
    feasibility_sweep,
    gram_matrix,
    hessian_comparison_factor,
    min_norm_interpolant,
    ricci_eigen,
    run_cli,
    seip_density,
    separation,
    square_lattice,
    theorem1_certificate,
    theorem2_certificate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

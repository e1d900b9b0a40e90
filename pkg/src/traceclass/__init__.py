"""Finite-dimensional trace-class, Hilbert-Schmidt and nuclear operator calculus."""

from .errors import *  # noqa: F401,F403
from .kernel import (
    PolarFactors,
    SvdFactors,
    abs_op,
    adjoint,
    as_matrix,
    hermitian_eig,
    operator_norm,
    polar,
    singular_values,
    sqrt_psd,
    svd,
)
from .schatten import (
    basis_trace_sums,
    dual_attainment,
    factor_hs,
    hs_inner,
    hs_norm,
    schatten_norm,
    shift_matrix,
    trace,
    trace_norm,
    truncate_spectral,
)
from .tensor import (
    BilinearForm,
    NuclearRep,
    TensorElement,
    adjoint_rep,
    apply_linearized,
    bilinear_norm,
    bilinearize,
    coeff_matrix,
    compose_rep,
    concat_reps,
    injective_norm,
    k_map,
    linearize,
    mix_representation,
    nuclear_apply,
    nuclear_norm,
    optimal_rep,
    projective_norm,
    rep_cost,
    representation_cost,
    single_tensor,
    to_matrix,
)
from .verifier import SuiteConfig, VerificationReport, density_report, run_suite, shift_report

__version__ = "0.1.0"

"""Unitary orbit decompositions and symmetric-norm inequalities for PSD block matrices."""

from .core import (
    PositivityVerdict,
    PsdBlockMatrix,
    Verdict,
    assemble,
    commutes,
    commutes_with_diagonal,
    hermitize,
    imag_part,
    matrix_abs,
    positivity,
    random_psd,
    real_part,
    split,
    sqrt_psd,
)
from .norms import (
    Dominance,
    DominanceReport,
    dominance,
    frobenius_norm,
    ky_fan,
    schatten,
    singular_values,
    spectral_norm,
)
from .decompose import (
    AbsBound,
    Decomposition,
    corollary_abs_bound,
    corollary_I_decompose,
    corollary_R_decompose,
    lemma1_decompose,
    verify_decomposition,
)
from .criteria import (
    InequalityReport,
    QuadraticPair,
    block_det,
    check_main_inequality,
    check_structured_inequality,
    ordered_diagonalization,
    pww_eigenvalues,
    schur_pd_test,
    verify_commuting_normal_case,
    zero_block_verdict,
)
from .constructions import (
    AmplifierWitness,
    ScalingWitness,
    amplify_offdiag,
    build_plp,
    example_C,
    example_Mx,
    example_Ny,
    find_scaling_t,
    random_commuting_normal_instance,
    random_hermitian_offdiag_psd,
)

__version__ = "0.1.0"

__all__ = [
    "PositivityVerdict",
    "PsdBlockMatrix",
    "Verdict",
    "assemble",
    "commutes",
    "commutes_with_diagonal",
    "hermitize",
    "imag_part",
    "matrix_abs",
    "positivity",
    "random_psd",
    "real_part",
    "split",
    "sqrt_psd",
    "Dominance",
    "DominanceReport",
    "dominance",
    "frobenius_norm",
    "ky_fan",
    "schatten",
    "singular_values",
    "spectral_norm",
    "AbsBound",
    "Decomposition",
    "corollary_abs_bound",
    "corollary_I_decompose",
    "corollary_R_decompose",
    "lemma1_decompose",
    "verify_decomposition",
    "InequalityReport",
    "QuadraticPair",
    "block_det",
    "check_main_inequality",
    "check_structured_inequality",
    "ordered_diagonalization",
    "pww_eigenvalues",
    "schur_pd_test",
    "verify_commuting_normal_case",
    "zero_block_verdict",
    "AmplifierWitness",
    "ScalingWitness",
    "amplify_offdiag",
    "build_plp",
    "example_C",
    "example_Mx",
    "example_Ny",
    "find_scaling_t",
    "random_commuting_normal_instance",
    "random_hermitian_offdiag_psd",
    "__version__",
]

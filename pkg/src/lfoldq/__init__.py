"""lfoldq: exact Hecke-eigenform coefficients, binary quadratic forms,
fold-power coefficient sums over form values, sign-change search, and the
sieve-kernel delay equation, with a CLI front end.

Heavy inner loops run on a compiled extension when available; a pure
NumPy/Python backend with identical results is selected automatically
otherwise (see ``lfoldq._kernels.BACKEND``).
"""

from ._kernels import BACKEND
from .errors import InputError, InternalConsistencyError, RangeError
from .lfold import (
    ChebyshevDecomposition,
    FoldConstants,
    binomial_identity_check,
    cheb_decomposition,
    chebyshev_T,
    fold_constants,
    lfold_coefficient,
    sym_coefficient,
    verify_decomposition_prime,
    verify_fcrel,
)
from .modforms import (
    Eigenform,
    build_level_one_eigenform,
    coefficient_prime_power,
    load_eigenform,
    normalized_lambda,
    satake_angle,
    save_eigenform,
    verify_deligne,
    verify_eigenform,
)
from .ntkernel import (
    DirichletCharacterD,
    FactoredInteger,
    divisors,
    factorize,
    kronecker,
    omega,
    sieve_primes,
    squarefree_sieve,
)
from .quadforms import (
    ClassSet,
    QuadraticForm,
    class_set,
    r_star,
    reduce_form,
    representation_counts,
    unit_count,
    verify_rep_formula,
)
from .sigma import (
    SigmaSolution,
    StepFunction,
    I_j_montecarlo,
    alpha_step,
    find_u0,
    h_Y_value,
    pow_step,
    residual_integral_eq,
    solve_sigma,
)
from .sums import (
    BoundInputs,
    E_eta,
    L1_chi,
    SignChangeResult,
    SumReport,
    bound_ratio_sweep,
    euler_P1,
    first_sign_change,
    lowerbound_lhs,
    main_term_E,
    summatory_SD,
    summatory_SQ,
    thm11_bound,
    thm12_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    "InputError",
    "RangeError",
    "InternalConsistencyError",
    "FactoredInteger",
    "DirichletCharacterD",
    "sieve_primes",
    "factorize",
    "omega",
    "squarefree_sieve",
    "divisors",
    "kronecker",
    "Eigenform",
    "build_level_one_eigenform",
    "load_eigenform",
    "save_eigenform",
    "verify_eigenform",
    "normalized_lambda",
    "coefficient_prime_power",
    "satake_angle",
    "verify_deligne",
    "QuadraticForm",
    "ClassSet",
    "reduce_form",
    "class_set",
    "unit_count",
    "representation_counts",
    "r_star",
    "verify_rep_formula",
    "ChebyshevDecomposition",
    "FoldConstants",
    "chebyshev_T",
    "cheb_decomposition",
    "fold_constants",
    "lfold_coefficient",
    "sym_coefficient",
    "verify_fcrel",
    "verify_decomposition_prime",
    "binomial_identity_check",
    "BoundInputs",
    "SumReport",
    "SignChangeResult",
    "summatory_SQ",
    "summatory_SD",
    "E_eta",
    "main_term_E",
    "euler_P1",
    "L1_chi",
    "thm11_bound",
    "thm12_bound",
    "first_sign_change",
    "bound_ratio_sweep",
    "lowerbound_lhs",
    "StepFunction",
    "SigmaSolution",
    "alpha_step",
    "pow_step",
    "h_Y_value",
    "solve_sigma",
    "residual_integral_eq",
    "find_u0",
    "I_j_montecarlo",
]

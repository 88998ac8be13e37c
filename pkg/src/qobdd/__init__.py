"""Quantum OBDD compiler and exact simulator for characteristic polynomials."""

from .compiler import (
    GeneralCompilation,
    SingleCompilation,
    closed_form_general,
    closed_form_single,
    compile_general,
    compile_single,
    error_bound_general,
)
from .goodsets import (
    GoodSet,
    azuma_failure_bound,
    cosine_sum,
    is_good_for,
    required_size,
    required_size_raw,
    sample,
    sample_good,
    verify_exhaustive,
)
from .hsf import (
    FiniteGroup,
    HSFInstance,
    compile_hsf,
    coset_decomposition,
    cyclic_subgroup,
    decode_input,
    encode_values,
    hsf_characteristic,
    hsf_eval,
)
from .polynomials import (
    Characteristic,
    LinearPolynomial,
    MultilinearPolynomial,
    SOPFormula,
    eq_polynomial,
    mod_polynomial,
    palindrome_polynomial,
    perm_polynomial,
    reduce_mod,
    sop_to_polynomial,
    truth_table_to_sop,
)
from .programs import (
    Instruction,
    ProgramMetrics,
    QuantumBranchingProgram,
    accept_probability,
    is_read_once,
    metrics,
    run,
    validate,
)
from .verification import (
    VerificationReport,
    certify_general,
    certify_hsf,
    certify_single,
    named_function,
    verify,
    width_table,
)

__version__ = "0.1.0"

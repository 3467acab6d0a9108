"""Factor naturals ending in 1 by candidate enumeration over digit classes."""

from .arith import cmp_affine_sqrt, exact_div, gcd, isqrt, perfect_square_root
from .lambda_engine import (
    admissible_residues,
    build_system,
    factor_with_lambda,
    fallback_scan,
    lambda_window,
    recover,
    sweep,
)
from .oracle import digit_class_pairs, trial_factor, verify_witness, wilson_is_prime
from .ratio import (
    certificate_value,
    circle_params,
    factor_with_tau,
    ratio_bound_ok,
    ratio_relations,
    tau_line,
    tau_sweep,
    tau_window,
    witness_to_ratio,
)
from .report import SearchReport, bench_range, search
from .residues import DigitClass, FactorWitness, applicable_methods, offset_params, profile

__version__ = "0.1.0"

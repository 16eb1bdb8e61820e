"""Expected random-draw coverage of linear codes over small finite fields.

Draw columns of a generator matrix uniformly with repetition until the
drawn set reaches full rank: this package computes the expected number of
draws exactly, bounds it, simulates it reproducibly, and searches for the
codes minimizing it.
"""

from .asymptotics import (
    GapReport,
    SeriesLimit,
    binary_hamming_gap,
    binary_hamming_gap_coefficient,
    binary_hamming_ratio_bound,
    gap_grid,
    grid_csv,
    hamming_gap,
    hamming_gap_bound,
    mds_rate_limit,
    simplex_gap,
    simplex_gap_series_limit,
)
from .codes import (
    LinearCode,
    dual,
    hamming_code,
    independent_subset_profile,
    information_set_count,
    information_set_count_via_dual,
    information_set_profile,
    linear_code,
    projective_points,
    reed_solomon,
    shortened_dim_count,
    shortened_subcode_dim,
    simplex_code,
)
from .coverage import (
    InvariantViolation,
    McEstimate,
    decimal_str,
    expectation_exact,
    expectation_exact_auto,
    expectation_exact_dual,
    expectation_hamming,
    expectation_monte_carlo,
    expectation_simplex,
    harmonic,
    mds_bound,
    simulate_trial,
    to_decimal,
)
from .gf import FieldSpec, field_from_order, field_new, is_prime_power, parse_field_spec
from .matrix import (
    MatrixGF,
    columns_of,
    format_matrix,
    from_columns,
    identity,
    in_span,
    kernel_basis,
    mat_mul,
    matrix,
    parse_matrix,
    rank,
    row_space_canonical,
    rref,
    transpose,
    zeros,
)
from .search import (
    BudgetExceededError,
    CandidateMultiset,
    SearchReport,
    enumerate_candidates,
    optimal_coverage,
    verify_reduction,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "CandidateMultiset",
    "FieldSpec",
    "GapReport",
    "InvariantViolation",
    "LinearCode",
    "MatrixGF",
    "McEstimate",
    "SearchReport",
    "SeriesLimit",
    "binary_hamming_gap",
    "binary_hamming_gap_coefficient",
    "binary_hamming_ratio_bound",
    "columns_of",
    "decimal_str",
    "dual",
    "enumerate_candidates",
    "expectation_exact",
    "expectation_exact_auto",
    "expectation_exact_dual",
    "expectation_hamming",
    "expectation_monte_carlo",
    "expectation_simplex",
    "field_from_order",
    "field_new",
    "format_matrix",
    "from_columns",
    "gap_grid",
    "grid_csv",
    "hamming_code",
    "hamming_gap",
    "hamming_gap_bound",
    "harmonic",
    "identity",
    "in_span",
    "independent_subset_profile",
    "information_set_count",
    "information_set_count_via_dual",
    "information_set_profile",
    "is_prime_power",
    "kernel_basis",
    "linear_code",
    "mat_mul",
    "matrix",
    "mds_bound",
    "mds_rate_limit",
    "optimal_coverage",
    "parse_field_spec",
    "parse_matrix",
    "projective_points",
    "rank",
    "reed_solomon",
    "row_space_canonical",
    "rref",
    "shortened_dim_count",
    "shortened_subcode_dim",
    "simplex_code",
    "simplex_gap",
    "simplex_gap_series_limit",
    "simulate_trial",
    "to_decimal",
    "transpose",
    "verify_reduction",
    "zeros",
]

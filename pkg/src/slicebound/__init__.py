"""Slice decompositions, rank certificates, and sum-free set bounds over F_p."""

from .bound import BoundReport, DegreeProfile, compute_N, enumerate_monomials, growth_sequence
from .errors import (
    BudgetExceededError,
    MismatchError,
    NonPrimeError,
    UnsupportedSizeError,
    ZeroSumError,
)
from .field import FpScalar, FpVector, PrimeModulus, add, fermat_indicator, pow_scalar
from .poly import ExponentVector, FpPolynomial, evaluate, expand_f, factor_expansion
from .slicerank import (
    FpTensor,
    Slice,
    SliceDecomposition,
    TriangularCertificate,
    check_triangular,
    decompose,
    indicator_tensor,
    matrix_rank,
    slice_rank_oracle,
)
from .sumfree import (
    SearchResult,
    TripleSystem,
    VerificationReport,
    search_exhaustive,
    search_greedy,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BudgetExceededError",
    "DegreeProfile",
    "ExponentVector",
    "FpPolynomial",
    "FpScalar",
    "FpTensor",
    "FpVector",
    "MismatchError",
    "NonPrimeError",
    "PrimeModulus",
    "SearchResult",
    "Slice",
    "SliceDecomposition",
    "TriangularCertificate",
    "TripleSystem",
    "UnsupportedSizeError",
    "VerificationReport",
    "ZeroSumError",
    "add",
    "check_triangular",
    "compute_N",
    "decompose",
    "enumerate_monomials",
    "evaluate",
    "expand_f",
    "factor_expansion",
    "fermat_indicator",
    "growth_sequence",
    "indicator_tensor",
    "matrix_rank",
    "pow_scalar",
    "search_exhaustive",
    "search_greedy",
    "slice_rank_oracle",
    "verify",
]

"""4-ranks of tame kernels K2 of real quadratic fields via Hilbert-symbol matrices."""

from tamek2.cases import classify_and_rank, theoretical_densities
from tamek2.errors import ConsistencyFailure, DomainError
from tamek2.hk_matrix import build_matrix, four_rank_k2, redei_four_rank
from tamek2.kernels import BACKEND
from tamek2.survey import run_survey
from tamek2.zsqrt2 import represent_norm, represent_prime

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConsistencyFailure",
    "DomainError",
    "build_matrix",
    "classify_and_rank",
    "four_rank_k2",
    "redei_four_rank",
    "represent_norm",
    "represent_prime",
    "run_survey",
    "theoretical_densities",
]

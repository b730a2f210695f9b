"""Seeds of a word via quasigaps, in linear time."""
from .factorization import compute_lpnf, f_factorize
from .solver import (
    Analysis,
    CandidateSet,
    SeedSet,
    all_quasigaps,
    all_seeds,
    candidate_sets,
    is_cover,
    is_quasiseed,
    is_seed,
    shortest_seed,
)
from .staircase import RELEASE, Params
from .text_index import Text

__all__ = [
    "Analysis", "CandidateSet", "Params", "RELEASE", "SeedSet", "Text",
    "all_quasigaps", "all_seeds", "candidate_sets", "compute_lpnf", "f_factorize",
    "is_cover", "is_quasiseed", "is_seed", "shortest_seed",
]

"""Coded caching with shared and private caches via placement delivery arrays."""

from .arrays import (
    STAR,
    AssociationProfile,
    PdaArray,
    all_star_row_count,
    construction_a_pda,
    man_pda,
    permute_columns,
    phi,
    regularity,
    verify_pda,
    xi,
)
from .construct import (
    SpPdaArray,
    SpPdaParams,
    construct_sppda,
    man_sppda,
    man_sppda_params,
    s_closed_form_construction_a,
    s_closed_form_man,
    s_count,
    verify_sppda,
)
from .permsearch import check_E1, check_E2, exhaustive_best, heuristic_reorder
from .sim import FileLibrary, dedicated_run, sp_deliver, sp_place, sp_run

__all__ = [
    "STAR", "AssociationProfile", "PdaArray", "SpPdaArray", "SpPdaParams",
    "all_star_row_count", "check_E1", "check_E2", "construct_sppda",
    "construction_a_pda", "dedicated_run", "exhaustive_best", "FileLibrary",
    "heuristic_reorder", "man_pda", "man_sppda", "man_sppda_params",
    "permute_columns", "phi", "regularity", "s_closed_form_construction_a",
    "s_closed_form_man", "s_count", "sp_deliver", "sp_place", "sp_run",
    "verify_pda", "verify_sppda", "xi",
]

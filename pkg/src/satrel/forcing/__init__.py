"""Desk-scale forcing over finite posets."""

from .names import PName, RankBoundExceeded, check, check_rank, name_pool, to_text, value_of
from .poset import (
    GenericFilter,
    Poset,
    PosetError,
    antichain_below_top,
    chain,
    generic_filters,
    is_filter,
    posets_up_to_iso,
)
from .relation import Forcing, ForcingRelation, boolean_value, forces_recursive, forces_semantic, forces_star

__all__ = [
    "Forcing",
    "ForcingRelation",
    "GenericFilter",
    "PName",
    "Poset",
    "PosetError",
    "RankBoundExceeded",
    "antichain_below_top",
    "boolean_value",
    "chain",
    "check",
    "check_rank",
    "forces_recursive",
    "forces_semantic",
    "forces_star",
    "generic_filters",
    "is_filter",
    "name_pool",
    "posets_up_to_iso",
    "to_text",
    "value_of",
]

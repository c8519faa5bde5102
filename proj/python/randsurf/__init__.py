"""Exact Chern invariants of cyclic covers branched along curve arrangements."""

from ._randsurf import (
    Arrangement,
    BudgetError,
    EmptySolutionSet,
    Error,
    ExceptionalVanishes,
    ExhaustedTries,
    NonIntegralError,
    ParseError,
    PreconditionError,
    ValidationError,
    __version__,
    bad_set,
    canonical_part,
    dedekind_sum,
    generators,
    invariants,
    inverse,
    is_farey_neighbour,
    is_prime,
    length,
    ncf,
    run_table,
    sample_good,
    table_names,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]

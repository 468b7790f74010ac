"""Single round-robin tournament scheduling: exact solvers and LP relaxations."""

from ._rrsched import (
    Instance,
    circle_method_schedule,
    dominance_instance,
    generate,
    load,
    matching_value,
    num_matches,
    num_rounds,
    permutation_value,
    save,
    solve,
    strengthen_traditional,
    traditional_value,
)

__all__ = [
    "Instance",
    "circle_method_schedule",
    "dominance_instance",
    "generate",
    "load",
    "matching_value",
    "num_matches",
    "num_rounds",
    "permutation_value",
    "save",
    "solve",
    "strengthen_traditional",
    "traditional_value",
]
